#include "uvflow/jacrep.hpp"

#include <sstream>

namespace uvflow {

CF LaurentGamma::eval(CF u, CF gamma) const {
    CF uinv = CF(1.0, 0.0) / u;
    CF v = num.eval(uinv, {gamma});
    if (den) v /= den->eval(uinv, {gamma});
    return v;
}

std::string str_in_u(const PSeries& s) {
    if (s.coeffs().empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, p] : s.coeffs()) {
        if (!first) os << " + ";
        first = false;
        bool wrap = p.terms().size() > 1;
        if (wrap) os << "(";
        os << p.str({"gamma"});
        if (wrap) os << ")";
        if (k != 0) os << "*u^" << -k;
    }
    return os.str();
}

std::string LaurentGamma::str() const {
    std::string s = str_in_u(num);
    if (den) s = "(" + s + ") / (" + str_in_u(*den) + ")";
    return s;
}

std::string status_name(VerificationRecord::Status s) {
    switch (s) {
        case VerificationRecord::Status::Pass: return "pass";
        case VerificationRecord::Status::Fail: return "fail";
        case VerificationRecord::Status::Inapplicable: return "inapplicable";
    }
    return "unknown";
}

int role_parity(const UVRep& rep) { return rep.role[0] == 1 ? 1 : -1; }

PSeries poly_on_curve(const UVRep& rep, const Poly& p) {
    if (p.arity() != 2)
        fail(ErrorKind::ArityMismatch, "curve composition needs a planar polynomial");
    auto curve = curve_series_ambient(rep);
    PSeries img(1, 0, PSeries::kExactOrder);
    std::vector<PSeries> powers[2];
    auto curve_pow = [&](int var, int n) -> const PSeries& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(PSeries::constant(1, Rat(1)));
        while (static_cast<int>(cache.size()) <= n)
            cache.push_back(cache.back() * curve[var]);
        return cache[n];
    };
    for (const auto& [e, coef] : p.terms()) {
        PSeries term = curve_pow(0, e[0]) * curve_pow(1, e[1]);
        img = img + term.scaled(coef);
    }
    return img.tightened();
}

PSeries derivative_in_u(const PSeries& s) {
    // d/du = -U^2 d/dU for U = 1/u.
    return (-s.derivative()).shifted(2);
}

std::pair<PSeries, PSeries> chi_psi(const ABExpansion& exp) {
    return {exp.a_series().param_derivative(1), exp.b_series().param_derivative(1)};
}

PSeries r3_of(const ABExpansion& exp, const UVRep& rep) {
    rep.validate();
    auto [chi1, psi1] = chi_psi(exp);
    auto curve = curve_series_role(rep);
    PSeries b_u = derivative_in_u(exp.b_series());
    PSeries dc2 = derivative_in_u(curve[1]);
    // psi1 u^(N-m) dC2/du, with u^(N-m) = U^(m-N)
    PSeries numerator = b_u - (psi1.shifted(rep.m - rep.N) * dc2);
    // dC1/du = sign * m * u^(m-1) = sign * m * U^(1-m): a monomial, so the
    // division is exact.
    PSeries r3 = numerator.shifted(rep.m - 1).scaled(Rat(rep.sign, rep.m));
    if (!r3.exact())
        fail(ErrorKind::InexactDivision, "r3 did not come out exact; inconsistent representation");
    return r3;
}

UVJacobian uv_jacobian(const ABExpansion& exp, const UVRep& rep, const Poly& jdet) {
    rep.validate();
    auto [chi1, psi1] = chi_psi(exp);
    if (psi1.known_zero())
        fail(ErrorKind::ZeroPsi, "psi1 vanishes identically; r1 is undefined");
    UVJacobian j;
    j.jdet_role = poly_on_curve(rep, jdet);
    if (role_parity(rep) < 0) j.jdet_role = -j.jdet_role;
    j.r2 = chi1.shifted(rep.m - rep.N); // chi1 u^(N-m)
    j.r4 = psi1.shifted(rep.m - rep.N);
    j.r3 = r3_of(exp, rep);
    // r1 = (chi1 r3 + |J| u^(m-N)) / psi1, kept as a numerator/psi1 pair.
    j.r1.num = chi1 * j.r3 + j.jdet_role.shifted(rep.N - rep.m);
    j.r1.den = psi1;
    return j;
}

VerificationRecord verify_identity_hh(const ABExpansion& exp, const UVRep& rep,
                                      const Poly& jdet) {
    rep.validate();
    VerificationRecord rec;
    rec.identity = "hh";
    auto [chi1, psi1] = chi_psi(exp);
    PSeries a_u = derivative_in_u(exp.a_series());
    PSeries b_u = derivative_in_u(exp.b_series());
    PSeries lhs = psi1 * a_u - chi1 * b_u;
    PSeries jrole = poly_on_curve(rep, jdet);
    if (role_parity(rep) < 0) jrole = -jrole;
    // sign * m * u^(2m-N-1) = sign * m * U^(N+1-2m)
    PSeries rhs = jrole.shifted(rep.N + 1 - 2 * rep.m).scaled(Rat(rep.sign * rep.m));
    PSeries residual = lhs - rhs;
    rec.status = residual.known_zero() ? VerificationRecord::Status::Pass
                                       : VerificationRecord::Status::Fail;
    rec.residual = str_in_u(residual);
    rec.notes.push_back("lhs = " + str_in_u(lhs));
    rec.notes.push_back("rhs = " + str_in_u(rhs));
    if (!jdet.is_constant())
        rec.notes.push_back("non-Keller map; checked with the |J(f)| factor on the curve");
    return rec;
}

VerificationRecord verify_theorem_k(const ABExpansion& exp, const UVRep& rep,
                                    const Poly& jdet) {
    VerificationRecord rec;
    rec.identity = "theorem-k";
    IndexRecord idx = indices(rep, exp);
    Poly a0p = partial(exp.a_at(0), 1);
    Poly b0p = partial(exp.b_at(0), 1);
    Poly bracket = a0p * exp.b_at(idx.k) - b0p * exp.a_at(idx.k);
    rec.notes.push_back("k = " + std::to_string(idx.k) + ", N - 2m = " +
                        std::to_string(idx.N - 2 * idx.m));
    rec.notes.push_back("bracket da0/dgamma * b_k - db0/dgamma * a_k = " +
                        bracket.str({"gamma"}));
    bool keller = jdet.is_constant() && jdet.constant_value().is_one();
    if (!keller) {
        rec.status = VerificationRecord::Status::Inapplicable;
        rec.notes.push_back("|J(f)| != 1; the identity's hypothesis fails, bracket reported only");
        rec.residual = bracket.str({"gamma"});
        return rec;
    }
    if (idx.k > idx.N - 2 * idx.m) {
        rec.status = VerificationRecord::Status::Fail;
        rec.notes.push_back("k exceeds N - 2m");
        rec.residual = bracket.str({"gamma"});
        return rec;
    }
    Poly expected = (idx.k == idx.N - 2 * idx.m)
                        ? Poly::constant(1, Rat(idx.m, idx.k))
                        : Poly(1);
    Poly residual = bracket - expected;
    rec.status = residual.is_zero() ? VerificationRecord::Status::Pass
                                    : VerificationRecord::Status::Fail;
    rec.residual = residual.str({"gamma"});
    rec.notes.push_back(idx.k == idx.N - 2 * idx.m ? "boundary case, expected m/k"
                                                   : "interior case, expected 0");
    return rec;
}

FlowRates flow_rates(const ABExpansion& exp, const UVRep& rep) {
    rep.validate();
    auto [chi1, psi1] = chi_psi(exp);
    (void)chi1;
    int L = rep.L();
    // u^(L-m+1) = U^(m-L-1)
    FlowRates fr;
    fr.du_dr.num = psi1.shifted(rep.m - L - 1).scaled(Rat(1, rep.m));
    PSeries b_u = derivative_in_u(exp.b_series());
    fr.dgamma_dr.num = b_u.shifted(rep.m - L - 1).scaled(Rat(-1, rep.m));
    return fr;
}

} // namespace uvflow
