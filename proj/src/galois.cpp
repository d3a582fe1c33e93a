#include "uvflow/galois.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace uvflow {

CycloScalar::CycloScalar(int m, Rat c0, Rat c1) : m_(m), c0_(c0), c1_(c1) {
    if (!order_supported(m))
        fail(ErrorKind::UnsupportedOrder,
             "no exact cyclotomic arithmetic for order " + std::to_string(m));
    if (m_ == 1 && !c1_.is_zero()) { // zeta = 1
        c0_ += c1_;
        c1_ = Rat(0);
    }
    if (m_ == 2 && !c1_.is_zero()) { // zeta = -1
        c0_ -= c1_;
        c1_ = Rat(0);
    }
}

void CycloScalar::reduce_square(Rat& out0, Rat& out1) const {
    // zeta^2 expressed as out0 + out1 * zeta.
    switch (m_) {
        case 3: out0 = Rat(-1); out1 = Rat(-1); break; // zeta^2 + zeta + 1 = 0
        case 4: out0 = Rat(-1); out1 = Rat(0); break;  // zeta^2 + 1 = 0
        case 6: out0 = Rat(-1); out1 = Rat(1); break;  // zeta^2 - zeta + 1 = 0
        default: out0 = Rat(1); out1 = Rat(0); break;  // m <= 2: zeta^2 = 1
    }
}

void CycloScalar::check_order(const CycloScalar& o) const {
    if (m_ != o.m_) fail(ErrorKind::BadInput, "cyclotomic orders differ");
}

CycloScalar CycloScalar::zeta_pow(int m, long j) {
    if (!order_supported(m))
        fail(ErrorKind::UnsupportedOrder,
             "no exact cyclotomic arithmetic for order " + std::to_string(m));
    j %= m;
    if (j < 0) j += m;
    CycloScalar r(m, Rat(1));
    CycloScalar z(m, Rat(0), Rat(1));
    for (long i = 0; i < j; ++i) r = r * z;
    return r;
}

Rat CycloScalar::rational_value() const {
    if (!is_rational())
        fail(ErrorKind::BadInput, "cyclotomic value is not rational");
    return c0_;
}

CF CycloScalar::to_cf() const {
    double angle = 2.0 * std::numbers::pi / m_;
    CF zeta(std::cos(angle), std::sin(angle));
    return CF(c0_.to_double(), 0.0) + CF(c1_.to_double(), 0.0) * zeta;
}

CycloScalar operator+(const CycloScalar& a, const CycloScalar& b) {
    a.check_order(b);
    return CycloScalar(a.m_, a.c0_ + b.c0_, a.c1_ + b.c1_);
}

CycloScalar operator-(const CycloScalar& a, const CycloScalar& b) {
    a.check_order(b);
    return CycloScalar(a.m_, a.c0_ - b.c0_, a.c1_ - b.c1_);
}

CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
    a.check_order(b);
    Rat s0, s1;
    a.reduce_square(s0, s1);
    Rat q = a.c1_ * b.c1_;
    return CycloScalar(a.m_,
                       a.c0_ * b.c0_ + q * s0,
                       a.c0_ * b.c1_ + a.c1_ * b.c0_ + q * s1);
}

CycloSeries CycloSeries::lift(int m, const PSeries& s) {
    CycloSeries r;
    r.m = m;
    for (const auto& [k, p] : s.coeffs()) {
        for (const auto& [e, c] : p.terms())
            r.add_term(k, e[0], CycloScalar::from_rat(m, c));
    }
    return r;
}

PSeries CycloSeries::lower() const {
    PSeries s(1, 0, PSeries::kExactOrder);
    std::map<long, Poly> coeffs;
    for (const auto& [key, c] : t) {
        if (!c.is_rational())
            fail(ErrorKind::BadInput,
                 "expression has an irrational cyclotomic coefficient");
        auto [upow, gpow] = key;
        auto it = coeffs.find(upow);
        if (it == coeffs.end()) it = coeffs.emplace(upow, Poly(1)).first;
        it->second += Poly::monomial(1, {static_cast<int>(gpow)}, c.rational_value());
    }
    for (const auto& [k, p] : coeffs)
        if (!p.is_zero()) s.set_coefficient(k, p);
    return s.tightened();
}

void CycloSeries::add_term(long upow, long gpow, const CycloScalar& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(upow, gpow);
    auto it = t.find(key);
    if (it == t.end()) {
        t.emplace(key, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) t.erase(it);
    }
}

CycloSeries CycloSeries::operator*(const CycloSeries& o) const {
    if (m != o.m) fail(ErrorKind::BadInput, "cyclotomic orders differ");
    CycloSeries r;
    r.m = m;
    for (const auto& [ka, ca] : t)
        for (const auto& [kb, cb] : o.t)
            r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

CycloSeries CycloSeries::operator+(const CycloSeries& o) const {
    if (m != o.m) fail(ErrorKind::BadInput, "cyclotomic orders differ");
    CycloSeries r = *this;
    for (const auto& [k, c] : o.t) r.add_term(k.first, k.second, c);
    return r;
}

CycloSeries CycloSeries::operator-() const {
    CycloSeries r;
    r.m = m;
    for (const auto& [k, c] : t) r.t.emplace(k, -c);
    return r;
}

CycloSeries CycloSeries::scaled(const CycloScalar& c) const {
    CycloSeries r;
    r.m = m;
    for (const auto& [k, v] : t) r.add_term(k.first, k.second, v * c);
    return r;
}

CycloSeries CycloSeries::pow(int n) const {
    if (n < 0) fail(ErrorKind::BadInput, "negative power");
    CycloSeries r;
    r.m = m;
    r.add_term(0, 0, CycloScalar::from_rat(m, Rat(1)));
    CycloSeries base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return r;
}

CF CycloSeries::eval(CF u, CF gamma) const {
    CF acc(0.0, 0.0);
    CF uinv = CF(1.0, 0.0) / u;
    for (const auto& [k, c] : t) {
        CF term = c.to_cf();
        long up = k.first;
        for (long i = 0; i < std::abs(up); ++i) term *= (up > 0 ? uinv : u);
        for (long i = 0; i < k.second; ++i) term *= gamma;
        acc += term;
    }
    return acc;
}

std::string CycloSeries::str() const {
    if (t.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.c0().str();
        if (!c.c1().is_zero()) os << " + " << c.c1().str() << "*zeta";
        os << ")";
        if (k.second != 0) {
            os << "*gamma";
            if (k.second != 1) os << "^" << k.second;
        }
        if (k.first != 0) os << "*u^" << -k.first;
    }
    return os.str();
}

PSeries SigmaAction::gamma_image() const {
    if (approximate)
        fail(ErrorKind::UnsupportedOrder,
             "approximate action has no exact gamma image");
    CycloSeries img;
    img.m = m;
    img.add_term(0, 1, gamma_scale);
    for (const auto& [k, c] : gamma_shift) img.add_term(k, 0, c);
    return img.lower();
}

std::pair<CF, CF> SigmaAction::apply_point(CF u, CF gamma) const {
    CF su = zeta_f * u;
    CF sg = gamma_scale_f * gamma;
    CF uinv = CF(1.0, 0.0) / u;
    for (const auto& [k, c] : gamma_shift_f) {
        CF pw(1.0, 0.0);
        for (long i = 0; i < std::abs(k); ++i) pw *= (k > 0 ? uinv : u);
        sg += c * pw;
    }
    return {su, sg};
}

SigmaAction derive_sigma(const UVRep& rep, int j) {
    rep.validate();
    SigmaAction act;
    act.rep = rep;
    act.m = rep.m;
    act.j = ((j % rep.m) + rep.m) % rep.m;

    double angle = 2.0 * std::numbers::pi * act.j / rep.m;
    act.zeta_f = CF(std::cos(angle), std::sin(angle));
    if (act.j == 0) act.zeta_f = CF(1.0, 0.0);

    bool exact = CycloScalar::order_supported(rep.m);
    act.approximate = !exact;

    auto zeta_f_pow = [&](long e) {
        double a = 2.0 * std::numbers::pi * act.j * e / rep.m;
        return CF(std::cos(a), std::sin(a));
    };

    // Requiring the gamma-carrying coordinate x2 = sum h_i u^(m-i) +
    // gamma u^(m-N) to stay fixed under u -> zeta^j u forces
    //   sigma gamma = zeta^(j(N-m)) gamma
    //               + sum_i h_i (1 - zeta^(j(m-i))) zeta^(j(N-m)) u^(N-i).
    act.gamma_scale_f = zeta_f_pow(rep.N - rep.m);
    if (exact)
        act.gamma_scale =
            CycloScalar::zeta_pow(rep.m, static_cast<long>(act.j) * (rep.N - rep.m));
    for (int i = 0; i < rep.N; ++i) {
        if (rep.h[i].is_zero()) continue;
        long upow = static_cast<long>(i) - rep.N; // U-exponent of u^(N-i)
        if (exact) {
            CycloScalar one = CycloScalar::from_rat(rep.m, Rat(1));
            CycloScalar factor =
                (one - CycloScalar::zeta_pow(rep.m, static_cast<long>(act.j) * (rep.m - i))) *
                act.gamma_scale;
            CycloScalar coeff = factor * CycloScalar::from_rat(rep.m, rep.h[i]);
            if (!coeff.is_zero()) {
                act.gamma_shift.emplace(upow, coeff);
                act.gamma_shift_f.emplace_back(upow, coeff.to_cf());
            }
        } else {
            CF coeff = (CF(1.0, 0.0) - zeta_f_pow(rep.m - i)) * zeta_f_pow(rep.N - rep.m) *
                       CF(rep.h[i].to_double(), 0.0);
            if (std::abs(coeff) > 0.0) act.gamma_shift_f.emplace_back(upow, coeff);
        }
    }
    return act;
}

CycloSeries apply_sigma(const SigmaAction& action, const CycloSeries& expr) {
    if (action.approximate)
        fail(ErrorKind::UnsupportedOrder,
             "exact application unavailable for order " + std::to_string(action.m));
    if (expr.m != action.m) fail(ErrorKind::BadInput, "cyclotomic orders differ");
    CycloSeries sg; // sigma gamma
    sg.m = action.m;
    sg.add_term(0, 1, action.gamma_scale);
    for (const auto& [k, c] : action.gamma_shift) sg.add_term(k, 0, c);

    CycloSeries out;
    out.m = action.m;
    std::vector<CycloSeries> sg_pows{CycloSeries{action.m, {}}};
    sg_pows[0].add_term(0, 0, CycloScalar::from_rat(action.m, Rat(1)));
    auto sg_pow = [&](long g) -> const CycloSeries& {
        while (static_cast<long>(sg_pows.size()) <= g)
            sg_pows.push_back(sg_pows.back() * sg);
        return sg_pows[g];
    };
    for (const auto& [key, c] : expr.t) {
        auto [upow, gpow] = key;
        // u^(-upow) -> zeta^(-j*upow) u^(-upow)
        CycloScalar factor = c * CycloScalar::zeta_pow(action.m, -action.j * upow);
        CycloSeries term = sg_pow(gpow).scaled(factor);
        for (const auto& [tk, tc] : term.t)
            out.add_term(tk.first + upow, tk.second, tc);
    }
    return out;
}

PSeries apply_sigma(const SigmaAction& action, const PSeries& expr) {
    if (!expr.exact() && !action.gamma_shift.empty())
        fail(ErrorKind::TruncationInsufficient,
             "the substitution would pull the truncated tail into known orders");
    CycloSeries lifted = CycloSeries::lift(action.m, expr);
    return apply_sigma(action, lifted).lower();
}

LaurentGamma apply_sigma(const SigmaAction& action, const LaurentGamma& expr) {
    LaurentGamma out;
    out.num = apply_sigma(action, expr.num);
    if (expr.den) out.den = apply_sigma(action, *expr.den);
    return out;
}

VerificationRecord check_equivariance(const ABExpansion& exp, const UVRep& rep,
                                      const SigmaAction& action) {
    VerificationRecord rec;
    rec.identity = "galois";
    IndexRecord idx = indices(rep, exp);
    auto [chi1, psi1] = chi_psi(exp);
    (void)chi1;

    if (action.approximate) {
        // Numeric spot check only.
        rec.approximate = true;
        rec.notes.push_back("order " + std::to_string(action.m) +
                            " has no exact cyclotomic support; checked numerically");
        double worst = 0.0;
        CF zk = std::pow(action.zeta_f, CF(static_cast<double>(-idx.K), 0.0));
        for (CF u : {CF(1.3, 0.2), CF(-2.1, 0.7), CF(3.4, -1.1)}) {
            for (CF g : {CF(0.8, 0.0), CF(-1.7, 0.4)}) {
                auto [su, sg] = action.apply_point(u, g);
                CF lhs = psi1.eval(CF(1.0, 0.0) / su, {sg});
                CF rhs = zk * psi1.eval(CF(1.0, 0.0) / u, {g});
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        rec.status = worst < 1e-8 ? VerificationRecord::Status::Pass
                                  : VerificationRecord::Status::Fail;
        rec.residual = "max pointwise deviation " + std::to_string(worst);
        return rec;
    }

    CycloSeries lifted = CycloSeries::lift(action.m, psi1);
    CycloSeries lhs = apply_sigma(action, lifted);
    CycloScalar zk = CycloScalar::zeta_pow(action.m, -static_cast<long>(action.j) * idx.K);
    CycloSeries rhs = lifted.scaled(zk);
    CycloSeries residual = lhs + (-rhs);
    rec.status = residual.is_zero() ? VerificationRecord::Status::Pass
                                    : VerificationRecord::Status::Fail;
    rec.residual = residual.str();
    rec.notes.push_back("K = " + std::to_string(idx.K) + ", order m = " +
                        std::to_string(action.m) + ", power j = " +
                        std::to_string(action.j));
    return rec;
}

} // namespace uvflow
