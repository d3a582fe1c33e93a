#include "uvflow/uvrep.hpp"

#include <cmath>

namespace uvflow {

void UVRep::validate() const {
    if (m < 1) fail(ErrorKind::BadInput, "representation needs m >= 1");
    if (N < 1) fail(ErrorKind::BadInput, "representation needs N >= 1");
    if (static_cast<int>(h.size()) != N)
        fail(ErrorKind::BadInput, "representation needs exactly N constants h_i");
    bool ok = (role[0] == 1 && role[1] == 2) || (role[0] == 2 && role[1] == 1);
    if (!ok) fail(ErrorKind::BadInput, "role must be a permutation of {1,2}");
    if (sign != 1 && sign != -1) fail(ErrorKind::BadInput, "sign must be +1 or -1");
}

std::array<PSeries, 2> curve_series_role(const UVRep& rep) {
    rep.validate();
    PSeries lead = PSeries::monomial(1, -rep.m, Rat(rep.sign));
    PSeries tail(1, rep.N - rep.m, PSeries::kExactOrder);
    for (int i = 0; i < rep.N; ++i) {
        if (rep.h[i].is_zero()) continue;
        // h_i u^(m-i) = h_i U^(i-m)
        tail.set_coefficient(i - rep.m, Poly::constant(1, rep.h[i]));
    }
    tail.set_coefficient(rep.N - rep.m, Poly::variable(1, 1)); // gamma u^(m-N)
    return {lead.tightened(), tail.tightened()};
}

std::array<PSeries, 2> curve_series_ambient(const UVRep& rep) {
    auto role_series = curve_series_role(rep);
    std::array<PSeries, 2> out{PSeries(1), PSeries(1)};
    out[rep.role[0] - 1] = role_series[0];
    out[rep.role[1] - 1] = role_series[1];
    return out;
}

std::vector<CF> curve_eval(const UVRep& rep, CF gamma, CF u) {
    rep.validate();
    if (u == CF(0.0, 0.0)) fail(ErrorKind::ZeroU, "curve is undefined at u = 0");
    auto series = curve_series_ambient(rep);
    std::vector<CF> point(2);
    CF uinv = CF(1.0, 0.0) / u;
    for (int i = 0; i < 2; ++i) point[i] = series[i].eval(uinv, {gamma});
    return point;
}

namespace {

void store(std::vector<Poly>& dst, long idx, const Poly& p) {
    if (p.is_zero()) return;
    if (static_cast<long>(dst.size()) <= idx) dst.resize(idx + 1, Poly(1));
    dst[idx] = p;
}

} // namespace

ABExpansion expand_image(const UVRep& rep, const PolyMap& f, int max_order) {
    rep.validate();
    f.validate();
    if (f.arity != 2)
        fail(ErrorKind::ArityMismatch, "image expansion needs a planar map");
    auto curve = curve_series_ambient(rep);
    std::vector<Poly> comps[2];
    for (int c = 0; c < 2; ++c) {
        // Substitute the curve coordinates into the polynomial; everything is
        // an exact Laurent polynomial in U = 1/u, so no truncation is needed.
        PSeries img(1, 0, PSeries::kExactOrder);
        std::vector<PSeries> powers[2];
        auto curve_pow = [&](int var, int n) -> const PSeries& {
            auto& cache = powers[var];
            if (cache.empty()) cache.push_back(PSeries::constant(1, Rat(1)));
            while (static_cast<int>(cache.size()) <= n)
                cache.push_back(cache.back() * curve[var]);
            return cache[n];
        };
        for (const auto& [e, coef] : f.components[c].terms()) {
            PSeries term = curve_pow(0, e[0]) * curve_pow(1, e[1]);
            // The map coefficient is a scalar; promote it to a gamma-constant.
            img = img + term.scaled(Rat(coef));
        }
        img = img.tightened();
        auto ord = img.order();
        if (ord && *ord < 0)
            fail(ErrorKind::NonConvergent,
                 "image component " + std::to_string(c + 1) +
                     " keeps a positive power of u; the curve does not tend to a finite limit");
        long top = img.coeffs().empty() ? 0 : img.coeffs().rbegin()->first;
        if (top > max_order)
            fail(ErrorKind::TruncationInsufficient,
                 "expansion needs max_order >= " + std::to_string(top));
        for (const auto& [k, p] : img.coeffs()) store(comps[c], k, p);
    }
    ABExpansion exp;
    exp.a = std::move(comps[0]);
    exp.b = std::move(comps[1]);
    exp.max_order = static_cast<int>(std::max(exp.a.size(), exp.b.size())) - 1;
    if (exp.max_order < 0) exp.max_order = 0;
    return exp;
}

PSeries ABExpansion::a_series() const {
    PSeries s(1, 0, PSeries::kExactOrder);
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero()) s.set_coefficient(static_cast<long>(i), a[i]);
    return s;
}

PSeries ABExpansion::b_series() const {
    PSeries s(1, 0, PSeries::kExactOrder);
    for (size_t i = 0; i < b.size(); ++i)
        if (!b[i].is_zero()) s.set_coefficient(static_cast<long>(i), b[i]);
    return s;
}

FVComponent fv_component(const ABExpansion& exp) {
    FVComponent v;
    v.a0 = exp.a_at(0);
    v.b0 = exp.b_at(0);
    v.degenerate = v.a0.is_constant() && v.b0.is_constant();
    return v;
}

IndexRecord indices(const UVRep& rep, const ABExpansion& exp) {
    rep.validate();
    IndexRecord rec;
    rec.m = rep.m;
    rec.N = rep.N;
    rec.L = rep.N - rep.m;
    rec.K = rec.L - rep.m;
    int k = 0;
    for (int i = 1; i <= exp.max_order; ++i) {
        if (!exp.a_at(i).is_zero() || !exp.b_at(i).is_zero()) {
            k = i;
            break;
        }
    }
    if (k == 0)
        fail(ErrorKind::AllHigherOrdersZero,
             "no positive-index coefficient is nonzero");
    rec.k = k;
    return rec;
}

} // namespace uvflow
