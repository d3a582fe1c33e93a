#include "uvflow/pseries.hpp"

#include <algorithm>
#include <sstream>

namespace uvflow {

namespace {

constexpr long kExact = PSeries::kExactOrder;

long sat_add(long a, long b) {
    if (a >= kExact || b >= kExact) return kExact;
    long s = a + b;
    return s >= kExact ? kExact : s;
}

long sat_sub(long a, long b) {
    if (a >= kExact) return kExact;
    return a - b;
}

long sat_mul(long a, long b) {
    if (a <= 0 || b <= 0) return a * b;
    if (a >= kExact || b >= kExact || a > kExact / b) return kExact;
    return a * b;
}

} // namespace

PSeries PSeries::monomial(int params, long k, const Poly& c) {
    if (c.arity() != params)
        fail(ErrorKind::ParamArityMismatch, "coefficient arity != series params");
    PSeries s(params, k, kExactOrder);
    if (!c.is_zero()) s.c_[k] = c;
    return s;
}

PSeries PSeries::monomial(int params, long k, const Rat& c) {
    return monomial(params, k, Poly::constant(params, c));
}

Poly PSeries::coefficient(long k) const {
    if (k > trunc_)
        fail(ErrorKind::TruncationInsufficient,
             "coefficient " + std::to_string(k) + " beyond truncation " +
                 (exact() ? std::string("inf") : std::to_string(trunc_)));
    auto it = c_.find(k);
    return it == c_.end() ? Poly(params_) : it->second;
}

void PSeries::set_coefficient(long k, const Poly& p) {
    if (p.arity() != params_)
        fail(ErrorKind::ParamArityMismatch, "coefficient arity != series params");
    if (k > trunc_)
        fail(ErrorKind::TruncationInsufficient, "assignment beyond truncation");
    if (k < val_) val_ = k;
    if (p.is_zero())
        c_.erase(k);
    else
        c_[k] = p;
}

void PSeries::insert(long k, const Poly& p) {
    if (!p.is_zero()) c_[k] = p;
}

void PSeries::check_params(const PSeries& o) const {
    if (params_ != o.params_)
        fail(ErrorKind::ParamArityMismatch, "series parameter arities differ");
}

PSeries PSeries::tightened() const {
    if (c_.empty() || c_.begin()->first == val_) return *this;
    PSeries r = *this;
    r.val_ = r.c_.begin()->first;
    return r;
}

PSeries PSeries::truncated(long new_trunc) const {
    PSeries r(params_, std::min(val_, new_trunc), new_trunc);
    for (const auto& [k, p] : c_)
        if (k <= new_trunc) r.c_[k] = p;
    return r;
}

PSeries PSeries::with_window(long val, long trunc) const {
    PSeries r(params_, val, trunc);
    for (const auto& [k, p] : c_) {
        if (k > trunc) continue;
        if (k < val) fail(ErrorKind::BadInput, "coefficient below window");
        r.c_[k] = p;
    }
    return r;
}

PSeries PSeries::operator-() const {
    PSeries r(params_, val_, trunc_);
    for (const auto& [k, p] : c_) r.c_[k] = -p;
    return r;
}

PSeries operator+(const PSeries& a, const PSeries& b) {
    a.check_params(b);
    PSeries r(a.params_, std::min(a.val_, b.val_), std::min(a.trunc_, b.trunc_));
    for (const auto& [k, p] : a.c_)
        if (k <= r.trunc_) r.c_[k] = p;
    for (const auto& [k, p] : b.c_) {
        if (k > r.trunc_) continue;
        auto it = r.c_.find(k);
        if (it == r.c_.end()) {
            r.insert(k, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) r.c_.erase(it);
        }
    }
    return r;
}

PSeries operator-(const PSeries& a, const PSeries& b) { return a + (-b); }

PSeries mul_capped(const PSeries& a_in, const PSeries& b_in, long cap) {
    a_in.check_params(b_in);
    PSeries a = a_in.tightened();
    PSeries b = b_in.tightened();
    long val = sat_add(a.val(), b.val());
    long trunc =
        std::min(cap, std::min(sat_add(a.trunc(), b.val()), sat_add(b.trunc(), a.val())));
    if (trunc < val) trunc = val; // zero-on-window result, positioned at val
    PSeries r(a.params(), val, trunc);
    for (const auto& [ka, pa] : a.coeffs()) {
        for (const auto& [kb, pb] : b.coeffs()) {
            long k = ka + kb;
            if (k > trunc) continue;
            Poly prod = pa * pb;
            if (prod.is_zero()) continue;
            auto it = r.c_.find(k);
            if (it == r.c_.end()) {
                r.c_[k] = std::move(prod);
            } else {
                it->second += prod;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    }
    return r;
}

PSeries operator*(const PSeries& a, const PSeries& b) {
    return mul_capped(a, b, kExact);
}

PSeries PSeries::scaled(const Rat& c) const {
    PSeries r(params_, val_, trunc_);
    if (c.is_zero()) return r;
    for (const auto& [k, p] : c_) r.c_[k] = p.scaled(c);
    return r;
}

PSeries PSeries::scaled(const Poly& c) const {
    if (c.arity() != params_)
        fail(ErrorKind::ParamArityMismatch, "scale factor arity != series params");
    PSeries r(params_, val_, trunc_);
    if (c.is_zero()) return r;
    for (const auto& [k, p] : c_) r.insert(k, p * c);
    return r;
}

PSeries PSeries::shifted(long k) const {
    PSeries r(params_, sat_add(val_, k), sat_add(trunc_, k));
    for (const auto& [e, p] : c_) r.c_[e + k] = p;
    return r;
}

PSeries PSeries::derivative() const {
    PSeries r(params_, val_ - 1, sat_sub(trunc_, 1));
    for (const auto& [k, p] : c_) {
        if (k == 0) continue;
        r.c_[k - 1] = p.scaled(Rat(k));
    }
    return r;
}

PSeries PSeries::param_derivative(int var) const {
    PSeries r(params_, val_, trunc_);
    for (const auto& [k, p] : c_) r.insert(k, partial(p, var));
    return r;
}

PSeries PSeries::pow(int n) const {
    if (n < 0) fail(ErrorKind::BadInput, "negative series power");
    PSeries r = PSeries::constant(params_, Rat(1));
    PSeries base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return r;
}

CF PSeries::eval(CF s, const std::vector<CF>& params) const {
    CF acc(0.0, 0.0);
    for (const auto& [k, p] : c_) {
        CF power(1.0, 0.0);
        if (k >= 0) {
            for (long i = 0; i < k; ++i) power *= s;
        } else {
            CF inv = CF(1.0, 0.0) / s;
            for (long i = 0; i < -k; ++i) power *= inv;
        }
        acc += uvflow::eval(p, params) * power;
    }
    return acc;
}

std::string PSeries::str(const std::string& var,
                         const std::vector<std::string>& params) const {
    std::ostringstream os;
    if (c_.empty()) {
        os << "0";
    } else {
        bool first = true;
        for (const auto& [k, p] : c_) {
            if (!first) os << " + ";
            first = false;
            bool wrap = p.terms().size() > 1;
            if (wrap) os << "(";
            os << p.str(params);
            if (wrap) os << ")";
            if (k != 0) {
                os << "*" << var;
                if (k != 1) os << "^" << k;
            }
        }
    }
    if (!exact()) os << " + O(" << var << "^" << (trunc_ + 1) << ")";
    return os.str();
}

PSeries ps_compose(const PSeries& outer_in, const PSeries& inner_in) {
    outer_in.check_params(inner_in);
    PSeries outer = outer_in.tightened();
    PSeries inner = inner_in.tightened();

    auto iord = inner.order();
    long vi = iord ? *iord : sat_add(inner.trunc(), 1);
    if (vi < 1)
        fail(ErrorKind::InnerNotPositiveValuation,
             "composition inner series must have positive valuation");
    auto oord = outer.order();
    if (oord && *oord < 0)
        fail(ErrorKind::BadInput, "composition outer series must have valuation >= 0");

    long vo = oord.value_or(sat_add(outer.trunc(), 1));
    long cap;
    if (outer.exact() && inner.exact()) {
        cap = kExact;
    } else {
        long from_outer =
            outer.exact() ? kExact : sat_sub(sat_mul(outer.trunc() + 1, vi), 1);
        long from_inner = inner.exact()
                              ? kExact
                              : sat_add(inner.trunc(), sat_mul(std::max(vo - 1, 0L), vi));
        cap = std::min(from_outer, from_inner);
    }

    long hi = outer.exact()
                  ? (outer.coeffs().empty() ? 0 : outer.coeffs().rbegin()->first)
                  : outer.trunc();
    PSeries acc = PSeries::monomial(outer.params(), 0, outer.coefficient(std::min(hi, outer.trunc())))
                      .with_window(0, cap);
    for (long k = hi - 1; k >= 0; --k) {
        acc = mul_capped(acc, inner, cap);
        Poly ck = outer.coefficient(k);
        if (!ck.is_zero())
            acc = acc + PSeries::monomial(outer.params(), 0, ck).with_window(0, acc.trunc());
    }
    return acc;
}

PSeries ps_invert_unit(const PSeries& a_in, std::optional<long> order) {
    PSeries a = a_in.tightened();
    auto ord = a.order();
    if (!ord || *ord != 0)
        fail(ErrorKind::NotUnit, "inverse needs valuation 0");
    Poly lead = a.coefficient(0);
    if (!lead.is_constant())
        fail(ErrorKind::NotUnit, "inverse needs a constant leading coefficient");
    Rat c0 = lead.constant_value();

    if (a.coeffs().size() == 1 && a.exact())
        return PSeries::monomial(a.params(), 0, Rat(1) / c0);

    long trunc = a.trunc();
    if (order) trunc = std::min(trunc, *order);
    if (trunc >= kExact)
        fail(ErrorKind::OrderRequired,
             "inverse of an exact non-monomial series needs an explicit order");

    Rat inv0 = Rat(1) / c0;
    PSeries r(a.params(), 0, trunc);
    std::map<long, Poly> coeffs;
    coeffs[0] = Poly::constant(a.params(), inv0);
    for (long n = 1; n <= trunc; ++n) {
        Poly acc(a.params());
        for (const auto& [i, ai] : a.coeffs()) {
            if (i < 1 || i > n) continue;
            auto it = coeffs.find(n - i);
            if (it == coeffs.end()) continue;
            acc += ai * it->second;
        }
        if (!acc.is_zero()) coeffs[n] = acc.scaled(-inv0);
    }
    for (auto& [k, p] : coeffs) r.set_coefficient(k, p);
    return r;
}

PSeries ps_div(const PSeries& a_in, const PSeries& b_in, std::optional<long> order) {
    a_in.check_params(b_in);
    PSeries a = a_in.tightened();
    PSeries b = b_in.tightened();
    auto bord = b.order();
    if (!bord) fail(ErrorKind::NotUnit, "division by a series that is zero on its window");
    long vb = *bord;
    Poly lead = b.coefficient(vb);
    if (!lead.is_constant())
        fail(ErrorKind::NotUnit, "division needs a constant leading coefficient");

    if (a.known_zero()) {
        if (a.exact()) return PSeries(a.params(), a.val(), kExact);
        return PSeries(a.params(), a.val() - vb, sat_sub(a.trunc(), vb));
    }
    long va = *a.order();
    if (order && *order < va - vb) {
        // Everything up to the requested order sits below the quotient's
        // leading exponent and is therefore known zero.
        return PSeries(a.params(), *order, *order);
    }

    PSeries unit = b.shifted(-vb);
    if (unit.exact() && unit.coeffs().size() > 1 && a.exact() && !order) {
        // Try terminating long division before giving up.
        long budget = 4 * static_cast<long>(a.coeffs().size() + b.coeffs().size()) + 32;
        PSeries rem = a.shifted(-vb);
        PSeries q(a.params(), va - vb, kExact);
        Rat inv0 = Rat(1) / lead.constant_value();
        for (long steps = 0; steps < budget && !rem.known_zero(); ++steps) {
            long k = *rem.order();
            Poly qk = rem.coefficient(k).scaled(inv0);
            q.set_coefficient(k, qk);
            rem = rem - unit * PSeries::monomial(a.params(), k, qk);
        }
        if (rem.known_zero()) return q;
        fail(ErrorKind::OrderRequired,
             "non-terminating exact division needs an explicit order");
    }

    std::optional<long> unit_order;
    if (order && *order < kExact) unit_order = *order + vb - va;
    PSeries inv = ps_invert_unit(unit, unit_order);
    PSeries q = a * inv;
    if (order && q.trunc() > *order) q = q.truncated(*order);
    return q.shifted(-vb);
}

PSeries ps_revert(const PSeries& a_in, std::optional<long> order) {
    PSeries a = a_in.tightened();
    auto ord = a.order();
    if (!ord || *ord != 1)
        fail(ErrorKind::NotRevertible, "reversion needs valuation exactly 1");
    Poly lead = a.coefficient(1);
    if (!lead.is_constant() || lead.constant_value().is_zero())
        fail(ErrorKind::NotRevertible,
             "reversion needs a constant invertible leading coefficient");
    long target = order.value_or(a.trunc());
    if (target >= kExact)
        fail(ErrorKind::OrderRequired,
             "reversion of an exact series needs an explicit order");
    if (target < 1) fail(ErrorKind::BadInput, "reversion order must be >= 1");

    Rat c1 = lead.constant_value();
    int params = a.params();
    PSeries atr = a.truncated(std::min(a.trunc(), target));
    PSeries da = atr.derivative();

    // Newton iteration b <- b - (a(b) - id) / a'(b), doubling the correct
    // order each round.
    PSeries b = PSeries::monomial(params, 1, Rat(1) / c1);
    long good = 1;
    while (good < target) {
        long next = std::min(2 * good, target);
        PSeries bw = b.truncated(next).with_window(1, next);
        PSeries err = ps_compose(atr, bw) -
                      PSeries::identity(params).with_window(1, next);
        PSeries denom = ps_compose(da, bw);
        PSeries corr = ps_div(err, denom, next);
        b = (bw - corr).truncated(next);
        good = next;
    }
    b = b.with_window(1, target);

    // Back-substitution check; a failure here is an internal defect.
    PSeries check = ps_compose(atr, b);
    long upto = std::min(check.trunc(), target);
    PSeries idw = PSeries::identity(params).with_window(1, upto);
    if (check.truncated(upto).with_window(1, upto) != idw)
        fail(ErrorKind::NotRevertible, "reversion failed back-substitution");
    return b;
}

PSeries ps_root(const PSeries& a_in, int m, std::optional<long> order) {
    if (m < 1) fail(ErrorKind::BadInput, "root order must be >= 1");
    PSeries a = a_in.tightened();
    if (m == 1) return a;
    auto ord = a.order();
    if (!ord) fail(ErrorKind::BadInput, "root of a series that is zero on its window");
    long va = *ord;
    if (va % m != 0)
        fail(ErrorKind::ValuationNotDivisible,
             "valuation " + std::to_string(va) + " not divisible by " + std::to_string(m));
    Poly lead = a.coefficient(va);
    if (!lead.is_constant())
        fail(ErrorKind::LeadingNotPerfectPower,
             "root needs a constant leading coefficient");
    Rat root0 = lead.constant_value().nth_root(m); // throws if not a perfect power

    if (a.coeffs().size() == 1 && a.exact())
        return PSeries::monomial(a.params(), va / m, root0);

    long rel;
    if (a.exact()) {
        if (!order)
            fail(ErrorKind::OrderRequired, "root of an exact series needs an explicit order");
        rel = *order - va / m;
    } else {
        rel = a.trunc() - va;
        if (order) rel = std::min(rel, *order - va / m);
    }
    if (rel < 0) fail(ErrorKind::BadInput, "root order below valuation");

    // w = a / (lead * s^va) - 1, then (1+w)^(1/m) by the binomial series.
    PSeries w = a.shifted(-va).scaled(Rat(1) / lead.constant_value()).truncated(rel) -
                PSeries::constant(a.params(), Rat(1)).with_window(0, rel);
    PSeries acc = PSeries::constant(a.params(), Rat(1)).with_window(0, rel);
    PSeries wpow = acc;
    Rat binom(1);
    for (long k = 1; k <= rel; ++k) {
        binom *= (Rat(1, m) - Rat(k - 1)) / Rat(k);
        wpow = mul_capped(wpow, w, rel);
        if (wpow.known_zero()) break;
        acc = acc + wpow.scaled(binom);
    }
    return acc.shifted(va / m).scaled(root0);
}

std::vector<Poly> chart_limits(const std::vector<BlowupChart>& chain,
                               const PSeries& x2, const PSeries& t) {
    x2.check_params(t);
    auto tord = t.order();
    if (!tord || *tord < 1)
        fail(ErrorKind::BadInput, "trajectory T(z) must have positive valuation");

    std::vector<PSeries> coords{x2, t};
    std::vector<Poly> limits;
    int params = x2.params();
    for (size_t ci = 0; ci < chain.size(); ++ci) {
        const BlowupChart& chart = chain[ci];
        if (chart.num_index < 0 || chart.num_index >= static_cast<int>(coords.size()) ||
            chart.den_index < 0 || chart.den_index >= static_cast<int>(coords.size()))
            fail(ErrorKind::BadInput, "chart references an undefined coordinate");
        PSeries num = coords[chart.num_index] -
                      PSeries::constant(params, chart.num_center);
        PSeries den = coords[chart.den_index] -
                      PSeries::constant(params, chart.den_center);
        std::optional<long> cap;
        if (num.exact() && den.exact())
            cap = static_cast<long>(chain.size() - ci) + 4;
        PSeries q = ps_div(num, den, cap);
        auto qord = q.order();
        if (qord && *qord < 0)
            fail(ErrorKind::DivisionByZeroValuation,
                 "chart '" + chart.name + "' diverges along the trajectory");
        if (q.trunc() < 0)
            fail(ErrorKind::TruncationInsufficient,
                 "chart '" + chart.name + "' limit is undetermined at this truncation");
        limits.push_back(q.coefficient(0));
        coords.push_back(std::move(q));
    }
    return limits;
}

} // namespace uvflow
