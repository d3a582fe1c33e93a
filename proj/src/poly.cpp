#include "uvflow/poly.hpp"

#include <algorithm>
#include <sstream>

namespace uvflow {

Poly Poly::constant(int arity, const Rat& value) {
    Poly p(arity);
    if (!value.is_zero()) p.terms_[Exponents(arity, 0)] = value;
    return p;
}

Poly Poly::variable(int arity, int index) {
    if (index < 1 || index > arity)
        fail(ErrorKind::IndexOutOfRange,
             "variable index " + std::to_string(index) + " out of range");
    Exponents e(arity, 0);
    e[index - 1] = 1;
    Poly p(arity);
    p.terms_[e] = Rat(1);
    return p;
}

Poly Poly::monomial(int arity, const Exponents& exps, const Rat& coeff) {
    if (static_cast<int>(exps.size()) != arity)
        fail(ErrorKind::ArityMismatch, "exponent vector length != arity");
    for (int e : exps)
        if (e < 0) fail(ErrorKind::BadInput, "negative exponent in monomial");
    Poly p(arity);
    if (!coeff.is_zero()) p.terms_[exps] = coeff;
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rat Poly::constant_value() const {
    auto it = terms_.find(Exponents(arity_, 0));
    return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::total_degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int x : e) d += x;
        deg = std::max(deg, d);
    }
    return deg;
}

int Poly::degree_in(int var) const {
    int deg = 0;
    for (const auto& [e, c] : terms_) deg = std::max(deg, e[var - 1]);
    return deg;
}

Rat Poly::coeff(const Exponents& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::set_coeff(const Exponents& exps, const Rat& value) {
    if (static_cast<int>(exps.size()) != arity_)
        fail(ErrorKind::ArityMismatch, "exponent vector length != arity");
    if (value.is_zero())
        terms_.erase(exps);
    else
        terms_[exps] = value;
}

void Poly::check_same_arity(const Poly& o) const {
    if (arity_ != o.arity_)
        fail(ErrorKind::ArityMismatch, "polynomial arities differ");
}

Poly Poly::operator-() const {
    Poly r(arity_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    check_same_arity(o);
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same_arity(o);
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = -c;
        } else {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same_arity(b);
    Poly r(a.arity_);
    Poly::Exponents e(a.arity_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                Rat c = ca * cb;
                if (!c.is_zero()) r.terms_.emplace(e, c);
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

Poly Poly::scaled(const Rat& c) const {
    Poly r(arity_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_[e] = v * c;
    return r;
}

Poly Poly::pow(int n) const {
    if (n < 0) fail(ErrorKind::BadInput, "negative polynomial power");
    Poly r = Poly::constant(arity_, Rat(1));
    Poly base = *this;
    while (n > 0) {
        if (n & 1) r *= base;
        base = (n >>= 1) ? base * base : base;
    }
    return r;
}

std::string Poly::str(const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool has_vars = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
        if (!a.is_one() || !has_vars) {
            os << a.str();
            if (has_vars) os << "*";
        }
        bool first_var = true;
        for (int i = 0; i < arity_; ++i) {
            if (e[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            if (i < static_cast<int>(vars.size()))
                os << vars[i];
            else
                os << "x" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

Poly partial(const Poly& p, int var) {
    if (var < 1 || var > p.arity())
        fail(ErrorKind::IndexOutOfRange,
             "derivative index " + std::to_string(var) + " out of range");
    Poly r(p.arity());
    for (const auto& [e, c] : p.terms()) {
        int k = e[var - 1];
        if (k == 0) continue;
        Poly::Exponents d = e;
        d[var - 1] = k - 1;
        r.set_coeff(d, r.coeff(d) + c * Rat(k));
    }
    return r;
}

Poly substitute(const Poly& p, const std::vector<Poly>& args) {
    if (static_cast<int>(args.size()) != p.arity())
        fail(ErrorKind::ArityMismatch, "substitution needs one polynomial per variable");
    int out_arity = args.empty() ? 1 : args[0].arity();
    for (const auto& a : args)
        if (a.arity() != out_arity)
            fail(ErrorKind::ArityMismatch, "substitution arguments disagree on arity");

    // Cache powers of each argument as needed.
    std::vector<std::vector<Poly>> powers(args.size());
    auto arg_pow = [&](int i, int n) -> const Poly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Poly::constant(out_arity, Rat(1)));
        while (static_cast<int>(cache.size()) <= n)
            cache.push_back(cache.back() * args[i]);
        return cache[n];
    };

    Poly r(out_arity);
    for (const auto& [e, c] : p.terms()) {
        Poly term = Poly::constant(out_arity, c);
        for (int i = 0; i < p.arity(); ++i)
            if (e[i] > 0) term *= arg_pow(i, e[i]);
        r += term;
    }
    return r;
}

namespace {

using TermRef = std::pair<const Poly::Exponents*, const Rat*>;

// Horner evaluation over an arbitrary field: group terms by the exponent of
// variable `var` and fold the groups from the highest power down.
template <typename F, typename Conv>
F eval_horner(const std::vector<TermRef>& items, int var, int arity,
              const std::vector<F>& point, const Conv& conv) {
    if (items.empty()) return F{};
    if (var == arity) {
        F acc{};
        for (const auto& [e, c] : items) acc += conv(*c);
        return acc;
    }
    std::map<int, std::vector<TermRef>> groups;
    for (const auto& item : items) groups[(*item.first)[var]].push_back(item);
    F acc{};
    int prev_exp = -1;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        if (prev_exp >= 0)
            for (int k = 0; k < prev_exp - it->first; ++k) acc *= point[var];
        acc += eval_horner(it->second, var + 1, arity, point, conv);
        prev_exp = it->first;
    }
    for (int k = 0; k < prev_exp; ++k) acc *= point[var];
    return acc;
}

template <typename F, typename Conv>
F eval_generic(const Poly& p, const std::vector<F>& point, const Conv& conv) {
    if (static_cast<int>(point.size()) != p.arity())
        fail(ErrorKind::ArityMismatch, "evaluation point length != arity");
    std::vector<TermRef> items;
    items.reserve(p.terms().size());
    for (const auto& [e, c] : p.terms()) items.emplace_back(&e, &c);
    return eval_horner(items, 0, p.arity(), point, conv);
}

} // namespace

CF eval(const Poly& p, const std::vector<CF>& point) {
    return eval_generic<CF>(p, point, [](const Rat& r) { return CF(r.to_double(), 0.0); });
}

Rat eval_rat(const Poly& p, const std::vector<Rat>& point) {
    return eval_generic<Rat>(p, point, [](const Rat& r) { return r; });
}

void PolyMap::validate() const {
    if (arity < 1) fail(ErrorKind::BadInput, "map arity must be >= 1");
    if (static_cast<int>(components.size()) != arity)
        fail(ErrorKind::ArityMismatch, "component count != arity");
    for (const auto& c : components)
        if (c.arity() != arity)
            fail(ErrorKind::ArityMismatch, "component arity != map arity");
}

std::vector<std::string> PolyMap::var_names() const {
    if (static_cast<int>(vars.size()) == arity) return vars;
    std::vector<std::string> names;
    for (int i = 1; i <= arity; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

std::vector<CF> eval(const PolyMap& f, const std::vector<CF>& point) {
    std::vector<CF> out;
    out.reserve(f.components.size());
    for (const auto& c : f.components) out.push_back(eval(c, point));
    return out;
}

std::vector<Rat> eval_rat(const PolyMap& f, const std::vector<Rat>& point) {
    std::vector<Rat> out;
    out.reserve(f.components.size());
    for (const auto& c : f.components) out.push_back(eval_rat(c, point));
    return out;
}

PolyMatrix jacobian(const PolyMap& f) {
    f.validate();
    PolyMatrix m(f.arity, std::vector<Poly>());
    for (int i = 0; i < f.arity; ++i)
        for (int j = 1; j <= f.arity; ++j)
            m[i].push_back(partial(f.components[i], j));
    return m;
}

namespace {

void check_square(const PolyMatrix& m) {
    if (m.empty()) fail(ErrorKind::NotSquare, "empty matrix");
    for (const auto& row : m)
        if (row.size() != m.size())
            fail(ErrorKind::NotSquare, "matrix is not square");
}

Poly det_laplace(const PolyMatrix& m, std::vector<int> cols, int row) {
    int arity = m[0][0].arity();
    if (cols.size() == 1) return m[row][cols[0]];
    Poly acc(arity);
    for (size_t k = 0; k < cols.size(); ++k) {
        const Poly& pivot = m[row][cols[k]];
        if (pivot.is_zero()) continue;
        std::vector<int> rest;
        for (size_t j = 0; j < cols.size(); ++j)
            if (j != k) rest.push_back(cols[j]);
        Poly sub = det_laplace(m, rest, row + 1);
        Poly term = pivot * sub;
        if (k % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

} // namespace

Poly det(const PolyMatrix& m) {
    check_square(m);
    if (m.size() > 4)
        fail(ErrorKind::TooLarge, "determinant limited to 4x4");
    std::vector<int> cols(m.size());
    for (size_t i = 0; i < cols.size(); ++i) cols[i] = static_cast<int>(i);
    return det_laplace(m, cols, 0);
}

Poly signed_minor(const PolyMatrix& m, int row, int col) {
    check_square(m);
    int n = static_cast<int>(m.size());
    if (row < 1 || row > n || col < 1 || col > n)
        fail(ErrorKind::IndexOutOfRange, "minor indices out of range");
    if (n == 1) {
        // Empty minor: determinant 1, cofactor sign (+1)^2.
        return Poly::constant(m[0][0].arity(), Rat(1));
    }
    PolyMatrix sub;
    for (int i = 0; i < n; ++i) {
        if (i == row - 1) continue;
        std::vector<Poly> r;
        for (int j = 0; j < n; ++j)
            if (j != col - 1) r.push_back(m[i][j]);
        sub.push_back(std::move(r));
    }
    Poly d = det(sub);
    return ((row + col) % 2 == 0) ? d : -d;
}

bool is_keller(const PolyMap& f) {
    if (f.arity > 4) fail(ErrorKind::TooLarge, "Keller test limited to arity 4");
    Poly d = det(jacobian(f));
    return d.is_constant() && d.constant_value().is_one();
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
    f.validate();
    g.validate();
    if (f.arity != g.arity)
        fail(ErrorKind::ArityMismatch, "composition needs equal arities");
    PolyMap r;
    r.arity = f.arity;
    r.vars = g.vars;
    for (const auto& c : f.components)
        r.components.push_back(substitute(c, g.components));
    return r;
}

} // namespace uvflow
