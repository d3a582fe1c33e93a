#ifndef UVFLOW_POLY_HPP
#define UVFLOW_POLY_HPP

#include <map>
#include <string>
#include <vector>

#include "uvflow/rational.hpp"

namespace uvflow {

// Exact multivariate polynomial over Rat. Terms are keyed by exponent
// vectors of fixed length (the arity); zero coefficients are never stored,
// and the std::map keeps a deterministic term order for printing/hashing.
class Poly {
  public:
    using Exponents = std::vector<int>;
    using Terms = std::map<Exponents, Rat>;

    explicit Poly(int arity = 1) : arity_(arity) {
        if (arity < 1) fail(ErrorKind::BadInput, "polynomial arity must be >= 1");
    }

    static Poly constant(int arity, const Rat& value);
    static Poly variable(int arity, int index); // 1-based variable index
    static Poly monomial(int arity, const Exponents& exps, const Rat& coeff);

    int arity() const { return arity_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term (zero if absent).
    Rat constant_value() const;
    int total_degree() const; // -1 for the zero polynomial
    int degree_in(int var) const;

    // Coefficient of an exponent vector, zero if absent.
    Rat coeff(const Exponents& exps) const;
    void set_coeff(const Exponents& exps, const Rat& value);

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(const Rat& c) const;
    Poly pow(int n) const;

    std::string str(const std::vector<std::string>& vars = {}) const;

  private:
    void check_same_arity(const Poly& o) const;

    int arity_;
    Terms terms_;
};

// Formal partial derivative with respect to variable `var` (1-based).
Poly partial(const Poly& p, int var);

// Substitute args[i] for variable i+1; args must have p.arity() entries of a
// common arity.
Poly substitute(const Poly& p, const std::vector<Poly>& args);

// Horner-style numeric evaluation.
CF eval(const Poly& p, const std::vector<CF>& point);
// Exact evaluation over rational points.
Rat eval_rat(const Poly& p, const std::vector<Rat>& point);

// Polynomial self-map of affine n-space.
struct PolyMap {
    int arity = 0;
    std::vector<Poly> components;
    std::vector<std::string> vars; // optional display names, x1..xn if empty

    void validate() const;
    std::vector<std::string> var_names() const;
};

std::vector<CF> eval(const PolyMap& f, const std::vector<CF>& point);
std::vector<Rat> eval_rat(const PolyMap& f, const std::vector<Rat>& point);

using PolyMatrix = std::vector<std::vector<Poly>>;

// Entry (i,j) = d f_i / d x_j.
PolyMatrix jacobian(const PolyMap& f);

// Exact determinant by Laplace expansion; n <= 4.
Poly det(const PolyMatrix& m);

// Determinant of `m` with `row` and `col` (1-based) deleted, multiplied by
// the cofactor sign (-1)^(row+col). The parity convention is pinned so that
// for a 2x2 Jacobian with row 1 deleted the pair (col 1, col 2) yields
// (+d f2/d x2, -d f2/d x1).
Poly signed_minor(const PolyMatrix& m, int row, int col);

// True iff det(jacobian(f)) is the constant polynomial 1.
bool is_keller(const PolyMap& f);

// Exact polynomial substitution f after g.
PolyMap compose(const PolyMap& f, const PolyMap& g);

} // namespace uvflow

#endif
