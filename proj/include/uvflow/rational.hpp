#ifndef UVFLOW_RATIONAL_HPP
#define UVFLOW_RATIONAL_HPP

#include <gmpxx.h>

#include <complex>
#include <iosfwd>
#include <string>

#include "uvflow/error.hpp"

namespace uvflow {

using CF = std::complex<double>;

// Exact rational scalar. Thin value wrapper over GMP's mpq_class that keeps
// every instance canonical (gcd(|num|,den) = 1, den > 0) and hides the
// expression templates of gmpxx behind a concrete type.
class Rat {
  public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}
    Rat(long n, long d) : q_(n, d) {
        if (d == 0) fail(ErrorKind::BadInput, "rational with zero denominator");
        q_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static Rat parse(const std::string& text);

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    double to_double() const { return q_.get_d(); }
    std::string str() const { return q_.get_str(); }
    const mpq_class& raw() const { return q_; }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) fail(ErrorKind::BadInput, "rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

    // Exact m-th root, or failure if numerator/denominator are not perfect
    // m-th powers (negative values allowed for odd m).
    Rat nth_root(int m) const;

    Rat abs() const { return q_ < 0 ? Rat(mpq_class(-q_)) : *this; }

  private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

} // namespace uvflow

#endif
