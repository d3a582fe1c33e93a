#ifndef UVFLOW_PSERIES_HPP
#define UVFLOW_PSERIES_HPP

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uvflow/poly.hpp"

namespace uvflow {

// Truncated Laurent/power series in one formal variable whose coefficients
// are polynomials in `params` auxiliary parameters.
//
// The pair (val, trunc) is the window of exponents whose coefficients are
// known; exponents below `val` are zero, exponents above `trunc` are
// unknown. Exact objects (finitely many terms, nothing hidden) carry
// trunc == kExactOrder. Operations propagate windows pessimistically and
// refuse to fabricate coefficients beyond them.
class PSeries {
  public:
    static constexpr long kExactOrder = std::numeric_limits<long>::max() / 4;

    explicit PSeries(int params = 1, long val = 0, long trunc = kExactOrder)
        : params_(params), val_(val), trunc_(trunc) {
        if (params < 1) fail(ErrorKind::BadInput, "series needs >= 1 parameter");
        if (trunc < val) fail(ErrorKind::BadInput, "series window is empty");
    }

    static PSeries zero(int params, long val = 0, long trunc = kExactOrder) {
        return PSeries(params, val, trunc);
    }
    // c * s^k as an exact series.
    static PSeries monomial(int params, long k, const Poly& c);
    static PSeries monomial(int params, long k, const Rat& c);
    static PSeries constant(int params, const Rat& c) { return monomial(params, 0, c); }
    // The formal variable itself.
    static PSeries identity(int params) { return monomial(params, 1, Rat(1)); }

    int params() const { return params_; }
    long val() const { return val_; }
    long trunc() const { return trunc_; }
    bool exact() const { return trunc_ == kExactOrder; }
    const std::map<long, Poly>& coeffs() const { return c_; }

    bool known_zero() const { return c_.empty(); }
    // Least exponent carrying a nonzero coefficient; nullopt when the series
    // is zero on its window.
    std::optional<long> order() const {
        return c_.empty() ? std::nullopt : std::optional<long>(c_.begin()->first);
    }

    // Coefficient at exponent k: known zeros come back as zero polynomials,
    // exponents above the window are refused.
    Poly coefficient(long k) const;
    void set_coefficient(long k, const Poly& p);

    PSeries truncated(long new_trunc) const;
    PSeries with_window(long val, long trunc) const;
    // Copy with `val` raised to the actual order (sound: skipped exponents
    // are stored-zero), which sharpens window propagation in products.
    PSeries tightened() const;

    void check_params(const PSeries& o) const;

    PSeries operator-() const;
    friend PSeries operator+(const PSeries& a, const PSeries& b);
    friend PSeries operator-(const PSeries& a, const PSeries& b);
    friend PSeries operator*(const PSeries& a, const PSeries& b);

    PSeries scaled(const Rat& c) const;
    PSeries scaled(const Poly& c) const;
    // Multiply by s^k.
    PSeries shifted(long k) const;
    // d/ds.
    PSeries derivative() const;
    // d/d(param var), coefficient-wise.
    PSeries param_derivative(int var) const;
    PSeries pow(int n) const;

    // Structural equality of windows and coefficient tables.
    friend bool operator==(const PSeries& a, const PSeries& b) {
        return a.params_ == b.params_ && a.val_ == b.val_ &&
               a.trunc_ == b.trunc_ && a.c_ == b.c_;
    }
    friend bool operator!=(const PSeries& a, const PSeries& b) { return !(a == b); }

    CF eval(CF s, const std::vector<CF>& params) const;

    std::string str(const std::string& var,
                    const std::vector<std::string>& params = {}) const;

  private:
    void insert(long k, const Poly& p);

    int params_;
    long val_;
    long trunc_;
    std::map<long, Poly> c_;

    friend PSeries mul_capped(const PSeries& a, const PSeries& b, long cap);
};

// Product truncated at exponent `cap` (window intersected with (-inf, cap]).
PSeries mul_capped(const PSeries& a, const PSeries& b, long cap);

// Substitute `inner` (valuation >= 1) into `outer` (valuation >= 0).
PSeries ps_compose(const PSeries& outer, const PSeries& inner);

// Compositional inverse of a series with valuation 1 and constant invertible
// leading coefficient; `order` is the result truncation and may be omitted
// when the input has a finite window. The result is back-substituted into
// the input as an internal consistency check.
PSeries ps_revert(const PSeries& a, std::optional<long> order = std::nullopt);

// Multiplicative inverse of a unit series (valuation 0, constant nonzero
// leading coefficient).
PSeries ps_invert_unit(const PSeries& a, std::optional<long> order = std::nullopt);

// Principal m-th root; the valuation must be divisible by m and the leading
// coefficient an exact rational m-th power.
PSeries ps_root(const PSeries& a, int m, std::optional<long> order = std::nullopt);

// Quotient a/b where b has a constant invertible leading coefficient.
PSeries ps_div(const PSeries& a, const PSeries& b,
               std::optional<long> order = std::nullopt);

// One chart of a blowup chain: new coordinate =
// (coords[num_index] - num_center) / (coords[den_index] - den_center),
// where indices 0 and 1 name the trajectory pair (X2, T) and index 2+k names
// the coordinate introduced by chart k.
struct BlowupChart {
    std::string name;
    int num_index = 0;
    Rat num_center;
    int den_index = 1;
    Rat den_center;
};

// Evaluates each chart coordinate along the trajectory (X2(z), T(z)) as a
// series in z and returns its constant term, i.e. the z->0 limit, as a
// polynomial in the auxiliary parameters.
std::vector<Poly> chart_limits(const std::vector<BlowupChart>& chain,
                               const PSeries& x2, const PSeries& t);

} // namespace uvflow

#endif
