#ifndef UVFLOW_GALOIS_HPP
#define UVFLOW_GALOIS_HPP

#include <map>
#include <utility>
#include <vector>

#include "uvflow/jacrep.hpp"
#include "uvflow/uvrep.hpp"

namespace uvflow {

// Element of the m-th cyclotomic field for the orders whose cyclotomic
// polynomial has degree <= 2 (m in {1,2,3,4,6}), stored as c0 + c1*zeta_m
// reduced against the minimal polynomial of zeta_m.
class CycloScalar {
  public:
    CycloScalar() : m_(1) {}
    explicit CycloScalar(int m, Rat c0 = Rat(0), Rat c1 = Rat(0));

    static bool order_supported(int m) {
        return m == 1 || m == 2 || m == 3 || m == 4 || m == 6;
    }
    static CycloScalar zeta_pow(int m, long j);
    static CycloScalar from_rat(int m, const Rat& r) { return CycloScalar(m, r); }

    int order() const { return m_; }
    const Rat& c0() const { return c0_; }
    const Rat& c1() const { return c1_; }
    bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }
    bool is_rational() const { return c1_.is_zero(); }
    Rat rational_value() const;

    CF to_cf() const;

    CycloScalar operator-() const { return CycloScalar(m_, -c0_, -c1_); }
    friend CycloScalar operator+(const CycloScalar& a, const CycloScalar& b);
    friend CycloScalar operator-(const CycloScalar& a, const CycloScalar& b);
    friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b);
    friend bool operator==(const CycloScalar& a, const CycloScalar& b) {
        return a.m_ == b.m_ && a.c0_ == b.c0_ && a.c1_ == b.c1_;
    }
    friend bool operator!=(const CycloScalar& a, const CycloScalar& b) { return !(a == b); }

  private:
    void reduce_square(Rat& out0, Rat& out1) const; // zeta^2 in the basis
    void check_order(const CycloScalar& o) const;

    int m_;
    Rat c0_, c1_;
};

// Laurent expression in (u, gamma) with cyclotomic coefficients, keyed by
// (exponent of U = 1/u, power of gamma).
struct CycloSeries {
    int m = 1;
    std::map<std::pair<long, long>, CycloScalar> t;

    static CycloSeries lift(int m, const PSeries& s);
    // Back to a rational series; fails if an irrational coefficient remains.
    PSeries lower() const;

    void add_term(long upow, long gpow, const CycloScalar& c);
    CycloSeries operator*(const CycloSeries& o) const;
    CycloSeries operator+(const CycloSeries& o) const;
    CycloSeries operator-() const;
    CycloSeries scaled(const CycloScalar& c) const;
    CycloSeries pow(int n) const;
    bool is_zero() const { return t.empty(); }
    CF eval(CF u, CF gamma) const;
    std::string str() const;
};

// The branch action u -> zeta_m^j u together with the induced substitution
// on gamma that keeps both curve coordinates fixed.
struct SigmaAction {
    UVRep rep;
    int m = 1;
    int j = 0;
    bool approximate = false; // true when the order has no exact support here
    CF zeta_f{1.0, 0.0};      // zeta_m^j as a float
    // sigma gamma = gamma_scale * gamma + sum of shift terms c * U^k, with
    // gamma_scale = zeta^(j(N-m)) (exact path).
    CycloScalar gamma_scale;
    std::map<long, CycloScalar> gamma_shift;
    // Float mirrors, usable for any order.
    CF gamma_scale_f{1.0, 0.0};
    std::vector<std::pair<long, CF>> gamma_shift_f;

    // sigma gamma as a series in U with gamma-polynomial coefficients;
    // fails for approximate or irrational actions.
    PSeries gamma_image() const;
    // Numeric (sigma u, sigma gamma) at a point.
    std::pair<CF, CF> apply_point(CF u, CF gamma) const;
};

// Build the action of the j-th power of the branch rotation for `rep`.
// Orders without exact cyclotomic support fall back to float coefficients
// and mark the action approximate.
SigmaAction derive_sigma(const UVRep& rep, int j);

// Exact substitution u -> zeta^j u, gamma -> sigma gamma.
CycloSeries apply_sigma(const SigmaAction& action, const CycloSeries& expr);
// Convenience for rational inputs/outputs; refuses approximate actions and
// truncated inputs whose hidden tail the substitution could pull down.
PSeries apply_sigma(const SigmaAction& action, const PSeries& expr);
LaurentGamma apply_sigma(const SigmaAction& action, const LaurentGamma& expr);

// Exact check that sigma(psi1) = zeta^(-jK) psi1 for the representation's
// formulaic K = L - m. Approximate actions are checked numerically instead
// and the record says so.
VerificationRecord check_equivariance(const ABExpansion& exp, const UVRep& rep,
                                      const SigmaAction& action);

} // namespace uvflow

#endif
