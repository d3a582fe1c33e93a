#ifndef UVFLOW_UVREP_HPP
#define UVFLOW_UVREP_HPP

#include <array>
#include <optional>
#include <vector>

#include "uvflow/poly.hpp"
#include "uvflow/pseries.hpp"

namespace uvflow {

// Data of the curve C(gamma,u) with
//   x_{role[0]} = sign * u^m
//   x_{role[1]} = h_0 u^m + h_1 u^(m-1) + ... + h_(N-1) u^(1+m-N) + gamma u^(m-N).
// The image of the curve under a planar map tends to a finiteness-variety
// component as u -> infinity.
struct UVRep {
    int m = 1;
    int N = 1;
    std::vector<Rat> h;          // exactly N entries
    std::array<int, 2> role{1, 2}; // ambient index of the u^m coordinate, then the other
    int sign = 1;                // leading sign of the u^m coordinate

    int L() const { return N - m; }
    void validate() const;
};

// Laurent polynomials (in the bookkeeping variable U = 1/u) for the two
// curve coordinates, in ambient order. Exponent k of U means u^(-k).
std::array<PSeries, 2> curve_series_ambient(const UVRep& rep);
// Same, in role order: [0] the u^m coordinate, [1] the gamma-carrying one.
std::array<PSeries, 2> curve_series_role(const UVRep& rep);

// Numerical point of the curve.
std::vector<CF> curve_eval(const UVRep& rep, CF gamma, CF u);

// The image expansion f(C(gamma,u)) = [sum a_i(gamma) u^-i, sum b_i u^-i];
// `a` is the first map component, `b` the second.
struct ABExpansion {
    std::vector<Poly> a; // index i holds a_i(gamma), arity 1
    std::vector<Poly> b;
    int max_order = 0;   // highest index carrying a coefficient

    Poly a_at(int i) const { return i < static_cast<int>(a.size()) ? a[i] : Poly(1); }
    Poly b_at(int i) const { return i < static_cast<int>(b.size()) ? b[i] : Poly(1); }
    // The expansions as series in U = 1/u.
    PSeries a_series() const;
    PSeries b_series() const;
};

// Exact Laurent expansion of both components of f(C(gamma,u)) in powers of
// 1/u. Fails with NonConvergent if a strictly positive power of u survives,
// i.e. the representation does not tend to a finite limit.
ABExpansion expand_image(const UVRep& rep, const PolyMap& f, int max_order);

// Order-zero coefficients: the parametrization gamma -> (a0, b0) of the
// finiteness-variety component. `degenerate` marks the corner case of both
// coordinates constant (the component would collapse to a point).
struct FVComponent {
    Poly a0;
    Poly b0;
    bool degenerate = false;
};

FVComponent fv_component(const ABExpansion& exp);

// The representation indices: L = N - m, K = L - m, and k the smallest
// positive index where a_k or b_k is nonzero.
struct IndexRecord {
    int m = 0;
    int N = 0;
    int L = 0;
    int K = 0;
    int k = 0;
};

IndexRecord indices(const UVRep& rep, const ABExpansion& exp);

} // namespace uvflow

#endif
