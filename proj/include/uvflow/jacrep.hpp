#ifndef UVFLOW_JACREP_HPP
#define UVFLOW_JACREP_HPP

#include <optional>
#include <string>
#include <vector>

#include "uvflow/uvrep.hpp"

namespace uvflow {

// A Laurent series in u with polynomial-in-gamma coefficients, stored in the
// bookkeeping variable U = 1/u, optionally divided by a unit series. Entries
// like r1 keep their denominator symbolic so identity checks can clear it
// instead of dividing.
struct LaurentGamma {
    PSeries num{1};
    std::optional<PSeries> den;

    CF eval(CF u, CF gamma) const;
    std::string str() const;
};

// Exponents are powers of U = 1/u; prints the series in powers of u.
std::string str_in_u(const PSeries& s);

// Outcome of a symbolic identity check. Failure is data, not an error.
struct VerificationRecord {
    std::string identity;
    enum class Status { Pass, Fail, Inapplicable } status = Status::Fail;
    std::string residual;
    std::vector<std::string> notes;
    bool approximate = false;

    bool passed() const { return status == Status::Pass; }
};

std::string status_name(VerificationRecord::Status s);

// +1 when the representation keeps ambient order, -1 when it swaps the two
// coordinates; determinants in role order pick up this factor.
int role_parity(const UVRep& rep);

// Compose an ambient polynomial onto the curve as a series in U = 1/u.
PSeries poly_on_curve(const UVRep& rep, const Poly& p);

// Derivative with respect to u of a series stored in U = 1/u.
PSeries derivative_in_u(const PSeries& s);

// gamma-derivatives of the image expansion: chi1 = da/dgamma, psi1 = db/dgamma.
std::pair<PSeries, PSeries> chi_psi(const ABExpansion& exp);

// The lower-left Jacobian entry in the u-gamma representation:
//   r3 = (db/du - psi1 u^(N-m) dC2/du) / (dC1/du),
// with both curve derivatives taken with their gamma terms.
PSeries r3_of(const ABExpansion& exp, const UVRep& rep);

// The full Jacobian of the map at C(gamma,u) expressed through chi1, psi1
// and r3, with rows indexed by image components and columns by the role
// coordinates. r1 carries psi1 as an uncleared denominator.
struct UVJacobian {
    LaurentGamma r1;
    PSeries r2{1};
    PSeries r3{1};
    PSeries r4{1};
    PSeries jdet_role{1}; // det(J(f)) composed onto the curve, role parity applied
};

UVJacobian uv_jacobian(const ABExpansion& exp, const UVRep& rep, const Poly& jdet);

// Exact check of psi1 da/du - chi1 db/du = |J(f)| on the curve times
// sign * m * u^(2m-N-1). The Keller case specializes the right side to
// m u^(2m-N-1) with identity roles.
VerificationRecord verify_identity_hh(const ABExpansion& exp, const UVRep& rep,
                                      const Poly& jdet);

// Exact check of the lowest-order coefficient relation
//   da0/dgamma * b_k - db0/dgamma * a_k = m/k  (when k = N-2m)
// or = 0 (when k < N-2m); requires the map to be Keller, otherwise reports
// the bracket value and is inapplicable.
VerificationRecord verify_theorem_k(const ABExpansion& exp, const UVRep& rep,
                                    const Poly& jdet);

// Symbolic branch dynamics for the inverse system:
//   du/dr     = (1/m) u^(L-m+1) psi1
//   dgamma/dr = -(1/m) u^(L-m+1) db/du,
// the sign of the gamma rate pinned by the numerically validated runs.
struct FlowRates {
    LaurentGamma du_dr;
    LaurentGamma dgamma_dr;
};

FlowRates flow_rates(const ABExpansion& exp, const UVRep& rep);

} // namespace uvflow

#endif
