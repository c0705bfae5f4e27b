#pragma once
// Independent brute-force ground truth: projective point counts of the
// quartic, Hasse-Weil verdicts, point counts of the quotient elliptic curves,
// and the count identities that validate the 2-isogeny and Jacobian-splitting
// claims.

#include <cstdint>

#include "ciani/curve.hpp"
#include "ciani/fields.hpp"

namespace ciani {

struct PlaneCount {
    uint64_t q;
    uint64_t count;
    double elapsed_seconds;
};

enum class HWVerdict { Maximal, Minimal, Neither };
const char* to_string(HWVerdict v);

// Largest field size accepted for plane counting (q^2 + q + 1 evaluations).
inline constexpr uint64_t kPlaneCountCeiling = 6561;

// Exact count of projective solutions of the quartic over `field`, by
// enumerating the affine charts (1:y:z), (0:1:z), (0:0:1). The curve's
// coefficients must embed into `field`. Parallelizes over the first affine
// coordinate; the result is independent of the worker count (workers <= 0
// picks the hardware concurrency).
PlaneCount count_ciani_points(const CianiCurve& curve, const FieldCtxPtr& field, int workers = 1);

// Maximal/minimal/neither for a genus-g count over F_q; q must be a square.
HWVerdict hw_verdict(uint64_t count, uint64_t q, unsigned genus);

// #E_i(F_q) for the i-th quotient elliptic curve (index 0, 1, 2), counted on
// its rational model v^2 = lead*u^4 + 2*mid*u^2 + last over the curve's own
// field: q + 1 + chi(lead) + sum_u chi(f(u)).
uint64_t count_quotient_curve(const CianiCurve& curve, int index);

// Count-level validation of the isogeny structure over the curve's field:
//  - Jacobian splitting: #C = #E_1 + #E_2 + #E_3 - 2(q + 1), always checked;
//  - 2-isogenous twists:  #E_i = #E'_i, checked when Delta is rational (the
//    twists are only defined over the field then; skipped otherwise).
bool verify_isogeny_counts(const CianiCurve& curve);

}  // namespace ciani
