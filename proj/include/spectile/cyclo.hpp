#ifndef SPECTILE_CYCLO_HPP
#define SPECTILE_CYCLO_HPP

#include <optional>
#include <set>
#include <utility>

#include "spectile/group.hpp"
#include "spectile/intpoly.hpp"

// Mask polynomials of weighted sets over cyclic groups, exact cyclotomic
// polynomials, divisibility over Z and over F_p, the mod-p size constraint,
// and the two tiling conditions on prime-power cyclotomic support.

namespace spectile {

struct MaskPoly {
  i64 n = 0;          // order of the ambient cyclic group
  IntPoly poly;       // representative of degree < n in Z[x]/(x^n - 1)
};

MaskPoly mask_poly(const WeightedSet& s);

// Exact integer coefficients of Phi_d; cached across calls (insert-only,
// safe for concurrent use).
const IntPoly& cyclotomic(i64 d);
IntPoly cyclotomic_uncached(i64 d);

// Phi_d | m_S over Z; requires d | n.
bool divides(const MaskPoly& m, i64 d);

// Phi_d mod p | m_S mod p in F_p[x], on the degree-lifted representative.
bool divides_mod_p(const MaskPoly& m, i64 d, i64 p);

// With n = p^a * m, p prime not dividing m: if Phi_d | m_S in F_p[x] for
// every d | m, return (k, l) with |S| = k*m + l*p, k the common residue of
// the projection multiplicities mod p, both nonnegative. Empty when the
// divisibility hypothesis fails.
std::optional<std::pair<i64, i64>> mod_p_size_constraint(const WeightedSet& s, i64 p, i64 m);

// Self-tests of the cyclotomic engine: both recompute exactly and compare.
// Phi_{mp}(x) * Phi_m(x) = Phi_m(x^p) for p prime, p not dividing m.
bool cyclo_identity_mp(i64 m, i64 p);
// Phi_{p^k m}(x) = Phi_{pm}(x^{p^{k-1}}) for k >= 1.
bool cyclo_identity_mpk(i64 m, i64 p, i64 k);

// { prime powers s | n : Phi_s | m_S } for a set S over Z_n.
std::set<i64> prime_power_support(const WeightedSet& s);

// |S| equals the product of Phi_s(1) over the prime-power support.
bool check_T1(const WeightedSet& s);
// For every subset of the support with pairwise distinct prime bases,
// Phi of the product divides m_S.
bool check_T2(const WeightedSet& s);

}  // namespace spectile

#endif
