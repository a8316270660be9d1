#ifndef SPECTILE_TILING_HPP
#define SPECTILE_TILING_HPP

#include <optional>
#include <vector>

#include "spectile/group.hpp"

// Tiling decisions by exact cover over translates, verification, and the
// constructive routes: coset unions and the prime reduction that tiles a
// dilated copy inside a subgroup.

namespace spectile {

struct TilingCertificate {
  std::vector<i64> complement;  // sorted, contains 0
};

// S + T covers every group element exactly once.
bool verify_tiling(const WeightedSet& s, const std::vector<i64>& t);

// Exhaustive exact-cover search over the translates of S; an empty result
// is a proof that S does not tile. |S| must divide |G| or the answer is
// immediately empty.
std::optional<TilingCertificate> is_tile(const WeightedSet& s);

// If S is a union of cosets of the order-p subgroup of a cyclic group,
// tile the quotient image and lift; empty when S is not such a union or
// the quotient image does not tile.
std::optional<TilingCertificate> tile_from_coset_union(const WeightedSet& s, i64 p);

// Prime reduction for u | n with u coprime to |S|: when every divisibility
// Phi_{mu} | m_S (gcd(m, u) = 1) forces Phi_m | m_S, the projection of S to
// Z_{n/u} is tiled recursively and the complement is pulled back.
std::optional<TilingCertificate> shi_reduction(const WeightedSet& s, i64 u);

}  // namespace spectile

#endif
