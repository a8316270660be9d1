#ifndef SPECTILE_STRUCTURE_HPP
#define SPECTILE_STRUCTURE_HPP

#include <array>
#include <optional>
#include <vector>

#include "spectile/group.hpp"

// The cube rule on squarefree product groups, integer coset-sum
// decompositions, the coprime-difference pair, the large-prime coset
// covering lemma, and p-adic digit structure of subsets of Z_{p^n}.

namespace spectile {

struct Cube {
  // one two-element subset of Z_{p_i} per factor; the base point is the
  // vertex made of the first entries
  std::vector<std::array<i64, 2>> sides;
};

// Alternating vertex sum of the weights over the cube is zero.
bool cube_rule_holds(const WeightedSet& w, const Cube& c);

// All cubes of the (squarefree, <= 3 prime factors) product group.
bool all_cubes_hold(const WeightedSet& w);

struct CosetDecomposition {
  // coeff[i][j]: coefficient of the j-th coset of the i-th factor subgroup,
  // where j flattens the coordinates of the other factors in index order
  std::vector<std::vector<i64>> coeff;
};

// Integer coefficients on factor-direction coset indicators summing to W;
// empty when no integral solution exists.
std::optional<CosetDecomposition> coset_sum_decomposition(const WeightedSet& w);

// Rebuild the weighted set described by a decomposition (for checking).
WeightedSet reconstruct_from_decomposition(const Group& g, const CosetDecomposition& d);

// First pair (s1, s2) in canonical order with p and q both not dividing
// s1 - s2; cyclic groups, p and q distinct prime divisors of n, 0 in S.
std::optional<std::pair<i64, i64>> find_pair_coprime_diff(const WeightedSet& s, i64 p, i64 q);

enum class LemmaStatus { HypothesisFail, Holds, Violation };

struct LabaMarshallReport {
  LemmaStatus status = LemmaStatus::HypothesisFail;
  i64 r = 0, m = 0;
  i64 set_size = 0;
  bool size_ok = false;    // |S| >= r
  bool cosets_ok = false;  // every coset of the index-r subgroup meets S
};

// Hypotheses: Phi_{mr} | m_S and Phi_m does not divide m_S (gcd(m, r) = 1).
// Conclusion checked: |S| >= r and the projection of S to Z_r is onto.
LabaMarshallReport laba_marshall_check(const WeightedSet& s, i64 r, i64 m);

struct PadicDigitReport {
  i64 p = 0, n = 0;
  i64 distinct_orders = 0;           // k
  i64 bound = 0;                     // p^k
  bool bound_holds = false;          // |S| <= p^k
  std::optional<std::vector<i64>> free_digits;  // A_S when |S| = p^k
  bool digits_ok = false;            // elements agree outside A_S
};

PadicDigitReport padic_digit_structure(const WeightedSet& s);

}  // namespace spectile

#endif
