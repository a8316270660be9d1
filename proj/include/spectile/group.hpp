#ifndef SPECTILE_GROUP_HPP
#define SPECTILE_GROUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Finite abelian groups as products of cyclic factors. Elements are handled
// as flat indices in [0, size): the mixed-radix encoding of the coordinate
// vector, which makes index order the lexicographic (canonical) order.

namespace spectile {

using i64 = std::int64_t;

class Group {
 public:
  Group() = default;
  explicit Group(std::vector<i64> orders);

  const std::vector<i64>& orders() const { return orders_; }
  i64 size() const { return size_; }
  i64 exponent() const { return exponent_; }
  bool cyclic() const { return orders_.size() == 1; }
  // the modulus n for a single-factor group Z_n
  i64 order() const;

  i64 index_of(const std::vector<i64>& coords) const;
  std::vector<i64> coords_of(i64 index) const;

  i64 add(i64 a, i64 b) const;
  i64 neg(i64 a) const;
  i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }
  i64 scale(i64 k, i64 a) const;

  bool operator==(const Group& o) const { return orders_ == o.orders_; }
  bool operator!=(const Group& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  std::vector<i64> orders_;
  i64 size_ = 0;
  i64 exponent_ = 0;
};

Group make_group(const std::vector<i64>& orders);

i64 element_order(const Group& g, i64 x);

class WeightedSet {
 public:
  WeightedSet() = default;
  explicit WeightedSet(Group g) : g_(std::move(g)), w_(static_cast<size_t>(g_.size()), 0) {}
  static WeightedSet from_indices(const Group& g, const std::vector<i64>& indices);

  const Group& group() const { return g_; }
  i64 weight(i64 index) const { return w_[static_cast<size_t>(index)]; }
  void set_weight(i64 index, i64 w) { w_[static_cast<size_t>(index)] = w; }
  void add_weight(i64 index, i64 w) { w_[static_cast<size_t>(index)] += w; }

  i64 total() const;
  bool is_set() const;  // all weights in {0,1}
  bool empty() const { return total() == 0; }
  // support in canonical (index) order
  std::vector<i64> support() const;
  i64 support_size() const;

  WeightedSet translate(i64 g) const;
  // multiply every element by u; for sets this is honest dilation only when
  // gcd(u, exponent) = 1, but the pushforward is defined for any u
  WeightedSet dilate(i64 u) const;

  bool operator==(const WeightedSet& o) const { return g_ == o.g_ && w_ == o.w_; }

 private:
  Group g_;
  std::vector<i64> w_;
};

struct Subgroup {
  std::vector<i64> generators;
  std::vector<i64> members;  // sorted flat indices, always contains 0
  i64 index = 0;             // |G| / |H|

  i64 size() const { return static_cast<i64>(members.size()); }
  bool contains(i64 x) const;
};

Subgroup generated_subgroup(const Group& g, const std::vector<i64>& gens);

// The unique subgroup of order m of a cyclic group (m | n).
Subgroup cyclic_subgroup_of_order(const Group& g, i64 m);

// Projection of a weighted set on cyclic Z_n along the quotient map to Z_m
// (m | n); the result is a multiset whose total equals the input total.
WeightedSet project(const WeightedSet& w, i64 m);

// Pushforward to the product group Z_{p_1} x ... x Z_{p_k} for distinct
// primes p_i whose product divides n; coordinate i is reduction mod p_i.
WeightedSet project_to_prime_factors(const WeightedSet& w, const std::vector<i64>& primes);

// Subgroup generated by the differences S - s0; returned only when proper.
std::optional<Subgroup> contained_in_proper_subgroup(const WeightedSet& s);

// CRT identification between Z_n and a product of pairwise coprime factors
// with the same total size (in either direction).
WeightedSet crt_isomorphism(const WeightedSet& w, const Group& target);

i64 gcd_i64(i64 a, i64 b);
i64 lcm_i64(i64 a, i64 b);
std::vector<i64> divisors_of(i64 n);
std::vector<i64> prime_factors_of(i64 n);

}  // namespace spectile

#endif
