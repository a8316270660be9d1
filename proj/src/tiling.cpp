#include "spectile/tiling.hpp"

#include <algorithm>
#include <stdexcept>

#include "spectile/cyclo.hpp"

namespace spectile {

bool verify_tiling(const WeightedSet& s, const std::vector<i64>& t) {
  if (!s.is_set()) return false;
  const Group& g = s.group();
  std::vector<i64> cover(static_cast<size_t>(g.size()), 0);
  auto sup = s.support();
  for (i64 x : t) {
    if (x < 0 || x >= g.size()) return false;
    for (i64 e : sup) cover[static_cast<size_t>(g.add(e, x))]++;
  }
  for (i64 c : cover)
    if (c != 1) return false;
  return true;
}

namespace {

struct Cover {
  const Group* g;
  std::vector<i64> sup;            // support of S
  std::vector<char> covered;
  std::vector<i64> chosen;
  i64 cells_left;

  bool place(i64 t) {
    for (i64 e : sup)
      if (covered[static_cast<size_t>(g->add(e, t))]) return false;
    for (i64 e : sup) covered[static_cast<size_t>(g->add(e, t))] = 1;
    chosen.push_back(t);
    cells_left -= static_cast<i64>(sup.size());
    return true;
  }
  void unplace(i64 t) {
    for (i64 e : sup) covered[static_cast<size_t>(g->add(e, t))] = 0;
    chosen.pop_back();
    cells_left += static_cast<i64>(sup.size());
  }

  bool placeable(i64 t) const {
    for (i64 e : sup)
      if (covered[static_cast<size_t>(g->add(e, t))]) return false;
    return true;
  }

  // column-minimum branching: cover the cell with the fewest viable
  // translates; ties break toward the smaller cell so certificates are
  // reproducible
  bool solve() {
    if (cells_left == 0) return true;
    i64 best_cell = -1;
    std::vector<i64> best;
    for (i64 c = 0; c < g->size(); c++) {
      if (covered[static_cast<size_t>(c)]) continue;
      std::vector<i64> cands;
      for (i64 e : sup) {
        i64 t = g->sub(c, e);
        if (placeable(t)) {
          cands.push_back(t);
          if (best_cell >= 0 && cands.size() >= best.size()) break;
        }
      }
      if (cands.empty()) return false;
      if (best_cell < 0 || cands.size() < best.size()) {
        best_cell = c;
        best = std::move(cands);
        if (best.size() == 1) break;
      }
    }
    for (i64 t : best) {
      if (!place(t)) continue;
      if (solve()) return true;
      unplace(t);
    }
    return false;
  }
};

}  // namespace

std::optional<TilingCertificate> is_tile(const WeightedSet& s) {
  if (!s.is_set() || s.empty()) throw std::invalid_argument("is_tile: needs a nonempty set");
  const Group& g = s.group();
  if (g.size() % s.total() != 0) return std::nullopt;
  Cover cov;
  cov.g = &g;
  cov.sup = s.support();
  cov.covered.assign(static_cast<size_t>(g.size()), 0);
  cov.cells_left = g.size();
  // normalize: the complement may always be translated to contain 0, which
  // pins the translate covering the base point of S
  if (!cov.place(0)) return std::nullopt;
  if (!cov.solve()) return std::nullopt;
  std::sort(cov.chosen.begin(), cov.chosen.end());
  return TilingCertificate{cov.chosen};
}

std::optional<TilingCertificate> tile_from_coset_union(const WeightedSet& s, i64 p) {
  if (!s.is_set() || s.empty()) throw std::invalid_argument("tile_from_coset_union: needs a nonempty set");
  const Group& g = s.group();
  if (!g.cyclic()) throw std::invalid_argument("tile_from_coset_union: cyclic groups only");
  i64 n = g.order();
  if (!is_prime(p) || n % p != 0) throw std::invalid_argument("tile_from_coset_union: p must be a prime divisor of |G|");
  i64 m = n / p;  // quotient order; cosets of the order-p subgroup are the residues mod m
  // S must be a union of cosets of {0, m, 2m, ...}
  for (i64 x = 0; x < m; x++) {
    i64 w0 = s.weight(x);
    for (i64 j = 1; j < p; j++)
      if (s.weight(x + j * m) != w0) return std::nullopt;
  }
  std::vector<i64> quot;
  for (i64 x = 0; x < m; x++)
    if (s.weight(x) != 0) quot.push_back(x);
  WeightedSet b = WeightedSet::from_indices(make_group({m}), quot);
  auto sub = is_tile(b);
  if (!sub) return std::nullopt;
  // any integer lift of the quotient complement works
  TilingCertificate cert{sub->complement};
  if (!verify_tiling(s, cert.complement))
    throw std::logic_error("tile_from_coset_union: lifted complement failed verification");
  return cert;
}

std::optional<TilingCertificate> shi_reduction(const WeightedSet& s, i64 u) {
  if (!s.is_set() || s.empty()) throw std::invalid_argument("shi_reduction: needs a nonempty set");
  const Group& g = s.group();
  if (!g.cyclic()) throw std::invalid_argument("shi_reduction: cyclic groups only");
  i64 n = g.order();
  if (!is_prime(u) || n % u != 0) throw std::invalid_argument("shi_reduction: u must be a prime divisor of n");
  if (s.total() % u == 0) throw std::invalid_argument("shi_reduction: u must not divide |S|");
  MaskPoly ms = mask_poly(s);
  for (i64 m : divisors_of(n)) {
    if (gcd_i64(m, u) != 1) continue;
    if (n % (m * u) != 0) continue;
    if (divides(ms, m * u) && !divides(ms, m)) return std::nullopt;  // hypothesis fails
  }
  // uS must be an honest set, equivalently the projection mod n/u is injective
  i64 q = n / u;
  WeightedSet bar = project(s, q);
  if (!bar.is_set()) return std::nullopt;
  auto sub = is_tile(bar);
  if (!sub) return std::nullopt;
  // complement = integer lift of the quotient complement plus the order-u subgroup
  std::vector<i64> t;
  for (i64 tb : sub->complement)
    for (i64 j = 0; j < u; j++) t.push_back(tb + j * q);
  std::sort(t.begin(), t.end());
  if (!verify_tiling(s, t))
    throw std::logic_error("shi_reduction: constructed complement failed verification");
  return TilingCertificate{t};
}

}  // namespace spectile
