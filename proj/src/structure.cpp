#include "spectile/structure.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "spectile/cyclo.hpp"

namespace spectile {

namespace {

void require_squarefree_product(const Group& g) {
  std::set<i64> seen;
  for (i64 n : g.orders()) {
    if (!is_prime(n)) throw std::invalid_argument("cube rule: every factor must have prime order");
    if (!seen.insert(n).second) throw std::invalid_argument("cube rule: factor primes must be distinct");
  }
  if (g.orders().size() > 3) throw std::invalid_argument("cube rule: at most three prime factors supported");
}

}  // namespace

bool cube_rule_holds(const WeightedSet& w, const Cube& c) {
  const Group& g = w.group();
  require_squarefree_product(g);
  if (c.sides.size() != g.orders().size())
    throw std::invalid_argument("cube_rule_holds: cube dimension mismatch");
  size_t dim = c.sides.size();
  for (size_t i = 0; i < dim; i++)
    for (int j = 0; j < 2; j++)
      if (c.sides[i][static_cast<size_t>(j)] < 0 || c.sides[i][static_cast<size_t>(j)] >= g.orders()[i])
        throw std::invalid_argument("cube_rule_holds: vertex coordinate out of range");
  i64 sum = 0;
  std::vector<i64> coords(dim);
  for (size_t mask = 0; mask < (size_t{1} << dim); mask++) {
    int hd = __builtin_popcountll(mask);
    for (size_t i = 0; i < dim; i++) coords[i] = c.sides[i][(mask >> i) & 1];
    i64 v = w.weight(g.index_of(coords));
    sum += (hd % 2 == 0) ? v : -v;
  }
  return sum == 0;
}

bool all_cubes_hold(const WeightedSet& w) {
  const Group& g = w.group();
  require_squarefree_product(g);
  size_t dim = g.orders().size();
  // enumerate one 2-subset per factor
  std::vector<std::vector<std::array<i64, 2>>> choices(dim);
  for (size_t i = 0; i < dim; i++)
    for (i64 a = 0; a < g.orders()[i]; a++)
      for (i64 b = a + 1; b < g.orders()[i]; b++) choices[i].push_back({a, b});
  std::vector<size_t> pick(dim, 0);
  while (true) {
    Cube c;
    c.sides.resize(dim);
    for (size_t i = 0; i < dim; i++) c.sides[i] = choices[i][pick[i]];
    if (!cube_rule_holds(w, c)) return false;
    size_t i = 0;
    while (i < dim && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == dim) break;
  }
  return true;
}

namespace {

// Solve A x = b over the integers via Smith normal form (sizes here are
// tiny, entries stay far from overflow). Returns a particular solution and
// a kernel basis.
struct IntSolve {
  bool solvable = false;
  std::vector<i64> x;
  std::vector<std::vector<i64>> kernel;
};

IntSolve solve_integer_system(std::vector<std::vector<i64>> a, std::vector<i64> b) {
  size_t m = a.size(), k = m ? a[0].size() : 0;
  // D = U A V; U applied to b on the fly, V tracked to recover x
  std::vector<std::vector<i64>> v(k, std::vector<i64>(k, 0));
  for (size_t i = 0; i < k; i++) v[i][i] = 1;

  size_t rank = 0;
  for (size_t piv = 0; piv < std::min(m, k); piv++) {
    // find nonzero pivot in the remaining block
    size_t pi = piv, pj = piv;
    bool found = false;
    for (size_t i = piv; i < m && !found; i++)
      for (size_t j = piv; j < k && !found; j++)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    std::swap(a[piv], a[pi]);
    std::swap(b[piv], b[pi]);
    for (size_t i = 0; i < m; i++) std::swap(a[i][piv], a[i][pj]);
    std::swap(v[piv], v[pj]);
    // clear the pivot row and column by gcd steps
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = piv + 1; i < m; i++) {
        while (a[i][piv] != 0) {
          i64 q = a[piv][piv] / a[i][piv];
          for (size_t j = 0; j < k; j++) a[piv][j] -= q * a[i][j];
          b[piv] -= q * b[i];
          std::swap(a[piv], a[i]);
          std::swap(b[piv], b[i]);
        }
      }
      for (size_t j = piv + 1; j < k; j++) {
        while (a[piv][j] != 0) {
          i64 q = a[piv][piv] / a[piv][j];
          for (size_t i = 0; i < m; i++) a[i][piv] -= q * a[i][j];
          for (size_t i = 0; i < k; i++) v[piv][i] -= q * v[j][i];
          for (size_t i = 0; i < m; i++) std::swap(a[i][piv], a[i][j]);
          std::swap(v[piv], v[j]);
          dirty = true;
        }
      }
    }
    if (a[piv][piv] < 0) {
      for (size_t i = 0; i < m; i++) a[i][piv] = -a[i][piv];
      for (size_t i = 0; i < k; i++) v[piv][i] = -v[piv][i];
    }
    rank = piv + 1;
  }
  // system D y = b with D diagonal of length rank
  IntSolve out;
  std::vector<i64> y(k, 0);
  for (size_t i = 0; i < m; i++) {
    i64 d = (i < rank) ? a[i][i] : 0;
    if (d == 0) {
      if (b[i] != 0) return out;  // inconsistent
    } else {
      if (b[i] % d != 0) return out;  // no integral solution
      y[i] = b[i] / d;
    }
  }
  out.solvable = true;
  out.x.assign(k, 0);
  for (size_t j = 0; j < k; j++)
    for (size_t i = 0; i < k; i++) out.x[i] += v[j][i] * y[j];
  for (size_t j = rank; j < k; j++) out.kernel.push_back(v[j]);
  return out;
}

}  // namespace

std::optional<CosetDecomposition> coset_sum_decomposition(const WeightedSet& w) {
  const Group& g = w.group();
  require_squarefree_product(g);
  size_t dim = g.orders().size();
  // variables: for direction i, one per assignment of the other coordinates
  std::vector<i64> var_count(dim), var_base(dim);
  i64 total_vars = 0;
  for (size_t i = 0; i < dim; i++) {
    var_base[i] = total_vars;
    var_count[i] = g.size() / g.orders()[i];
    total_vars += var_count[i];
  }
  auto var_of = [&](size_t dir, const std::vector<i64>& coords) {
    i64 idx = 0;
    for (size_t j = 0; j < dim; j++) {
      if (j == dir) continue;
      idx = idx * g.orders()[j] + coords[j];
    }
    return var_base[dir] + idx;
  };
  std::vector<std::vector<i64>> a(static_cast<size_t>(g.size()),
                                  std::vector<i64>(static_cast<size_t>(total_vars), 0));
  std::vector<i64> b(static_cast<size_t>(g.size()));
  for (i64 x = 0; x < g.size(); x++) {
    auto coords = g.coords_of(x);
    for (size_t i = 0; i < dim; i++) a[static_cast<size_t>(x)][static_cast<size_t>(var_of(i, coords))] = 1;
    b[static_cast<size_t>(x)] = w.weight(x);
  }
  IntSolve sol = solve_integer_system(a, b);
  if (!sol.solvable) return std::nullopt;
  // canonicalize: Hermite-style reduction of the particular solution by the
  // kernel basis, minimizing coefficients lexicographically
  for (auto& kv : sol.kernel) {
    size_t lead = 0;
    while (lead < kv.size() && kv[lead] == 0) lead++;
    if (lead == kv.size()) continue;
    if (kv[lead] < 0)
      for (auto& c : kv) c = -c;
    i64 l = kv[lead];
    i64 q = sol.x[lead] >= 0 ? sol.x[lead] / l : -((-sol.x[lead] + l - 1) / l);
    for (size_t i = 0; i < kv.size(); i++) sol.x[i] -= q * kv[i];
  }
  CosetDecomposition d;
  d.coeff.resize(dim);
  for (size_t i = 0; i < dim; i++)
    d.coeff[i].assign(sol.x.begin() + var_base[i], sol.x.begin() + var_base[i] + var_count[i]);
  // paranoia: the reconstruction must match
  if (!(reconstruct_from_decomposition(g, d) == w))
    throw std::logic_error("coset_sum_decomposition: reconstruction mismatch");
  return d;
}

WeightedSet reconstruct_from_decomposition(const Group& g, const CosetDecomposition& d) {
  WeightedSet out(g);
  size_t dim = g.orders().size();
  for (i64 x = 0; x < g.size(); x++) {
    auto coords = g.coords_of(x);
    i64 val = 0;
    for (size_t i = 0; i < dim; i++) {
      i64 idx = 0;
      for (size_t j = 0; j < dim; j++) {
        if (j == i) continue;
        idx = idx * g.orders()[j] + coords[j];
      }
      val += d.coeff[i][static_cast<size_t>(idx)];
    }
    out.set_weight(x, val);
  }
  return out;
}

std::optional<std::pair<i64, i64>> find_pair_coprime_diff(const WeightedSet& s, i64 p, i64 q) {
  const Group& g = s.group();
  if (!g.cyclic()) throw std::invalid_argument("find_pair_coprime_diff: cyclic groups only");
  i64 n = g.order();
  if (!is_prime(p) || !is_prime(q) || p == q || n % p != 0 || n % q != 0)
    throw std::invalid_argument("find_pair_coprime_diff: p, q must be distinct prime divisors of n");
  if (!s.is_set() || s.weight(0) != 1)
    throw std::invalid_argument("find_pair_coprime_diff: S must be a set containing 0");
  auto sup = s.support();
  for (size_t i = 0; i < sup.size(); i++)
    for (size_t j = i + 1; j < sup.size(); j++) {
      i64 d = sup[j] - sup[i];
      if (d % p != 0 && d % q != 0) return std::make_pair(sup[i], sup[j]);
    }
  return std::nullopt;
}

LabaMarshallReport laba_marshall_check(const WeightedSet& s, i64 r, i64 m) {
  const Group& g = s.group();
  if (!g.cyclic()) throw std::invalid_argument("laba_marshall_check: cyclic groups only");
  i64 n = g.order();
  if (!is_prime(r) || n % r != 0) throw std::invalid_argument("laba_marshall_check: r must be a prime divisor of n");
  if (m < 1 || n % m != 0 || gcd_i64(m, r) != 1)
    throw std::invalid_argument("laba_marshall_check: m must divide n and be coprime to r");
  LabaMarshallReport rep;
  rep.r = r;
  rep.m = m;
  rep.set_size = s.total();
  MaskPoly ms = mask_poly(s);
  if (!(divides(ms, m * r) && !divides(ms, m))) {
    rep.status = LemmaStatus::HypothesisFail;
    return rep;
  }
  rep.size_ok = rep.set_size >= r;
  WeightedSet bar = project(s, r);
  rep.cosets_ok = true;
  for (i64 y = 0; y < r; y++)
    if (bar.weight(y) == 0) rep.cosets_ok = false;
  rep.status = (rep.size_ok && rep.cosets_ok) ? LemmaStatus::Holds : LemmaStatus::Violation;
  return rep;
}

PadicDigitReport padic_digit_structure(const WeightedSet& s) {
  const Group& g = s.group();
  if (!g.cyclic()) throw std::invalid_argument("padic_digit_structure: cyclic groups only");
  if (!s.is_set()) throw std::invalid_argument("padic_digit_structure: needs a set");
  i64 size = g.order();
  auto ps = prime_factors_of(size);
  if (ps.size() != 1) throw std::invalid_argument("padic_digit_structure: group must be Z_{p^n}");
  i64 p = ps[0];
  i64 n = 0;
  for (i64 t = size; t > 1; t /= p) n++;

  PadicDigitReport rep;
  rep.p = p;
  rep.n = n;
  auto sup = s.support();
  std::set<i64> orders;
  for (size_t i = 0; i < sup.size(); i++)
    for (size_t j = 0; j < sup.size(); j++)
      if (i != j) orders.insert(element_order(g, g.sub(sup[i], sup[j])));
  rep.distinct_orders = static_cast<i64>(orders.size());
  rep.bound = 1;
  for (i64 t = 0; t < rep.distinct_orders; t++) rep.bound *= p;
  rep.bound_holds = static_cast<i64>(sup.size()) <= rep.bound;

  if (static_cast<i64>(sup.size()) == rep.bound) {
    // an order p^i difference first differs at digit n - i
    std::vector<i64> digits;
    for (i64 ord : orders) {
      i64 i = 0;
      for (i64 t = ord; t > 1; t /= p) i++;
      digits.push_back(n - i);
    }
    std::sort(digits.begin(), digits.end());
    // all elements must agree at every digit outside the free positions
    std::vector<char> freed(static_cast<size_t>(n), 0);
    for (i64 d : digits) freed[static_cast<size_t>(d)] = 1;
    bool ok = true;
    for (i64 pos = 0; pos < n && ok; pos++) {
      if (freed[static_cast<size_t>(pos)]) continue;
      i64 pw = 1;
      for (i64 t = 0; t < pos; t++) pw *= p;
      i64 ref = sup.empty() ? 0 : (sup[0] / pw) % p;
      for (i64 x : sup)
        if ((x / pw) % p != ref) ok = false;
    }
    rep.free_digits = digits;
    rep.digits_ok = ok;
  }
  return rep;
}

}  // namespace spectile
