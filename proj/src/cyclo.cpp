#include "spectile/cyclo.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace spectile {

MaskPoly mask_poly(const WeightedSet& s) {
  const Group& g = s.group();
  if (!g.cyclic())
    throw std::invalid_argument("mask_poly: group must be cyclic (use the character pairing for products)");
  i64 n = g.order();
  std::vector<i64> c(static_cast<size_t>(n), 0);
  for (i64 i = 0; i < n; i++) c[static_cast<size_t>(i)] = s.weight(i);
  MaskPoly m;
  m.n = n;
  m.poly = IntPoly(std::move(c));
  return m;
}

IntPoly cyclotomic_uncached(i64 d) {
  if (d < 1) throw std::invalid_argument("cyclotomic: d must be >= 1");
  if (d == 1) return IntPoly({-1, 1});
  std::vector<i64> primes = prime_factors_of(d);
  int w = static_cast<int>(primes.size());
  // Phi_d = prod over squarefree e | rad(d) of (x^{d/e} - 1)^{mu(e)};
  // all multiplications first, then the exact divisions.
  std::vector<i64> acc{1};
  for (int s = 0; s < (1 << w); s++) {
    if (__builtin_parity(static_cast<unsigned>(s)) != 0) continue;
    i64 e = 1;
    for (int b = 0; b < w; b++)
      if (s >> b & 1) e *= primes[static_cast<size_t>(b)];
    poly_mul_xk_minus_1(acc, d / e);
  }
  for (int s = 0; s < (1 << w); s++) {
    if (__builtin_parity(static_cast<unsigned>(s)) != 1) continue;
    i64 e = 1;
    for (int b = 0; b < w; b++)
      if (s >> b & 1) e *= primes[static_cast<size_t>(b)];
    poly_div_xk_minus_1(acc, d / e);
  }
  return IntPoly(std::move(acc));
}

const IntPoly& cyclotomic(i64 d) {
  static std::mutex mu;
  static std::map<i64, std::unique_ptr<IntPoly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it == cache.end())
    it = cache.emplace(d, std::make_unique<IntPoly>(cyclotomic_uncached(d))).first;
  return *it->second;
}

bool divides(const MaskPoly& m, i64 d) {
  if (d < 1 || m.n % d != 0) throw std::invalid_argument("divides: d must divide n");
  if (m.poly.is_zero()) return true;
  return poly_divides_monic(cyclotomic(d), m.poly);
}

bool divides_mod_p(const MaskPoly& m, i64 d, i64 p) {
  if (!is_prime(p)) throw std::invalid_argument("divides_mod_p: p must be prime");
  if (d < 1) throw std::invalid_argument("divides_mod_p: d must be >= 1");
  IntPoly dm = poly_mod_p(cyclotomic(d), p);
  if (dm.is_zero()) return true;
  return poly_divides_mod_p(dm, m.poly, p);
}

std::optional<std::pair<i64, i64>> mod_p_size_constraint(const WeightedSet& s, i64 p, i64 m) {
  const Group& g = s.group();
  i64 n = g.order();
  if (!is_prime(p)) throw std::invalid_argument("mod_p_size_constraint: p must be prime");
  if (m < 1 || m % p == 0) throw std::invalid_argument("mod_p_size_constraint: need p coprime to m");
  i64 cof = n;
  while (cof % p == 0) cof /= p;
  if (cof != m) throw std::invalid_argument("mod_p_size_constraint: n must equal p^a * m");
  MaskPoly ms = mask_poly(s);
  for (i64 d : divisors_of(m))
    if (!divides_mod_p(ms, d, p)) return std::nullopt;
  // all projection multiplicities share one residue class mod p
  WeightedSet bar = project(s, m);
  i64 k = bar.weight(0) % p;
  if (k < 0) k += p;
  for (i64 y = 0; y < m; y++) {
    i64 r = bar.weight(y) % p;
    if (r < 0) r += p;
    if (r != k) return std::nullopt;
  }
  i64 total = s.total();
  i64 l = (total - k * m) / p;
  if (k * m + l * p != total || l < 0) return std::nullopt;
  return std::make_pair(k, l);
}

bool cyclo_identity_mp(i64 m, i64 p) {
  if (!is_prime(p)) throw std::invalid_argument("cyclo_identity_mp: p must be prime");
  if (m < 1 || m % p == 0) throw std::invalid_argument("cyclo_identity_mp: need p coprime to m");
  IntPoly lhs = poly_mul(cyclotomic_uncached(m * p), cyclotomic_uncached(m));
  IntPoly rhs = poly_compose_xk(cyclotomic_uncached(m), p);
  return lhs == rhs;
}

bool cyclo_identity_mpk(i64 m, i64 p, i64 k) {
  if (!is_prime(p)) throw std::invalid_argument("cyclo_identity_mpk: p must be prime");
  if (m < 1 || m % p == 0) throw std::invalid_argument("cyclo_identity_mpk: need p coprime to m");
  if (k < 1) throw std::invalid_argument("cyclo_identity_mpk: k must be >= 1");
  i64 pk = 1;
  for (i64 i = 0; i < k; i++) pk *= p;
  IntPoly lhs = cyclotomic_uncached(pk * m);
  IntPoly rhs = poly_compose_xk(cyclotomic_uncached(p * m), pk / p);
  return lhs == rhs;
}

std::set<i64> prime_power_support(const WeightedSet& s) {
  if (!s.is_set()) throw std::invalid_argument("prime_power_support: needs a set");
  MaskPoly ms = mask_poly(s);
  std::set<i64> out;
  for (i64 d : divisors_of(ms.n)) {
    if (d < 2) continue;
    if (prime_factors_of(d).size() != 1) continue;
    if (divides(ms, d)) out.insert(d);
  }
  return out;
}

bool check_T1(const WeightedSet& s) {
  if (!s.is_set() || s.empty()) throw std::invalid_argument("check_T1: needs a nonempty set");
  i64 prod = 1;
  for (i64 d : prime_power_support(s)) prod *= poly_eval_at_1(cyclotomic(d));
  return prod == s.total();
}

bool check_T2(const WeightedSet& s) {
  if (!s.is_set() || s.empty()) throw std::invalid_argument("check_T2: needs a nonempty set");
  MaskPoly ms = mask_poly(s);
  std::set<i64> support = prime_power_support(s);
  std::vector<i64> supp(support.begin(), support.end());
  size_t t = supp.size();
  if (t > 20) throw std::invalid_argument("check_T2: support too large");
  for (size_t mask = 0; mask < (size_t{1} << t); mask++) {
    if (__builtin_popcountll(mask) < 2) continue;
    i64 prod = 1;
    std::set<i64> bases;
    bool distinct = true;
    for (size_t i = 0; i < t && distinct; i++) {
      if (!(mask >> i & 1)) continue;
      i64 base = prime_factors_of(supp[i])[0];
      if (!bases.insert(base).second) distinct = false;
      prod *= supp[i];
    }
    if (!distinct) continue;
    // products of support elements divide n since the factors do and the
    // bases are distinct
    if (!divides(ms, prod)) return false;
  }
  return true;
}

}  // namespace spectile
