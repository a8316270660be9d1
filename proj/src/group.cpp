#include "spectile/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace spectile {

i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 lcm_i64(i64 a, i64 b) { return a / gcd_i64(a, b) * b; }

std::vector<i64> divisors_of(i64 n) {
  std::vector<i64> ds;
  for (i64 d = 1; d * d <= n; d++) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::vector<i64> prime_factors_of(i64 n) {
  std::vector<i64> ps;
  for (i64 p = 2; p * p <= n; p++) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

Group::Group(std::vector<i64> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw std::invalid_argument("Group: empty factor list");
  size_ = 1;
  exponent_ = 1;
  for (i64 n : orders_) {
    if (n < 2) throw std::invalid_argument("Group: every factor order must be >= 2");
    size_ *= n;
    exponent_ = lcm_i64(exponent_, n);
  }
}

i64 Group::order() const {
  if (!cyclic()) throw std::invalid_argument("Group::order: group is not cyclic");
  return orders_[0];
}

i64 Group::index_of(const std::vector<i64>& coords) const {
  if (coords.size() != orders_.size())
    throw std::invalid_argument("Group::index_of: coordinate count mismatch");
  i64 idx = 0;
  for (size_t i = 0; i < orders_.size(); i++) {
    i64 c = coords[i] % orders_[i];
    if (c < 0) c += orders_[i];
    idx = idx * orders_[i] + c;
  }
  return idx;
}

std::vector<i64> Group::coords_of(i64 index) const {
  std::vector<i64> c(orders_.size());
  for (size_t i = orders_.size(); i-- > 0;) {
    c[i] = index % orders_[i];
    index /= orders_[i];
  }
  return c;
}

i64 Group::add(i64 a, i64 b) const {
  if (cyclic()) {
    i64 n = orders_[0];
    return (a + b) % n;
  }
  i64 idx = 0, res = 0;
  // componentwise addition working from the least significant factor up
  i64 mul = 1;
  for (size_t i = orders_.size(); i-- > 0;) {
    i64 n = orders_[i];
    i64 ca = a % n, cb = b % n;
    a /= n;
    b /= n;
    res += ((ca + cb) % n) * mul;
    mul *= n;
  }
  (void)idx;
  return res;
}

i64 Group::neg(i64 a) const {
  if (cyclic()) {
    i64 n = orders_[0];
    return (n - a) % n;
  }
  i64 res = 0, mul = 1;
  for (size_t i = orders_.size(); i-- > 0;) {
    i64 n = orders_[i];
    i64 ca = a % n;
    a /= n;
    res += ((n - ca) % n) * mul;
    mul *= n;
  }
  return res;
}

i64 Group::scale(i64 k, i64 a) const {
  i64 res = 0, mul = 1;
  if (cyclic()) {
    i64 n = orders_[0];
    i64 km = k % n;
    if (km < 0) km += n;
    return (km * (a % n)) % n;
  }
  for (size_t i = orders_.size(); i-- > 0;) {
    i64 n = orders_[i];
    i64 ca = a % n;
    a /= n;
    i64 km = k % n;
    if (km < 0) km += n;
    res += ((km * ca) % n) * mul;
    mul *= n;
  }
  return res;
}

std::string Group::to_string() const {
  std::string s = "Z";
  for (size_t i = 0; i < orders_.size(); i++) {
    s += (i == 0 ? "_" : " x Z_");
    s += std::to_string(orders_[i]);
  }
  return s;
}

Group make_group(const std::vector<i64>& orders) { return Group(orders); }

i64 element_order(const Group& g, i64 x) {
  auto coords = g.coords_of(x);
  i64 ord = 1;
  for (size_t i = 0; i < coords.size(); i++) {
    i64 n = g.orders()[i];
    i64 oi = n / gcd_i64(n, coords[i]);
    ord = lcm_i64(ord, oi);
  }
  return ord;
}

WeightedSet WeightedSet::from_indices(const Group& g, const std::vector<i64>& indices) {
  WeightedSet w(g);
  for (i64 i : indices) {
    if (i < 0 || i >= g.size()) throw std::invalid_argument("from_indices: element out of range");
    if (w.weight(i) != 0) throw std::invalid_argument("from_indices: repeated element");
    w.set_weight(i, 1);
  }
  return w;
}

i64 WeightedSet::total() const {
  i64 t = 0;
  for (i64 x : w_) t += x;
  return t;
}

bool WeightedSet::is_set() const {
  for (i64 x : w_)
    if (x != 0 && x != 1) return false;
  return true;
}

std::vector<i64> WeightedSet::support() const {
  std::vector<i64> s;
  for (i64 i = 0; i < static_cast<i64>(w_.size()); i++)
    if (w_[static_cast<size_t>(i)] != 0) s.push_back(i);
  return s;
}

i64 WeightedSet::support_size() const {
  i64 c = 0;
  for (i64 x : w_)
    if (x != 0) c++;
  return c;
}

WeightedSet WeightedSet::translate(i64 g) const {
  WeightedSet r(g_);
  for (i64 i = 0; i < g_.size(); i++)
    if (w_[static_cast<size_t>(i)] != 0) r.add_weight(g_.add(i, g), w_[static_cast<size_t>(i)]);
  return r;
}

WeightedSet WeightedSet::dilate(i64 u) const {
  WeightedSet r(g_);
  for (i64 i = 0; i < g_.size(); i++)
    if (w_[static_cast<size_t>(i)] != 0) r.add_weight(g_.scale(u, i), w_[static_cast<size_t>(i)]);
  return r;
}

bool Subgroup::contains(i64 x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

Subgroup generated_subgroup(const Group& g, const std::vector<i64>& gens) {
  std::vector<char> in(static_cast<size_t>(g.size()), 0);
  std::vector<i64> stack{0};
  in[0] = 1;
  while (!stack.empty()) {
    i64 x = stack.back();
    stack.pop_back();
    for (i64 gen : gens) {
      i64 y = g.add(x, gen);
      if (!in[static_cast<size_t>(y)]) {
        in[static_cast<size_t>(y)] = 1;
        stack.push_back(y);
      }
    }
  }
  Subgroup h;
  h.generators = gens;
  for (i64 i = 0; i < g.size(); i++)
    if (in[static_cast<size_t>(i)]) h.members.push_back(i);
  h.index = g.size() / static_cast<i64>(h.members.size());
  return h;
}

Subgroup cyclic_subgroup_of_order(const Group& g, i64 m) {
  i64 n = g.order();
  if (m < 1 || n % m != 0) throw std::invalid_argument("cyclic_subgroup_of_order: m must divide n");
  Subgroup h;
  h.generators = {n / m};
  h.members.reserve(static_cast<size_t>(m));
  for (i64 j = 0; j < m; j++) h.members.push_back(j * (n / m));
  h.index = n / m;
  return h;
}

WeightedSet project(const WeightedSet& w, i64 m) {
  const Group& g = w.group();
  i64 n = g.order();
  if (m < 1 || n % m != 0) throw std::invalid_argument("project: m must divide n");
  WeightedSet r(make_group({m}));
  for (i64 i = 0; i < n; i++)
    if (w.weight(i) != 0) r.add_weight(i % m, w.weight(i));
  return r;
}

WeightedSet project_to_prime_factors(const WeightedSet& w, const std::vector<i64>& primes) {
  const Group& g = w.group();
  i64 n = g.order();
  i64 rad = 1;
  for (i64 p : primes) rad *= p;
  if (n % rad != 0)
    throw std::invalid_argument("project_to_prime_factors: product must divide n");
  Group target = make_group(primes);
  WeightedSet r(target);
  std::vector<i64> coords(primes.size());
  for (i64 i = 0; i < n; i++) {
    if (w.weight(i) == 0) continue;
    for (size_t j = 0; j < primes.size(); j++) coords[j] = i % primes[j];
    r.add_weight(target.index_of(coords), w.weight(i));
  }
  return r;
}

std::optional<Subgroup> contained_in_proper_subgroup(const WeightedSet& s) {
  if (!s.is_set()) throw std::invalid_argument("contained_in_proper_subgroup: needs a set");
  auto sup = s.support();
  if (sup.empty()) return std::nullopt;
  const Group& g = s.group();
  i64 base = sup[0];
  std::vector<i64> gens;
  for (i64 x : sup)
    if (x != base) gens.push_back(g.sub(x, base));
  Subgroup h = generated_subgroup(g, gens);
  if (h.size() == g.size()) return std::nullopt;
  return h;
}

WeightedSet crt_isomorphism(const WeightedSet& w, const Group& target) {
  const Group& src = w.group();
  if (src.size() != target.size())
    throw std::invalid_argument("crt_isomorphism: sizes differ");
  auto coprime = [](const std::vector<i64>& v) {
    for (size_t i = 0; i < v.size(); i++)
      for (size_t j = i + 1; j < v.size(); j++)
        if (gcd_i64(v[i], v[j]) != 1) return false;
    return true;
  };
  if (!coprime(src.orders()) || !coprime(target.orders()))
    throw std::invalid_argument("crt_isomorphism: factors must be pairwise coprime");
  // go through the integer residue mod N: both sides embed in Z_N by CRT
  i64 N = src.size();
  auto to_residue = [N](const Group& g, i64 idx) {
    auto c = g.coords_of(idx);
    // CRT combine: find x mod N with x = c_i mod n_i
    i64 x = 0, mod = 1;
    for (size_t i = 0; i < c.size(); i++) {
      i64 ni = g.orders()[i];
      // solve x + mod*t = c_i (mod ni)
      i64 r = ((c[i] - x) % ni + ni) % ni;
      i64 minv = 1, base = mod % ni, e = -1;
      // modular inverse via extended Euclid
      {
        i64 a = base, b = ni, u0 = 1, u1 = 0;
        while (b) {
          i64 q = a / b, t = a - q * b;
          a = b;
          b = t;
          t = u0 - q * u1;
          u0 = u1;
          u1 = t;
        }
        minv = ((u0 % ni) + ni) % ni;
      }
      (void)e;
      i64 t = (r * minv) % ni;
      x += mod * t;
      mod *= ni;
    }
    return x % N;
  };
  WeightedSet r(target);
  for (i64 i = 0; i < src.size(); i++) {
    if (w.weight(i) == 0) continue;
    i64 x = to_residue(src, i);
    // decompose x in the target group
    std::vector<i64> c(target.orders().size());
    for (size_t j = 0; j < c.size(); j++) c[j] = x % target.orders()[j];
    r.add_weight(target.index_of(c), w.weight(i));
  }
  return r;
}

}  // namespace spectile
