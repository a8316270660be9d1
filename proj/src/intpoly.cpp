#include "spectile/intpoly.hpp"

#include <stdexcept>

namespace spectile {

IntPoly IntPoly::xk_minus_1(i64 k) {
  if (k < 1) throw std::invalid_argument("xk_minus_1: k must be >= 1");
  std::vector<i64> c(static_cast<size_t>(k) + 1, 0);
  c[0] = -1;
  c.back() = 1;
  return IntPoly(std::move(c));
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
  std::vector<i64> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (size_t i = 0; i < a.coeffs.size(); i++) c[i] += a.coeffs[i];
  for (size_t i = 0; i < b.coeffs.size(); i++) c[i] += b.coeffs[i];
  return IntPoly(std::move(c));
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
  std::vector<i64> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (size_t i = 0; i < a.coeffs.size(); i++) c[i] += a.coeffs[i];
  for (size_t i = 0; i < b.coeffs.size(); i++) c[i] -= b.coeffs[i];
  return IntPoly(std::move(c));
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<i64> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (size_t i = 0; i < a.coeffs.size(); i++) {
    i64 ai = a.coeffs[i];
    if (ai == 0) continue;
    for (size_t j = 0; j < b.coeffs.size(); j++) c[i + j] += ai * b.coeffs[j];
  }
  return IntPoly(std::move(c));
}

std::pair<IntPoly, IntPoly> poly_divmod_monic(const IntPoly& a, const IntPoly& d) {
  if (d.is_zero() || d.leading() != 1)
    throw std::invalid_argument("poly_divmod_monic: divisor must be monic");
  i64 da = a.degree(), dd = d.degree();
  if (da < dd) return {IntPoly(), a};
  std::vector<i64> rem = a.coeffs;
  std::vector<i64> quo(static_cast<size_t>(da - dd) + 1, 0);
  for (i64 i = da - dd; i >= 0; i--) {
    i64 c = rem[static_cast<size_t>(i + dd)];
    if (c == 0) continue;
    quo[static_cast<size_t>(i)] = c;
    for (i64 j = 0; j <= dd; j++) rem[static_cast<size_t>(i + j)] -= c * d.coeffs[static_cast<size_t>(j)];
  }
  rem.resize(static_cast<size_t>(dd));
  return {IntPoly(std::move(quo)), IntPoly(std::move(rem))};
}

std::optional<IntPoly> poly_exact_div_monic(const IntPoly& a, const IntPoly& d) {
  auto [q, r] = poly_divmod_monic(a, d);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

bool poly_divides_monic(const IntPoly& d, const IntPoly& a) {
  return poly_divmod_monic(a, d).second.is_zero();
}

void poly_mul_xk_minus_1(std::vector<i64>& a, i64 k) {
  a.resize(a.size() + static_cast<size_t>(k), 0);
  for (i64 i = static_cast<i64>(a.size()) - 1; i >= 0; i--) {
    i64 lo = (i >= k) ? a[static_cast<size_t>(i - k)] : 0;
    a[static_cast<size_t>(i)] = lo - a[static_cast<size_t>(i)];
  }
}

void poly_div_xk_minus_1(std::vector<i64>& a, i64 k) {
  // exact division, caller guarantees divisibility; quotient computed top-down
  i64 n = static_cast<i64>(a.size()) - 1;
  if (n < k) throw std::invalid_argument("poly_div_xk_minus_1: degree too small");
  std::vector<i64> q(static_cast<size_t>(n - k) + 1, 0);
  for (i64 i = n - k; i >= 0; i--) {
    i64 c = a[static_cast<size_t>(i + k)];
    q[static_cast<size_t>(i)] = c;
    a[static_cast<size_t>(i + k)] = 0;
    a[static_cast<size_t>(i)] += c;
  }
  for (i64 i = 0; i < k; i++)
    if (a[static_cast<size_t>(i)] != 0)
      throw std::logic_error("poly_div_xk_minus_1: division was not exact");
  a = std::move(q);
}

IntPoly poly_compose_xk(const IntPoly& a, i64 k) {
  if (k < 1) throw std::invalid_argument("poly_compose_xk: k must be >= 1");
  if (a.is_zero()) return IntPoly();
  std::vector<i64> c(static_cast<size_t>(a.degree() * k) + 1, 0);
  for (size_t i = 0; i < a.coeffs.size(); i++) c[i * static_cast<size_t>(k)] = a.coeffs[i];
  return IntPoly(std::move(c));
}

i64 poly_eval_at_1(const IntPoly& a) {
  i64 s = 0;
  for (i64 c : a.coeffs) s += c;
  return s;
}

IntPoly poly_mod_p(const IntPoly& a, i64 p) {
  std::vector<i64> c = a.coeffs;
  for (i64& x : c) {
    x %= p;
    if (x < 0) x += p;
  }
  return IntPoly(std::move(c));
}

IntPoly poly_rem_mod_p(const IntPoly& a, const IntPoly& d, i64 p) {
  IntPoly dm = poly_mod_p(d, p);
  if (dm.is_zero()) throw std::invalid_argument("poly_rem_mod_p: zero divisor");
  IntPoly am = poly_mod_p(a, p);
  i64 dd = dm.degree();
  // make divisor monic in F_p
  i64 lead = dm.leading();
  if (lead != 1) {
    // multiply by inverse of lead
    i64 inv = 1, base = lead % p, e = p - 2;
    while (e) {
      if (e & 1) inv = (__int128)inv * base % p;
      base = (__int128)base * base % p;
      e >>= 1;
    }
    for (i64& x : dm.coeffs) x = (__int128)x * inv % p;
  }
  std::vector<i64> rem = am.coeffs;
  for (i64 i = static_cast<i64>(rem.size()) - 1 - dd; i >= 0; i--) {
    i64 c = rem[static_cast<size_t>(i + dd)] % p;
    if (c == 0) continue;
    for (i64 j = 0; j <= dd; j++) {
      i64& x = rem[static_cast<size_t>(i + j)];
      x = (x - c * dm.coeffs[static_cast<size_t>(j)]) % p;
      if (x < 0) x += p;
    }
  }
  if (static_cast<i64>(rem.size()) > dd) rem.resize(static_cast<size_t>(dd));
  for (i64& x : rem) {
    x %= p;
    if (x < 0) x += p;
  }
  return IntPoly(std::move(rem));
}

bool poly_divides_mod_p(const IntPoly& d, const IntPoly& a, i64 p) {
  return poly_rem_mod_p(a, d, p).is_zero();
}

bool is_prime(i64 p) {
  if (p < 2) return false;
  for (i64 d = 2; d * d <= p; d++)
    if (p % d == 0) return false;
  return true;
}

}  // namespace spectile
