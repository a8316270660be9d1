#ifndef SPECTILE_INTPOLY_HPP
#define SPECTILE_INTPOLY_HPP

#include <cstdint>
#include <optional>
#include <vector>

// Dense integer polynomials with exact int64 arithmetic. Everything the
// cyclotomic and mask-polynomial layers need: monic division with remainder,
// exact division, sparse multiply/divide by x^k - 1, reduction mod a prime.

namespace spectile {

using i64 = std::int64_t;

struct IntPoly {
  // coeffs[i] is the coefficient of x^i; normalized form has no trailing zeros
  // (the zero polynomial is an empty vector).
  std::vector<i64> coeffs;

  IntPoly() = default;
  explicit IntPoly(std::vector<i64> c) : coeffs(std::move(c)) { trim(); }

  bool is_zero() const { return coeffs.empty(); }
  // degree of the zero polynomial is -1 by convention
  i64 degree() const { return static_cast<i64>(coeffs.size()) - 1; }
  i64 leading() const { return coeffs.empty() ? 0 : coeffs.back(); }
  i64 coeff(i64 i) const {
    return (i >= 0 && i < static_cast<i64>(coeffs.size())) ? coeffs[i] : 0;
  }

  void trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  bool operator==(const IntPoly& o) const { return coeffs == o.coeffs; }

  static IntPoly one() { return IntPoly({1}); }
  // x^k - 1
  static IntPoly xk_minus_1(i64 k);
};

IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);

// Division by a monic divisor; returns {quotient, remainder} with
// deg(remainder) < deg(divisor). Throws if divisor is not monic.
std::pair<IntPoly, IntPoly> poly_divmod_monic(const IntPoly& a, const IntPoly& d);

// Exact division by a monic divisor; empty if a nonzero remainder shows up.
std::optional<IntPoly> poly_exact_div_monic(const IntPoly& a, const IntPoly& d);

bool poly_divides_monic(const IntPoly& d, const IntPoly& a);

// In-place a *= (x^k - 1) and exact a /= (x^k - 1).
void poly_mul_xk_minus_1(std::vector<i64>& a, i64 k);
void poly_div_xk_minus_1(std::vector<i64>& a, i64 k);

// a(x^k): spread coefficients k apart.
IntPoly poly_compose_xk(const IntPoly& a, i64 k);

i64 poly_eval_at_1(const IntPoly& a);

// Reduce coefficients into [0, p).
IntPoly poly_mod_p(const IntPoly& a, i64 p);

// Remainder of a by monic-mod-p divisor d, all arithmetic in F_p.
IntPoly poly_rem_mod_p(const IntPoly& a, const IntPoly& d, i64 p);

bool poly_divides_mod_p(const IntPoly& d, const IntPoly& a, i64 p);

bool is_prime(i64 p);

}  // namespace spectile

#endif
