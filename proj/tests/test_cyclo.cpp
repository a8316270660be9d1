#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spectile/cyclo.hpp"

using namespace spectile;

namespace {
WeightedSet set_of(const Group& g, std::vector<i64> v) { return WeightedSet::from_indices(g, v); }
}

TEST_CASE("mask polynomial examples") {
  Group z4 = make_group({4});
  CHECK(mask_poly(set_of(z4, {0, 1})).poly.coeffs == std::vector<i64>{1, 1});

  Group z6 = make_group({6});
  CHECK(mask_poly(set_of(z6, {0, 2, 4})).poly.coeffs == std::vector<i64>{1, 0, 1, 0, 1});

  WeightedSet multi(z6);
  multi.set_weight(0, 2);
  multi.set_weight(3, 1);
  CHECK(mask_poly(multi).poly.coeffs == std::vector<i64>{2, 0, 0, 1});

  Group prod = make_group({2, 3});
  CHECK_THROWS_AS(mask_poly(WeightedSet(prod)), std::invalid_argument);
}

TEST_CASE("cyclotomic examples, frozen from the recursive-division oracle") {
  CHECK(cyclotomic(1).coeffs == std::vector<i64>{-1, 1});
  // (x^6-1) / (Phi_1 Phi_2 Phi_3) = x^2 - x + 1
  CHECK(cyclotomic(6).coeffs == std::vector<i64>{1, -1, 1});
  CHECK(cyclotomic(12).coeffs == std::vector<i64>{1, 0, -1, 0, 1});
  CHECK(cyclotomic(8).coeffs == std::vector<i64>{1, 0, 0, 0, 1});
  CHECK(cyclotomic(9).coeffs == std::vector<i64>{1, 0, 0, 1, 0, 0, 1});
}

TEST_CASE("cyclotomic agrees with the oracle up to 150") {
  for (i64 d = 1; d <= 150; d++) {
    auto expect = oracle::cyclo(d);
    CHECK(cyclotomic_uncached(d).coeffs == expect);
  }
}

TEST_CASE("divides examples") {
  Group z4 = make_group({4});
  CHECK(divides(mask_poly(set_of(z4, {0, 2})), 4));

  Group z6 = make_group({6});
  MaskPoly m = mask_poly(set_of(z6, {0, 2, 4}));
  CHECK(divides(m, 6));
  CHECK(!divides(m, 2));

  MaskPoly full = mask_poly(set_of(z6, {0, 1, 2, 3, 4, 5}));
  for (i64 d : {2, 3, 6}) CHECK(divides(full, d));

  CHECK_THROWS_AS(divides(m, 4), std::invalid_argument);
}

TEST_CASE("divides_mod_p examples") {
  // Phi_12 | m_S over Z implies Phi_4 | m_S in F_3
  Group z12 = make_group({12});
  MaskPoly m = mask_poly(set_of(z12, {0, 4, 8}));
  REQUIRE(divides(m, 12));
  CHECK(divides_mod_p(m, 4, 3));

  // 1 + x^3 = (1+x)(1+x+x^2) over F_2
  Group z6 = make_group({6});
  MaskPoly m2 = mask_poly(set_of(z6, {0, 3}));
  CHECK(divides_mod_p(m2, 3, 2));

  // d = 1, p = 2: divisible iff |S| is even
  CHECK(divides_mod_p(m2, 1, 2));
  MaskPoly m3 = mask_poly(set_of(z6, {0, 1, 2}));
  CHECK(!divides_mod_p(m3, 1, 2));

  CHECK_THROWS_AS(divides_mod_p(m2, 3, 4), std::invalid_argument);
}

TEST_CASE("mod_p_size_constraint examples") {
  Group z6 = make_group({6});
  auto r1 = mod_p_size_constraint(set_of(z6, {0, 1, 2, 3, 4, 5}), 2, 3);
  REQUIRE(r1.has_value());
  CHECK(r1->first == 0);
  CHECK(r1->second == 3);

  CHECK(!mod_p_size_constraint(set_of(z6, {0, 1, 2}), 2, 3).has_value());

  Group z12 = make_group({12});
  std::vector<i64> all;
  for (i64 i = 0; i < 12; i++) all.push_back(i);
  auto r3 = mod_p_size_constraint(set_of(z12, all), 2, 3);
  REQUIRE(r3.has_value());
  CHECK(r3->first == 0);
  CHECK(r3->second == 6);

  CHECK_THROWS_AS(mod_p_size_constraint(set_of(z6, {0}), 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(mod_p_size_constraint(set_of(z6, {0}), 2, 6), std::invalid_argument);
}

TEST_CASE("cyclotomic identities") {
  CHECK(cyclo_identity_mp(3, 2));
  CHECK(cyclo_identity_mp(1, 2));
  CHECK(cyclo_identity_mp(4, 3));
  CHECK_THROWS_AS(cyclo_identity_mp(4, 2), std::invalid_argument);

  CHECK(cyclo_identity_mpk(1, 2, 3));
  CHECK(cyclo_identity_mpk(3, 2, 2));
  CHECK(cyclo_identity_mpk(1, 3, 2));
}

TEST_CASE("identities hold for all p^k m up to 400") {
  for (i64 m = 1; m <= 200; m++)
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
      if (m % p == 0 || m * p > 400) continue;
      CHECK(cyclo_identity_mp(m, p));
      i64 pk = p;
      for (i64 k = 1; pk * m <= 400; k++, pk *= p) CHECK(cyclo_identity_mpk(m, p, k));
    }
}

TEST_CASE("product of cyclotomics over the divisors is x^n - 1, n <= 300") {
  for (i64 n = 1; n <= 300; n++) {
    IntPoly prod = IntPoly::one();
    for (i64 d : divisors_of(n)) prod = poly_mul(prod, cyclotomic(d));
    CHECK(prod == IntPoly::xk_minus_1(n));
  }
}

TEST_CASE("prime_power_support examples") {
  Group z4 = make_group({4});
  CHECK(prime_power_support(set_of(z4, {0, 2})) == std::set<i64>{4});

  Group z6 = make_group({6});
  CHECK(prime_power_support(set_of(z6, {0, 3})) == std::set<i64>{2});

  Group z12 = make_group({12});
  std::vector<i64> all;
  for (i64 i = 0; i < 12; i++) all.push_back(i);
  CHECK(prime_power_support(set_of(z12, all)) == std::set<i64>{2, 3, 4});
}

TEST_CASE("T1 and T2 examples") {
  Group z6 = make_group({6});
  CHECK(check_T1(set_of(z6, {0, 3})));
  CHECK(check_T2(set_of(z6, {0, 3})));

  Group z12 = make_group({12});
  WeightedSet s = set_of(z12, {0, 3, 6, 9});
  CHECK(check_T1(s));
  CHECK(check_T2(s));

  Group z4 = make_group({4});
  CHECK(!check_T1(set_of(z4, {0, 1, 2})));
}

TEST_CASE("prime power divisibility forces a prime factor of the size") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 400; it++) {
    i64 n = 2 + static_cast<i64>(rng() % 59);
    Group g = make_group({n});
    std::vector<i64> pts;
    for (i64 x = 0; x < n; x++)
      if (rng() % 2) pts.push_back(x);
    if (pts.empty()) continue;
    MaskPoly m = mask_poly(WeightedSet::from_indices(g, pts));
    for (i64 s : prime_power_support(WeightedSet::from_indices(g, pts))) {
      i64 base = prime_factors_of(s)[0];
      CHECK(static_cast<i64>(pts.size()) % base == 0);
    }
    (void)m;
  }
}

TEST_CASE("mod-p transfer of full-order divisibility, randomized") {
  std::mt19937_64 rng(29);
  int hits = 0;
  for (int it = 0; it < 500; it++) {
    // n = p^k * m with structured sets that often carry Phi_n
    const i64 ps[] = {2, 3, 5};
    i64 p = ps[rng() % 3];
    i64 pk = p;
    if (rng() % 2) pk *= p;
    i64 m = 1 + static_cast<i64>(rng() % 12);
    while (m % p == 0) m++;
    i64 n = pk * m;
    if (n > 200) continue;
    Group g = make_group({n});
    // union of random cosets of the order-p subgroup, a family rich in
    // full-order divisibility
    WeightedSet s(g);
    for (i64 c = 0; c < n / p; c++)
      if (rng() % 3 == 0)
        for (i64 j = 0; j < p; j++) s.set_weight(c + j * (n / p), 1);
    if (s.empty()) continue;
    MaskPoly mp = mask_poly(s);
    if (!divides(mp, n)) continue;
    hits++;
    CHECK(divides_mod_p(mp, m, p));
  }
  CHECK(hits > 20);
}
