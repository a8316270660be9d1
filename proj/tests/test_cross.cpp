#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spectile/cyclo.hpp"
#include "spectile/spectral.hpp"
#include "spectile/structure.hpp"
#include "spectile/tiling.hpp"

using namespace spectile;

TEST_CASE("fourier_zero agrees with cyclotomic divisibility at the character order") {
  std::mt19937_64 rng(73);
  for (int it = 0; it < 300; it++) {
    i64 n = 2 + static_cast<i64>(rng() % 59);
    Group g = make_group({n});
    WeightedSet s(g);
    for (i64 x = 0; x < n; x++) s.set_weight(x, static_cast<i64>(rng() % 3));
    if (s.empty()) continue;
    MaskPoly m = mask_poly(s);
    i64 lam = static_cast<i64>(rng() % static_cast<uint64_t>(n));
    i64 ord = element_order(g, lam);
    CHECK(fourier_zero(s, lam) == divides(m, ord));
  }
}

TEST_CASE("cube rule tracks full-radical divisibility on random subsets of Z_30") {
  std::mt19937_64 rng(79);
  Group g = make_group({30});
  for (int it = 0; it < 500; it++) {
    std::vector<i64> pts;
    for (i64 x = 0; x < 30; x++)
      if (rng() % 4 == 0) pts.push_back(x);
    if (pts.empty()) continue;
    WeightedSet s = WeightedSet::from_indices(g, pts);
    MaskPoly m = mask_poly(s);
    for (i64 mm : {2 * 3 * 5, 2 * 3, 2 * 5, 3 * 5}) {
      auto primes = prime_factors_of(mm);
      WeightedSet bar = project_to_prime_factors(s, primes);
      CHECK(all_cubes_hold(bar) == divides(m, mm));
    }
  }
}

TEST_CASE("spectral and tiling certificates cross-verify on Z_12") {
  Group g = make_group({12});
  for (uint64_t mask = 0; mask < 2048; mask++) {
    std::vector<i64> pts{0};
    for (i64 b = 1; b < 12; b++)
      if (mask >> (b - 1) & 1) pts.push_back(b);
    WeightedSet s = WeightedSet::from_indices(g, pts);
    auto spec = is_spectral(s);
    auto tile = is_tile(s);
    CHECK(spec.has_value() == tile.has_value());  // both known for Z_12
    if (spec) CHECK(verify_spectral_pair(s, spec->spectrum));
    if (tile) CHECK(verify_tiling(s, tile->complement));
  }
}

TEST_CASE("projection respects the mask divisibility ladder") {
  std::mt19937_64 rng(83);
  for (int it = 0; it < 200; it++) {
    i64 n = 4 + static_cast<i64>(rng() % 56);
    Group g = make_group({n});
    WeightedSet s(g);
    for (i64 x = 0; x < n; x++) s.set_weight(x, static_cast<i64>(rng() % 2));
    if (s.empty()) continue;
    auto ds = divisors_of(n);
    i64 m = ds[rng() % ds.size()];
    if (m < 2) continue;
    // divisibility by Phi_d for d | m is decided by the projection to Z_m
    WeightedSet bar = project(s, m);
    MaskPoly mm = mask_poly(s), mb = mask_poly(bar);
    for (i64 d : divisors_of(m)) CHECK(divides(mm, d) == divides(mb, d));
  }
}
