#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "spectile/cyclo.hpp"
#include "spectile/engine.hpp"
#include "spectile/spectral.hpp"

using namespace spectile;

namespace {

WeightedSet set_of(const Group& g, std::vector<i64> v) { return WeightedSet::from_indices(g, v); }

std::vector<i64> iota_vec(i64 k, i64 step = 1, i64 start = 0) {
  std::vector<i64> v;
  for (i64 i = 0; i < k; i++) v.push_back(start + i * step);
  return v;
}

bool has_tag(const CaseTrace& t, const std::string& tag) {
  for (auto& s : t.steps)
    if (s.case_tag == tag) return true;
  return false;
}

}  // namespace

TEST_CASE("pqr context and gcd classes") {
  PqrContext ctx = make_pqr_context(2, 3, 37);
  CHECK(ctx.group.order() == 1332);
  CHECK(ctx.hypothesis_ok);
  CHECK(!make_pqr_context(2, 3, 5).hypothesis_ok);
  CHECK_THROWS_AS(make_pqr_context(2, 3, 3), std::invalid_argument);

  Group g = ctx.group;
  CHECK(gcd_class(ctx, set_of(g, iota_vec(37))) == 37);
  CHECK(gcd_class(ctx, set_of(g, iota_vec(74))) == 74);
  CHECK(gcd_class(ctx, set_of(g, iota_vec(35))) == 1);
}

TEST_CASE("divisibility table extremes") {
  PqrContext ctx = make_pqr_context(2, 3, 37);
  Group g = ctx.group;

  auto full = divisibility_table(ctx, set_of(g, iota_vec(1332)));
  for (int row = 0; row < 4; row++) {
    CHECK(full.row_any[static_cast<size_t>(row)]);
    CHECK(full.over_fq[static_cast<size_t>(row)]);
  }
  CHECK(full.implications_ok);

  auto origin = divisibility_table(ctx, set_of(g, {0}));
  for (int row = 0; row < 4; row++) {
    for (int col = 0; col < 3; col++) CHECK(!origin.over_z[static_cast<size_t>(row)][static_cast<size_t>(col)]);
    CHECK(!origin.over_fq[static_cast<size_t>(row)]);
  }

  // order-2 subgroup {0, 666}: mask 1 + x^666 is divisible exactly by the
  // cyclotomics at 4, 12, 36, 148, 444, 1332
  auto h2 = divisibility_table(ctx, set_of(g, {0, 666}));
  CHECK(!h2.row_any[0]);
  CHECK(!h2.row_any[1]);
  CHECK(h2.row_any[2]);
  CHECK(h2.row_any[3]);
  CHECK(h2.implications_ok);
}

TEST_CASE("claim_union_zr") {
  PqrContext ctx = make_pqr_context(2, 3, 37);
  Group g = ctx.group;
  WeightedSet h37 = set_of(g, iota_vec(37, 36));
  auto lam = iota_vec(37, 36);
  auto cert = claim_union_zr(ctx, h37, lam);
  REQUIRE(cert.has_value());
  CHECK(verify_tiling(h37, cert->complement));

  // hypothesis violation: Phi_n does not divide the mask of {0, 666}
  CHECK_THROWS_AS(claim_union_zr(ctx, set_of(g, {0, 666}), {0, 666}), std::invalid_argument);

  // full group short-circuit
  auto full = claim_union_zr(ctx, set_of(g, iota_vec(1332)), iota_vec(1332));
  REQUIRE(full.has_value());
  CHECK(full->complement == std::vector<i64>{0});
}

TEST_CASE("engine: order-37 subgroup pair lands in the r-class union path") {
  PqrContext ctx = make_pqr_context(2, 3, 37);
  Group g = ctx.group;
  WeightedSet s = set_of(g, iota_vec(37, 36));
  auto res = spectral_to_tile(ctx, s, iota_vec(37, 36));
  CHECK(res.certificate.complement == iota_vec(36));
  CHECK(has_tag(res.trace, "R_CLASS"));
  CHECK(verify_tiling(s, res.certificate.complement));
}

TEST_CASE("engine: full group") {
  PqrContext ctx = make_pqr_context(2, 3, 37);
  Group g = ctx.group;
  WeightedSet s = set_of(g, iota_vec(1332));
  auto res = spectral_to_tile(ctx, s, iota_vec(1332));
  CHECK(res.certificate.complement == std::vector<i64>{0});
  CHECK(has_tag(res.trace, "LARGE_FULL"));
}

TEST_CASE("engine: union of 37-cosets over a transversal") {
  PqrContext ctx = make_pqr_context(2, 3, 37);
  Group g = ctx.group;
  // transversal of the order-6 subgroup of Z_36, lifted and saturated with
  // the order-37 subgroup
  std::vector<i64> a{0, 7, 14, 21, 28, 35};
  std::vector<i64> pts;
  for (i64 x : a)
    for (i64 j = 0; j < 37; j++) pts.push_back((x + 36 * j) % 1332);
  std::sort(pts.begin(), pts.end());
  WeightedSet s = set_of(g, pts);
  // spectrum: lift a spectrum of the transversal through the coset structure
  Group z36 = make_group({36});
  auto inner = is_spectral(WeightedSet::from_indices(z36, a));
  REQUIRE(inner.has_value());
  std::vector<i64> lam;
  for (i64 c = 0; c < 37; c++)
    for (i64 mu : inner->spectrum) lam.push_back(c + 37 * mu);
  std::sort(lam.begin(), lam.end());
  REQUIRE(verify_spectral_pair(s, lam));
  auto res = spectral_to_tile(ctx, s, lam);
  CHECK(verify_tiling(s, res.certificate.complement));
}

TEST_CASE("engine rejects non-spectral pairs and wrong hypothesis") {
  PqrContext ctx = make_pqr_context(2, 3, 37);
  Group g = ctx.group;
  WeightedSet s = set_of(g, {0, 1, 2});
  CHECK_THROWS_AS(spectral_to_tile(ctx, s, {0, 1, 2}), EngineError);

  PqrContext bad = make_pqr_context(2, 3, 5);
  Group g5 = bad.group;
  WeightedSet s5 = set_of(g5, iota_vec(180));
  try {
    spectral_to_tile(bad, s5, iota_vec(180));
    CHECK(false);
  } catch (const EngineError& e) {
    CHECK(e.kind == EngineErrorKind::Hypothesis);
  }
  // best-effort still handles the trivial full-group case
  auto res = spectral_to_tile(bad, s5, iota_vec(180), true);
  CHECK(res.trace.best_effort);
  CHECK(res.certificate.complement == std::vector<i64>{0});
}

TEST_CASE("engine: interval transversal of the order-pq subgroup") {
  PqrContext ctx = make_pqr_context(2, 3, 37);
  Group g = ctx.group;
  WeightedSet s = set_of(g, iota_vec(222));
  std::vector<i64> lam = iota_vec(222, 6);
  REQUIRE(verify_spectral_pair(s, lam));
  auto res = spectral_to_tile(ctx, s, lam);
  CHECK(verify_tiling(s, res.certificate.complement));
  CHECK(has_tag(res.trace, "PQR_CLASS"));
}

TEST_CASE("engine: subgroup H_74 exercises the ar-class") {
  PqrContext ctx = make_pqr_context(2, 3, 37);
  Group g = ctx.group;
  WeightedSet s = set_of(g, iota_vec(74, 18));
  std::vector<i64> lam = iota_vec(74);
  REQUIRE(verify_spectral_pair(s, lam));
  auto res = spectral_to_tile(ctx, s, lam);
  CHECK(verify_tiling(s, res.certificate.complement));
}

TEST_CASE("big_set route on Z_12") {
  Group g = make_group({12});
  WeightedSet evens = set_of(g, {0, 2, 4, 6, 8, 10});
  std::vector<i64> lam{0, 1, 2, 3, 4, 5};
  REQUIRE(verify_spectral_pair(evens, lam));
  auto res = big_set_spectral_to_tile(evens, lam);
  CHECK(verify_tiling(evens, res.certificate.complement));
  CHECK(res.certificate.complement == std::vector<i64>{0, 3});

  WeightedSet full = set_of(g, iota_vec(12));
  auto res2 = big_set_spectral_to_tile(full, iota_vec(12));
  CHECK(res2.certificate.complement == std::vector<i64>{0});
}

TEST_CASE("big_set route on Z_18 spot checks") {
  Group g = make_group({18});
  // order-9 subgroup: ratio 2
  WeightedSet s = set_of(g, iota_vec(9, 2));
  auto cert = is_spectral(s);
  REQUIRE(cert.has_value());
  auto res = big_set_spectral_to_tile(s, cert->spectrum);
  CHECK(verify_tiling(s, res.certificate.complement));

  // a two-element spectral set: ratio 9 = 3^2
  WeightedSet s2 = set_of(g, {0, 9});
  auto cert2 = is_spectral(s2);
  REQUIRE(cert2.has_value());
  auto res2 = big_set_spectral_to_tile(s2, cert2->spectrum);
  CHECK(verify_tiling(s2, res2.certificate.complement));

  CHECK_THROWS_AS(big_set_spectral_to_tile(set_of(g, {0, 1, 2}), std::vector<i64>{0, 6, 12}),
                  std::invalid_argument);
}

TEST_CASE("engine corpus smoke: dilates and translates of structured pairs") {
  PqrContext ctx = make_pqr_context(2, 3, 37);
  Group g = ctx.group;
  std::mt19937_64 rng(71);
  int ran = 0;
  // subgroups of Z_1332 with their canonical spectra
  for (i64 m : divisors_of(i64{1332})) {
    if (m == 1) continue;
    WeightedSet s = set_of(g, iota_vec(m, 1332 / m));
    std::vector<i64> lam = iota_vec(m);
    REQUIRE(verify_spectral_pair(s, lam));
    i64 u = 1;
    do u = 1 + static_cast<i64>(rng() % 1331);
    while (gcd_i64(u, 1332) != 1);
    i64 t1 = static_cast<i64>(rng() % 1332), t2 = static_cast<i64>(rng() % 1332);
    WeightedSet sd = s.dilate(u).translate(t1);
    i64 uinv = 1;
    while ((u * uinv) % 1332 != 1) uinv++;
    std::vector<i64> lamd;
    for (i64 x : lam) lamd.push_back(g.add(g.scale(uinv, x), t2));
    std::sort(lamd.begin(), lamd.end());
    REQUIRE(verify_spectral_pair(sd, lamd));
    auto res = spectral_to_tile(ctx, sd, lamd);
    CHECK(verify_tiling(sd, res.certificate.complement));
    ran++;
  }
  CHECK(ran >= 17);
}
