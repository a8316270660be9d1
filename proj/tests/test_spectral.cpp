#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spectile/spectral.hpp"

using namespace spectile;

namespace {
WeightedSet set_of(const Group& g, std::vector<i64> v) { return WeightedSet::from_indices(g, v); }
}

TEST_CASE("fourier_zero examples") {
  Group z4 = make_group({4});
  CHECK(fourier_zero(set_of(z4, {0, 2}), 1));

  Group z6 = make_group({6});
  WeightedSet s = set_of(z6, {0, 2, 4});
  CHECK(fourier_zero(s, 1));
  CHECK(!fourier_zero(s, 3));
}

TEST_CASE("zero_set examples") {
  Group z4 = make_group({4});
  CHECK(zero_set(set_of(z4, {0, 2})) == std::vector<i64>{1, 3});

  Group z6 = make_group({6});
  CHECK(zero_set(set_of(z6, {0, 3})) == std::vector<i64>{1, 3, 5});

  Group prod = make_group({3, 5});
  CHECK(zero_set(set_of(prod, {7})).empty());
}

TEST_CASE("is_spectral examples") {
  Group z4 = make_group({4});
  auto cert = is_spectral(set_of(z4, {0, 2}));
  REQUIRE(cert.has_value());
  CHECK(verify_spectral_pair(set_of(z4, {0, 2}), cert->spectrum));

  CHECK(!is_spectral(set_of(z4, {0, 1, 2})).has_value());

  Group z6 = make_group({6});
  std::vector<i64> all{0, 1, 2, 3, 4, 5};
  auto full = is_spectral(set_of(z6, all));
  REQUIRE(full.has_value());
  CHECK(full->spectrum == all);
}

TEST_CASE("verify_spectral_pair examples and duality") {
  Group z4 = make_group({4});
  CHECK(verify_spectral_pair(set_of(z4, {0, 2}), {0, 1}));
  CHECK(!verify_spectral_pair(set_of(z4, {0, 2}), {0, 2}));

  std::mt19937_64 rng(31);
  for (int it = 0; it < 300; it++) {
    i64 n = 2 + static_cast<i64>(rng() % 23);
    Group g = make_group({n});
    std::vector<i64> a, b;
    for (i64 x = 0; x < n; x++) {
      if (rng() % 3 == 0) a.push_back(x);
      if (rng() % 3 == 0) b.push_back(x);
    }
    if (a.empty() || a.size() != b.size()) continue;
    CHECK(verify_spectral_pair(set_of(g, a), b) == verify_spectral_pair(set_of(g, b), a));
  }
}

TEST_CASE("zero set symmetry and translation invariance") {
  std::mt19937_64 rng(37);
  for (int it = 0; it < 200; it++) {
    i64 n = 2 + static_cast<i64>(rng() % 40);
    Group g = make_group({n});
    std::vector<i64> pts;
    for (i64 x = 0; x < n; x++)
      if (rng() % 3 == 0) pts.push_back(x);
    if (pts.empty()) continue;
    WeightedSet s = set_of(g, pts);
    auto z = zero_set(s);
    for (i64 lam : z) CHECK(fourier_zero(s, g.neg(lam)));
    i64 shift = static_cast<i64>(rng() % static_cast<uint64_t>(n));
    CHECK(zero_set(s.translate(shift)) == z);
  }
}

TEST_CASE("dilation invariance of spectrality") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 60; it++) {
    i64 n = 4 + static_cast<i64>(rng() % 12);
    Group g = make_group({n});
    std::vector<i64> pts{0};
    for (i64 x = 1; x < n; x++)
      if (rng() % 3 == 0) pts.push_back(x);
    WeightedSet s = set_of(g, pts);
    i64 u = 1 + static_cast<i64>(rng() % static_cast<uint64_t>(n - 1));
    if (gcd_i64(u, n) != 1) continue;
    CHECK(is_spectral(s).has_value() == is_spectral(s.dilate(u)).has_value());
  }
}

TEST_CASE("is_spectral agrees with subset enumeration on small groups") {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 150; it++) {
    i64 n = 2 + static_cast<i64>(rng() % 11);
    Group g = make_group({n});
    std::vector<i64> pts{0};
    for (i64 x = 1; x < n; x++)
      if (rng() % 2) pts.push_back(x);
    WeightedSet s = set_of(g, pts);
    std::vector<char> zero(static_cast<size_t>(n), 0);
    for (i64 lam : zero_set(s)) zero[static_cast<size_t>(lam)] = 1;
    bool brute = oracle::brute_spectral(g, zero, static_cast<i64>(pts.size()));
    CHECK(is_spectral(s).has_value() == brute);
  }
}

TEST_CASE("certificate Gram matrix is |S| times the identity") {
  // entries computed as cyclotomic integers: the residue of the pairing
  // polynomial mod Phi_N
  Group g = make_group({12});
  WeightedSet s = set_of(g, {0, 3, 6, 9});
  auto cert = is_spectral(s);
  REQUIRE(cert.has_value());
  i64 N = g.exponent();
  for (size_t i = 0; i < cert->spectrum.size(); i++)
    for (size_t j = 0; j < cert->spectrum.size(); j++) {
      i64 d = g.sub(cert->spectrum[i], cert->spectrum[j]);
      std::vector<i64> c(static_cast<size_t>(N), 0);
      for (i64 x : s.support()) c[static_cast<size_t>(character_pairing(g, d, x))]++;
      IntPoly rem = poly_divmod_monic(IntPoly(std::move(c)), cyclotomic(N)).second;
      if (i == j) {
        CHECK(rem.coeffs == std::vector<i64>{s.total()});
      } else {
        CHECK(rem.is_zero());
      }
    }
}

TEST_CASE("enumerate_spectra is bounded and verified") {
  Group g = make_group({8});
  WeightedSet s = set_of(g, {0, 1, 4, 5});
  auto all = enumerate_spectra(s, 5);
  CHECK(!all.empty());
  CHECK(all.size() <= 5);
  for (auto& spec : all) CHECK(verify_spectral_pair(s, spec));
}

TEST_CASE("log-Hadamard search small cases") {
  auto m2 = log_hadamard_search(2, 2);
  REQUIRE(m2.has_value());
  CHECK(*m2 == std::vector<std::vector<i64>>{{0, 0}, {0, 1}});

  auto m3 = log_hadamard_search(3, 3);
  REQUIRE(m3.has_value());
  CHECK(*m3 == std::vector<std::vector<i64>>{{0, 0, 0}, {0, 1, 2}, {0, 2, 1}});

  CHECK(!log_hadamard_search(4, 3).has_value());  // balance needs t | k
}

TEST_CASE("log-Hadamard 6x6 over Z_3 exists and its columns are spectral") {
  auto m = log_hadamard_search(6, 3);
  REQUIRE(m.has_value());
  // defining property
  for (size_t i = 0; i < 6; i++)
    for (size_t j = i + 1; j < 6; j++) {
      std::vector<i64> cnt(3, 0);
      for (size_t c = 0; c < 6; c++) cnt[static_cast<size_t>((((*m)[i][c] - (*m)[j][c]) % 3 + 3) % 3)]++;
      CHECK(cnt == std::vector<i64>{2, 2, 2});
    }
  // columns, read as elements of Z_3^6, with the rows of the matrix as a
  // spectrum witness
  Group g = make_group({3, 3, 3, 3, 3, 3});
  std::vector<i64> cols;
  for (size_t c = 0; c < 6; c++) {
    std::vector<i64> coords;
    for (size_t rw = 0; rw < 6; rw++) coords.push_back((*m)[rw][c]);
    cols.push_back(g.index_of(coords));
  }
  WeightedSet s = WeightedSet::from_indices(g, cols);
  std::vector<i64> basis;
  for (size_t i = 0; i < 6; i++) {
    std::vector<i64> e(6, 0);
    e[i] = 1;
    basis.push_back(g.index_of(e));
  }
  CHECK(verify_spectral_pair(s, basis));
}
