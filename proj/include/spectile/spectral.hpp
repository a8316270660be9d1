#ifndef SPECTILE_SPECTRAL_HPP
#define SPECTILE_SPECTRAL_HPP

#include <optional>
#include <vector>

#include "spectile/cyclo.hpp"
#include "spectile/group.hpp"

// Exact Fourier-zero tests for characters of product groups, the
// orthogonality graph, spectrum search by branch-and-bound clique, and the
// log-Hadamard backtracking search. No floating point anywhere: a character
// sum vanishes iff Phi_N divides the associated integer polynomial.

namespace spectile {

// <lambda, s> = sum_i lambda_i * s_i * (N / n_i) mod N, N the exponent.
i64 character_pairing(const Group& g, i64 lambda, i64 s);

bool fourier_zero(const WeightedSet& s, i64 lambda);

// { lambda in G : the character sum over S vanishes }, canonical order.
std::vector<i64> zero_set(const WeightedSet& s);

struct SpectralCertificate {
  std::vector<i64> spectrum;  // sorted, contains 0
};

bool verify_spectral_pair(const WeightedSet& s, const std::vector<i64>& lambda);

// Exhaustive branch-and-bound clique search in the orthogonality graph;
// an empty result is a proof that no spectrum exists.
std::optional<SpectralCertificate> is_spectral(const WeightedSet& s);

// Bounded enumeration of spectra (each sorted, containing 0).
std::vector<std::vector<i64>> enumerate_spectra(const WeightedSet& s, std::size_t max_count);

// k x k matrix over Z_t, first row and column zero, every pair of distinct
// rows differing in a balanced way (each symbol of Z_t equally often).
std::optional<std::vector<std::vector<i64>>> log_hadamard_search(i64 k, i64 t);

}  // namespace spectile

#endif
