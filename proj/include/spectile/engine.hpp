#ifndef SPECTILE_ENGINE_HPP
#define SPECTILE_ENGINE_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectile/group.hpp"
#include "spectile/tiling.hpp"

// Constructive conversion of spectral pairs of Z_{p^2 q^2 r} into verified
// tiling complements, replaying a case analysis driven by the gcd class
// gcd(|G|, |S|). Every structural fact the argument relies on is re-verified
// on the input before it is used; any failed check aborts with a diagnostic
// instead of guessing. The companion route for |G|/gcd(|G|,|S|) a prime
// power works on any cyclic group via p-adic digit structure.

namespace spectile {

struct PqrContext {
  i64 p = 0, q = 0, r = 0;
  Group group;              // Z_{p^2 q^2 r}
  bool hypothesis_ok = false;  // p^2 q^2 < r
};

PqrContext make_pqr_context(i64 p, i64 q, i64 r);

i64 gcd_class(const PqrContext& ctx, const WeightedSet& s);

// Table of twelve Z[x] divisibilities of the mask of a set, in four rows of
// three, with the implied mod-q divisibility per row. The implication
// (any entry in a row forces the row's mod-q divisibility) is evaluated on
// both sides, never assumed.
struct DivisibilityTable {
  std::array<std::array<i64, 3>, 4> index{};   // cyclotomic indices per row
  std::array<std::array<bool, 3>, 4> over_z{};
  std::array<i64, 4> fq_index{};               // collapsed index per row
  std::array<bool, 4> over_fq{};
  std::array<bool, 4> row_any{};               // some Z entry in the row holds
  bool implications_ok = true;
  i64 collapse_prime = 0;
};

DivisibilityTable divisibility_table(const PqrContext& ctx, const WeightedSet& w);

struct TraceStep {
  std::string case_tag;
  std::string rule;
  std::vector<std::string> facts;
};

struct CaseTrace {
  std::vector<TraceStep> steps;
  bool swapped_roles = false;
  bool best_effort = false;
};

enum class EngineErrorKind { NotSpectral, Hypothesis, InternalContradiction };

class EngineError : public std::runtime_error {
 public:
  EngineError(EngineErrorKind k, const std::string& msg, CaseTrace t)
      : std::runtime_error(msg), kind(k), trace(std::move(t)) {}
  EngineErrorKind kind;
  CaseTrace trace;
};

struct EngineResult {
  TilingCertificate certificate;
  CaseTrace trace;
};

// Main driver. Requires a verified spectral pair; with best_effort the
// p^2 q^2 < r hypothesis may fail and the engine tries anyway, flagging the
// trace. Throws EngineError on bad input or any internal contradiction.
EngineResult spectral_to_tile(const PqrContext& ctx, const WeightedSet& s,
                              const std::vector<i64>& lambda, bool best_effort = false);

// Under Phi_n | m_S, Phi_p and Phi_q not dividing m_Lambda: S must be a
// union of order-r-subgroup cosets, and then tiles. Hypothesis violations
// raise std::invalid_argument; a failed conclusion raises EngineError.
std::optional<TilingCertificate> claim_union_zr(const PqrContext& ctx, const WeightedSet& s,
                                                const std::vector<i64>& lambda);

// Appendix route: cyclic G with |G| / gcd(|G|, |S|) = p^k. Counts the
// prime-power divisibilities of the spectrum mask, derives the forbidden
// difference orders, checks the per-coset digit structure and assembles the
// complement from the free digit positions.
EngineResult big_set_spectral_to_tile(const WeightedSet& s, const std::vector<i64>& lambda);

}  // namespace spectile

#endif
