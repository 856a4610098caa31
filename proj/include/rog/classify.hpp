#ifndef ROG_CLASSIFY_HPP
#define ROG_CLASSIFY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rog/cones.hpp"
#include "rog/pencil.hpp"
#include "rog/witness.hpp"

namespace rog {

enum class Verdict { ROG, NotROG, SufficientROG, Unknown };

enum class ReasonKind {
  CondI,
  CondII,
  SingleLMI,
  PairwisePsd,
  StructuredFamily,
  Witness
};

struct PairWeights {
  int i = 0, j = 0;
  std::array<double, 2> weights{};
};

struct RogCertificate {
  Verdict verdict = Verdict::Unknown;
  ReasonKind reason = ReasonKind::SingleLMI;

  std::optional<std::array<double, 2>> cond_i_weights;  // reason CondI
  bool cond_i_marginal = false;
  std::optional<CondIITriple> cond_ii_triple;           // (also) when it verifies
  std::vector<PairWeights> pairwise_table;              // reason PairwisePsd
  std::string family_tag;                               // reason StructuredFamily
  std::optional<WitnessBundle> witness;                 // reason Witness

  std::vector<std::pair<std::string, Subspace>> reduction_trace;
  std::map<std::string, double> residuals;
};

// Complete decision for a pair of constraint matrices; sense does not affect
// the verdict and is recorded only for downstream decomposition.
RogCertificate classify_two(const SymMatrix& M1, const SymMatrix& M2,
                            Sense sense, Rng& rng,
                            const std::optional<Vec>& w_seed = std::nullopt);

// Sufficient condition for m >= 2 constraints: every pair admits a psd
// combination. Returns SufficientROG or Unknown.
RogCertificate classify_pairwise(const std::vector<SymMatrix>& Ms, Rng& rng);

// Structured families are ROG by construction; validates the tag.
RogCertificate classify_structured(const ConeSpec& spec);

std::string verdict_name(Verdict v);
std::string reason_name(ReasonKind r);

}  // namespace rog

#endif
