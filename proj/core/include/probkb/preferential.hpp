#pragma once

#include <optional>
#include <vector>

#include "probkb/coherence.hpp"
#include "probkb/kb.hpp"
#include "probkb/semantics.hpp"

namespace probkb {

// Smallest level j such that L together with the rank-threshold set P_{>=j}
// has a model giving phi positive probability. nullopt when even L u P_{>=k+1}
// (= L alone) admits none.
std::optional<int> min_rank_with_positive(const KnowledgeBase& kb, const ZPartition& zp,
                                          const Event& phi);

// Tight bounds of Pr(psi|phi) under the rank-threshold relaxation: drop whole
// levels bottom-up until phi can be positive, then take the logical bounds of
// what remains. Requires a g-coherent KB.
TightResult z_tight(const KnowledgeBase& kb, const ConditionalEvent& q,
                    bool want_witnesses = false);
TightResult z_tight(const KnowledgeBase& kb, const ZPartition& zp, const ConditionalEvent& q,
                    bool want_witnesses = false);

bool z_entails(const KnowledgeBase& kb, const ConditionalConstraint& c);

// Per-level satisfaction counts of a subset D of P, most specific level first.
struct SatisfactionProfile {
  std::vector<int> counts;  // counts[0] = |D n P_k|, ..., counts[k] = |D n P_0|
};

// Three-way lexicographic comparison; positive when a is preferable to b.
int lex_compare(const SatisfactionProfile& a, const SatisfactionProfile& b);

// All lexicographically maximal subsets D of P such that L u D has a model
// giving phi positive probability, as bitmasks over kb.conditional. Empty when
// no subset qualifies. Capped at |P| <= max_p.
std::vector<uint32_t> lex_optimal_subsets(const KnowledgeBase& kb, const ZPartition& zp,
                                          const Event& phi, int max_p = 12);

// Union hull of the logical bounds of q under each lex-optimal subset.
// Requires a g-coherent KB.
TightResult lex_tight(const KnowledgeBase& kb, const ConditionalEvent& q,
                      bool want_witnesses = false);
TightResult lex_tight(const KnowledgeBase& kb, const ZPartition& zp, const ConditionalEvent& q,
                      bool want_witnesses = false);

bool lex_entails(const KnowledgeBase& kb, const ConditionalConstraint& c);

}  // namespace probkb
