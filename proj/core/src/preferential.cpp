#include "probkb/preferential.hpp"

#include <algorithm>
#include <numeric>

#include "probkb/errors.hpp"

namespace probkb {

namespace {

std::vector<ConditionalConstraint> pick(const KnowledgeBase& kb, const std::vector<int>& idx) {
  std::vector<ConditionalConstraint> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(kb.conditional[i]);
  return out;
}

std::vector<ConditionalConstraint> pick_mask(const KnowledgeBase& kb, uint32_t mask) {
  std::vector<ConditionalConstraint> out;
  for (size_t i = 0; i < kb.conditional.size(); ++i)
    if (mask & (1u << i)) out.push_back(kb.conditional[i]);
  return out;
}

ZPartition require_gcoherent(const KnowledgeBase& kb, const char* who) {
  ZPartitionResult zp = z_partition(kb);
  if (!zp.gcoherent())
    throw PreconditionError(std::string(who) + " requires a g-coherent KB");
  return *zp.partition;
}

}  // namespace

std::optional<int> min_rank_with_positive(const KnowledgeBase& kb, const ZPartition& zp,
                                          const Event& phi) {
  WorldSpace ws = enumerate_worlds(kb.atoms);
  for (int j = 0; j <= zp.num_levels(); ++j) {
    if (detail::positive_model_exists(kb.logical, pick(kb, zp.at_least(j)), ws, phi))
      return j;
  }
  return std::nullopt;
}

TightResult z_tight(const KnowledgeBase& kb, const ZPartition& zp, const ConditionalEvent& q,
                    bool want_witnesses) {
  std::optional<int> j = min_rank_with_positive(kb, zp, q.antecedent);
  if (!j) return TightResult{};
  WorldSpace ws = enumerate_worlds(kb.atoms);
  return tight_logical(kb.logical, pick(kb, zp.at_least(*j)), ws, q, want_witnesses);
}

TightResult z_tight(const KnowledgeBase& kb, const ConditionalEvent& q, bool want_witnesses) {
  return z_tight(kb, require_gcoherent(kb, "z_tight"), q, want_witnesses);
}

bool z_entails(const KnowledgeBase& kb, const ConditionalConstraint& c) {
  return TightInterval{c.lower, c.upper}.contains(z_tight(kb, c.cond).interval);
}

int lex_compare(const SatisfactionProfile& a, const SatisfactionProfile& b) {
  for (size_t i = 0; i < a.counts.size() && i < b.counts.size(); ++i) {
    if (a.counts[i] != b.counts[i]) return a.counts[i] < b.counts[i] ? -1 : 1;
  }
  return 0;
}

std::vector<uint32_t> lex_optimal_subsets(const KnowledgeBase& kb, const ZPartition& zp,
                                          const Event& phi, int max_p) {
  int n = static_cast<int>(kb.conditional.size());
  if (n > max_p)
    throw ResourceLimitError("lex_optimal_subsets capped at |P| <= " + std::to_string(max_p));
  WorldSpace ws = enumerate_worlds(kb.atoms);

  // Adding constraints only shrinks the model set, so if L alone has no
  // model with positive phi then no subset does.
  if (!detail::positive_model_exists(kb.logical, {}, ws, phi)) return {};

  int k = zp.num_levels();
  auto profile_of = [&](uint32_t mask) {
    SatisfactionProfile p;
    p.counts.assign(k, 0);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) ++p.counts[k - 1 - zp.rank[i]];
    return p;
  };

  std::vector<uint32_t> masks(1u << n);
  std::iota(masks.begin(), masks.end(), 0u);
  std::vector<SatisfactionProfile> profiles(masks.size());
  for (uint32_t m : masks) profiles[m] = profile_of(m);
  std::sort(masks.begin(), masks.end(), [&](uint32_t a, uint32_t b) {
    return lex_compare(profiles[a], profiles[b]) > 0;
  });

  // Walk profile groups from the most preferable down; the first group with a
  // feasible member yields exactly the optimal subsets.
  size_t i = 0;
  while (i < masks.size()) {
    size_t j = i;
    while (j < masks.size() && lex_compare(profiles[masks[i]], profiles[masks[j]]) == 0) ++j;
    std::vector<uint32_t> winners;
    for (size_t t = i; t < j; ++t)
      if (detail::positive_model_exists(kb.logical, pick_mask(kb, masks[t]), ws, phi))
        winners.push_back(masks[t]);
    if (!winners.empty()) {
      std::sort(winners.begin(), winners.end());
      return winners;
    }
    i = j;
  }
  return {};
}

TightResult lex_tight(const KnowledgeBase& kb, const ConditionalEvent& q, bool want_witnesses) {
  return lex_tight(kb, require_gcoherent(kb, "lex_tight"), q, want_witnesses);
}

TightResult lex_tight(const KnowledgeBase& kb, const ZPartition& zp, const ConditionalEvent& q,
                      bool want_witnesses) {
  std::vector<uint32_t> optimal = lex_optimal_subsets(kb, zp, q.antecedent);
  if (optimal.empty()) return TightResult{};

  WorldSpace ws = enumerate_worlds(kb.atoms);
  TightResult hull;
  bool first = true;
  for (uint32_t mask : optimal) {
    TightResult t = tight_logical(kb.logical, pick_mask(kb, mask), ws, q, want_witnesses);
    if (first || t.interval.lower < hull.interval.lower) {
      hull.interval.lower = t.interval.lower;
      hull.lower_witness = std::move(t.lower_witness);
    }
    if (first || t.interval.upper > hull.interval.upper) {
      hull.interval.upper = t.interval.upper;
      hull.upper_witness = std::move(t.upper_witness);
    }
    first = false;
  }
  return hull;
}

bool lex_entails(const KnowledgeBase& kb, const ConditionalConstraint& c) {
  return TightInterval{c.lower, c.upper}.contains(lex_tight(kb, c.cond).interval);
}

}  // namespace probkb
