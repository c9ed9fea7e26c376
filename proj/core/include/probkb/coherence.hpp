#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "probkb/kb.hpp"
#include "probkb/semantics.hpp"

namespace probkb {

// Ordered partition (P_0, ..., P_k) of P by iterated toleration, plus the
// induced constraint ranking z.
struct ZPartition {
  std::vector<std::vector<int>> levels;  // indices into kb.conditional
  std::vector<int> rank;                 // rank[i] = level of constraint i

  int num_levels() const { return static_cast<int>(levels.size()); }
  // Constraint indices with rank >= level (the rank-threshold set P_{>=j}).
  std::vector<int> at_least(int level) const;
};

struct ZPartitionResult {
  std::optional<ZPartition> partition;
  std::vector<int> stuck_residue;  // nonempty iff partition failed

  bool gcoherent() const { return partition.has_value(); }
};

// Greedy fixpoint: each level takes every residue constraint tolerated by the
// residue under L. Failure (a stuck nonempty residue) means not g-coherent.
ZPartitionResult z_partition(const KnowledgeBase& kb);

bool is_gcoherent(const KnowledgeBase& kb);

// No model of L u P' verifies c.
bool in_conflict(const std::vector<LogicalConstraint>& logical,
                 const std::vector<ConditionalConstraint>& subset,
                 const WorldSpace& ws, const ConditionalConstraint& c);

// Exhaustive search over conditional-constraint rankings; test-only oracle
// for is_gcoherent. Exponential, capped at |P| <= max_p.
bool gcoherence_oracle(const KnowledgeBase& kb, int max_p = 5);

struct GTightOptions {
  Rational tolerance{1, 1000000};
  int grid_depth = 10;  // dyadic seed-search depth when no candidate is coherent
  // Sweep a 1/64 grid and throw if the coherent-p set looks disconnected.
  bool sweep_diagnostic = false;
};

struct GTightResult {
  TightInterval interval;
  bool lower_exact = true;
  bool upper_exact = true;

  bool exact() const { return lower_exact && upper_exact; }
};

// Tight bounds of {p : (L, P u {(q)[p,p]}) is g-coherent}. Endpoints are
// snapped to a finite candidate set when the coherence decision flips there,
// otherwise reported to within `tolerance` with the exact flag cleared.
// The engine form keeps the z-partition and the base toleration memo alive
// across queries against the same KB.
class GTightEngine {
 public:
  explicit GTightEngine(const KnowledgeBase& kb);  // throws if not g-coherent
  GTightResult tight(const ConditionalEvent& q, const GTightOptions& opts = {});
  const ZPartition& partition() const { return zp_; }

 private:
  struct Rows {
    std::vector<char> phi;     // over cols_
    std::vector<char> psiphi;  // over cols_
  };

  std::vector<char> mask_cols(const std::vector<char>& world_set) const;
  bool toleration_feasible(uint32_t mask, const Rows* aug, const Rational& p,
                           const std::vector<char>& norm);
  bool base_tolerates(uint32_t mask, int c);
  bool augmented_coherent(const Rows& aug, const Rational& p);

  KnowledgeBase kb_;
  WorldSpace ws_;
  ZPartition zp_;
  std::vector<uint32_t> cols_;  // world index of each LP variable
  std::vector<Rows> rows_;
  std::unordered_map<uint64_t, bool> base_memo_;  // (mask, constraint) -> tolerated
};

GTightResult gcoherent_tight(const KnowledgeBase& kb, const ConditionalEvent& q,
                             const GTightOptions& opts = {});

struct GEntailResult {
  bool entailed = false;
  bool exact = true;
  TightInterval tight;
};

GEntailResult gcoherent_entails(const KnowledgeBase& kb, const ConditionalConstraint& c,
                                const GTightOptions& opts = {});

}  // namespace probkb
