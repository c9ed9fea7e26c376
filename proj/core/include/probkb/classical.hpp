#pragma once

#include <optional>
#include <vector>

#include "probkb/kb.hpp"

namespace probkb {

// Classical default psi <= phi.
struct Default {
  Event consequent;
  Event antecedent;
};

struct ClassicalKB {
  AtomTable atoms;
  std::vector<LogicalConstraint> logical;
  std::vector<Default> defaults;
};

// Translates a KB whose conditional constraints all have interval [1, 1] into
// its classical default counterpart. Throws on any other interval.
ClassicalKB gamma(const KnowledgeBase& kb);

struct ClassicalPartition {
  std::vector<std::vector<int>> levels;  // indices into ckb.defaults
  std::vector<int> rank;
};

// Greedy world-based toleration partition: a world tolerates a default within
// a residue if it satisfies L, the default's phi & psi, and the material
// counterpart of every residue default. nullopt marks inconsistency.
std::optional<ClassicalPartition> classical_z_partition(const ClassicalKB& ckb);

// Ranking-based System Z entailment over worlds.
bool classical_z_entails(const ClassicalKB& ckb, const Default& d);

// Lexicographic entailment over worlds compared by per-level counts of
// satisfied defaults, most specific level first.
bool classical_lex_entails(const ClassicalKB& ckb, const Default& d);

// Monotone entailment: every world satisfying L and every materialization
// satisfies antecedent -> consequent.
bool classical_logical_entails(const ClassicalKB& ckb, const Default& d);

}  // namespace probkb
