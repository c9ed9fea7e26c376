#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "probkb/kb.hpp"
#include "probkb/semantics.hpp"

namespace probkb {

// Algorithm identifier of the pseudo-random source, recorded in reports so
// corpora can be regenerated bit-for-bit.
inline constexpr const char* kRngId = "mt19937_64";

struct GenParams {
  uint64_t seed = 0;
  int num_atoms = 3;        // <= 5
  int num_logical = 1;      // <= 3
  int num_conditional = 3;  // <= 5
  std::vector<Rational> bound_grid;  // defaulted in random_kb when empty
  bool only_unit_intervals = false;
  int rejection_budget = 10000;
};

std::vector<Rational> default_bound_grid();

// Rejection-samples structurally valid KBs until one passes the coherence
// check. Deterministic in the seed; events come from a depth-limited grammar
// over the atom set.
KnowledgeBase random_kb(const GenParams& p);

// All (psi | phi) with psi a literal and phi a literal or a conjunction of
// two literals on distinct atoms. Deterministic order.
std::vector<ConditionalEvent> standard_query_family(const KnowledgeBase& kb);

// Adds negated two-literal conjunctions as antecedents (depth-2 grammar);
// used by the classical cross-check suite.
std::vector<ConditionalEvent> depth2_query_family(const KnowledgeBase& kb);

struct PropertyOutcome {
  int passes = 0;
  int failures = 0;
  // Informational rows (the coherence-layer monotonicity and irrelevance
  // probes) may fail without failing the suite.
  bool required = true;
  std::vector<std::string> counterexamples;
};

struct PropertyReport {
  std::string rng_id = kRngId;
  std::map<std::string, PropertyOutcome> rows;  // "Property/semantics"

  void record(const std::string& key, bool ok, const std::string& counterexample,
              bool required = true);
  void merge(const PropertyReport& other);
  bool required_pass() const;
  std::string serialize() const;  // deterministic text form
};

struct SuiteOptions {
  Rational g_tolerance{1, 64};  // slack for coherence-layer comparisons
  bool check_g = true;
  bool check_classical = true;  // applies only to all-[1,1] KBs
};

// Postulate, containment-chain, and coincidence checks across the four
// entailment relations, on the given query family. Requires a g-coherent KB.
PropertyReport check_property_suite(const KnowledgeBase& kb,
                                    const std::vector<ConditionalEvent>& queries,
                                    const SuiteOptions& opts = {});

// Vertices of the model polytope of L u P obtained by maximizing seeded
// random rational objectives. Throws if unsatisfiable.
std::vector<DistributionVector> sample_extreme_models(
    const std::vector<LogicalConstraint>& logical,
    const std::vector<ConditionalConstraint>& conditional, const WorldSpace& ws, int n,
    uint64_t seed);

struct HarnessParams {
  uint64_t seed = 7;
  int kbs = 20;
  int max_atoms = 4;
  bool only_unit_intervals = false;
  bool include_fixtures = true;  // the two documented expected-negative KBs
  SuiteOptions suite;
};

PropertyReport run_harness(const HarnessParams& hp);

}  // namespace probkb
