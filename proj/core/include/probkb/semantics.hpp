#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "probkb/kb.hpp"
#include "probkb/lp.hpp"

namespace probkb {

// Explicit rational probability function over all worlds.
struct DistributionVector {
  std::vector<Rational> masses;  // indexed by world index

  bool is_valid() const;  // nonnegative, sums to exactly 1
  Rational prob(const Event& e, const WorldSpace& ws) const;
  // Pr(psi & phi) / Pr(phi); requires Pr(phi) > 0.
  Rational cond_prob(const ConditionalEvent& c, const WorldSpace& ws) const;
};

// Formula AST: conditional constraints closed under negation and conjunction.
// Positivity(phi) is sugar for !(phi | true)[0, 0].
class ProbabilisticFormula {
 public:
  enum class Kind { Constraint, Not, And };

  static ProbabilisticFormula constraint(ConditionalConstraint c);
  static ProbabilisticFormula lnot(ProbabilisticFormula f);
  static ProbabilisticFormula land(ProbabilisticFormula a, ProbabilisticFormula b);
  static ProbabilisticFormula positivity(const Event& phi);

  Kind kind() const;
  const ConditionalConstraint& constraint_value() const;
  ProbabilisticFormula child() const;
  ProbabilisticFormula left() const;
  ProbabilisticFormula right() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

// LP whose feasible points are exactly the models of L u P: one variable per
// world, zero-pins for the worlds excluded by L, total mass 1, and the
// homogeneous pair l*Pr(phi) <= Pr(psi&phi) <= u*Pr(phi) per constraint.
LinearProgram encode(const std::vector<LogicalConstraint>& logical,
                     const std::vector<ConditionalConstraint>& conditional,
                     const WorldSpace& ws);

bool satisfiable(const std::vector<LogicalConstraint>& logical,
                 const std::vector<ConditionalConstraint>& conditional,
                 const WorldSpace& ws);
bool satisfiable(const KnowledgeBase& kb);

// max Pr(phi) over the models of L u P. Caller must ensure satisfiability.
Rational max_prob(const std::vector<LogicalConstraint>& logical,
                  const std::vector<ConditionalConstraint>& conditional,
                  const WorldSpace& ws, const Event& phi);

bool eval_formula(const DistributionVector& d, const ProbabilisticFormula& f,
                  const WorldSpace& ws);
bool eval_constraint(const DistributionVector& d, const ConditionalConstraint& c,
                     const WorldSpace& ws);

// verifies: Pr(phi) > 0 and the constraint holds; falsifies: Pr(phi) > 0 and
// the constraint fails.
bool verifies(const DistributionVector& d, const ConditionalConstraint& c,
              const WorldSpace& ws);
bool falsifies(const DistributionVector& d, const ConditionalConstraint& c,
               const WorldSpace& ws);

// Some model of L u P verifies C.
bool tolerates(const std::vector<LogicalConstraint>& logical,
               const std::vector<ConditionalConstraint>& conditional,
               const WorldSpace& ws, const ConditionalConstraint& c);

struct TightResult {
  TightInterval interval;
  std::optional<DistributionVector> lower_witness;
  std::optional<DistributionVector> upper_witness;
};

// Tight bounds of Pr(psi|phi) over the models of L u P with Pr(phi) > 0,
// via the Charnes-Cooper normalization on phi. Empty encoding (1,0) when no
// such model exists.
TightResult tight_logical(const std::vector<LogicalConstraint>& logical,
                          const std::vector<ConditionalConstraint>& conditional,
                          const WorldSpace& ws, const ConditionalEvent& q,
                          bool want_witnesses = false);

bool entails_logical(const KnowledgeBase& kb, const ConditionalConstraint& c);

namespace detail {

// Homogeneous system over the worlds L does not pin to zero.
struct WorldSystem {
  std::vector<uint32_t> cols;  // world index of each LP variable
  LinearProgram lp;

  std::vector<Rational> objective(const std::vector<char>& world_set) const;
  void add_sum_row(const std::vector<char>& world_set, Relation rel, Rational rhs);
};

WorldSystem build_homogeneous(const std::vector<LogicalConstraint>& logical,
                              const std::vector<ConditionalConstraint>& conditional,
                              const WorldSpace& ws);

// Does L u P have a model with Pr(phi) > 0?
bool positive_model_exists(const std::vector<LogicalConstraint>& logical,
                           const std::vector<ConditionalConstraint>& conditional,
                           const WorldSpace& ws, const Event& phi);

}  // namespace detail

}  // namespace probkb
