#pragma once

#include <string>
#include <utility>
#include <vector>

#include "probkb/rational.hpp"

namespace probkb {

enum class Relation { LessEq, Eq, GreaterEq };

// Sparse row: sum of coeff * x_var (relation) rhs. All variables are
// implicitly nonnegative.
struct LinearConstraint {
  std::vector<std::pair<int, Rational>> coeffs;
  Relation rel = Relation::Eq;
  Rational rhs;
};

struct LinearProgram {
  int num_vars = 0;
  std::vector<LinearConstraint> constraints;
};

enum class LPStatus { Infeasible, Optimal, Unbounded };
enum class Sense { Min, Max };

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Rational value;                 // optimal objective (Optimal only)
  std::vector<Rational> witness;  // primal solution, size num_vars (Optimal only)
  std::vector<Rational> duals;    // one multiplier per constraint (Optimal only)
};

struct SolveOptions {
  long pivot_limit = 200000;
  // Stop phase 2 of a Max solve as soon as the objective is > 0. The
  // returned point is feasible with positive objective but not optimal;
  // used for positivity decisions where only sign matters.
  bool stop_at_positive = false;
};

// Exact two-phase primal simplex with Bland's anti-cycling rule on a dense
// rational tableau. Deterministic. Throws ResourceLimitError past the pivot
// limit; malformed programs throw StructuralError.
LPOutcome solve_lp(const LinearProgram& lp, const std::vector<Rational>& objective,
                   Sense sense, const SolveOptions& opts = {});

bool feasible(const LinearProgram& lp);

// Independent optimality check: walks every constraint, dual sign condition,
// and complementary-slackness condition in exact arithmetic. Shares no code
// with the pivoting path.
bool verify_outcome(const LinearProgram& lp, const std::vector<Rational>& objective,
                    Sense sense, const LPOutcome& outcome);

// Plain-text listing (one line per constraint) for oracle cross-checks.
std::string dump_lp(const LinearProgram& lp);

}  // namespace probkb
