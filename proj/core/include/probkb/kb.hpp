#pragma once

#include <string>
#include <vector>

#include "probkb/event.hpp"
#include "probkb/rational.hpp"

namespace probkb {

// psi <= phi: every model assigns Pr(psi & phi) = Pr(phi).
struct LogicalConstraint {
  Event consequent;  // psi
  Event antecedent;  // phi

  bool operator==(const LogicalConstraint&) const = default;
};

// (psi | phi)[l, u]: Pr(phi) = 0 or Pr(psi | phi) in [l, u].
struct ConditionalConstraint {
  ConditionalEvent cond;
  Rational lower;
  Rational upper;

  bool operator==(const ConditionalConstraint&) const = default;
};

struct KnowledgeBase {
  AtomTable atoms;
  std::vector<LogicalConstraint> logical;          // L
  std::vector<ConditionalConstraint> conditional;  // P
  // When false, P may mention the same conditional event more than once;
  // the constraints are then read conjunctively. Used for the augmented KBs
  // built during coherent-interval search.
  bool strict_distinctness = true;
};

// Closed interval [lower, upper]; (1, 0) is the distinguished empty encoding
// used for zero-probability conditioning.
struct TightInterval {
  Rational lower{1};
  Rational upper{0};

  static TightInterval closed(Rational lo, Rational hi);
  static TightInterval empty() { return TightInterval{}; }

  bool is_empty() const { return lower > upper; }
  bool contains(const Rational& v) const { return !is_empty() && lower <= v && v <= upper; }
  // Empty inner is contained in everything; an empty outer contains only
  // empty inners.
  bool contains(const TightInterval& inner) const;

  bool operator==(const TightInterval& o) const { return lower == o.lower && upper == o.upper; }
};

enum class ViolationKind {
  IntervalOrder,     // l > u
  IntervalRange,     // bound outside [0, 1]
  Distinctness,      // two members of P share an equivalent conditional event
  AtomCap,           // atom table exceeds the world-enumeration cap
  AtomName,          // malformed or duplicate atom name
  AtomIndex,         // event refers to an atom outside the table
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Collects every violated well-formedness condition; never throws.
ValidationReport validate_kb(const KnowledgeBase& kb, int atom_cap = kDefaultAtomCap);

// Worlds forced to probability zero by L: those satisfying phi & !psi for
// some psi <= phi in L. Sorted by index.
std::vector<uint32_t> zero_worlds(const std::vector<LogicalConstraint>& logical,
                                  const WorldSpace& ws);

}  // namespace probkb
