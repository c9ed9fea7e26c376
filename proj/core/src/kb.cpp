#include "probkb/kb.hpp"

#include <set>

namespace probkb {

TightInterval TightInterval::closed(Rational lo, Rational hi) {
  if (lo > hi) throw StructuralError("closed interval requires lower <= upper");
  return TightInterval{std::move(lo), std::move(hi)};
}

bool TightInterval::contains(const TightInterval& inner) const {
  if (inner.is_empty()) return true;
  if (is_empty()) return false;
  return lower <= inner.lower && inner.upper <= upper;
}

ValidationReport validate_kb(const KnowledgeBase& kb, int atom_cap) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string msg) {
    report.violations.push_back({kind, std::move(msg)});
  };

  if (kb.atoms.size() > atom_cap)
    add(ViolationKind::AtomCap, "atom table has " + std::to_string(kb.atoms.size()) +
                                    " atoms, cap is " + std::to_string(atom_cap));

  std::set<std::string> seen;
  for (const auto& name : kb.atoms.names) {
    if (!AtomTable::valid_name(name))
      add(ViolationKind::AtomName, "invalid atom name: " + name);
    if (!seen.insert(name).second)
      add(ViolationKind::AtomName, "duplicate atom name: " + name);
  }

  int n = kb.atoms.size();
  auto check_event = [&](const Event& e, const std::string& where) {
    if (e.max_atom() >= n)
      add(ViolationKind::AtomIndex, "event in " + where + " refers to atom index " +
                                        std::to_string(e.max_atom()) +
                                        " outside the atom table");
  };
  for (size_t i = 0; i < kb.logical.size(); ++i) {
    check_event(kb.logical[i].antecedent, "L[" + std::to_string(i) + "]");
    check_event(kb.logical[i].consequent, "L[" + std::to_string(i) + "]");
  }
  for (size_t i = 0; i < kb.conditional.size(); ++i) {
    const auto& c = kb.conditional[i];
    check_event(c.cond.antecedent, "P[" + std::to_string(i) + "]");
    check_event(c.cond.consequent, "P[" + std::to_string(i) + "]");
    if (c.lower < 0 || c.upper > 1)
      add(ViolationKind::IntervalRange,
          "P[" + std::to_string(i) + "] bounds must lie in [0, 1]");
    if (c.lower > c.upper)
      add(ViolationKind::IntervalOrder,
          "P[" + std::to_string(i) + "] has lower > upper");
  }

  if (!report.violations.empty()) return report;  // events unsafe to evaluate

  if (kb.strict_distinctness) {
    // Condition (ii): no two members of P over logically equivalent
    // conditional events (psi&phi and phi both equivalent).
    for (size_t i = 0; i < kb.conditional.size(); ++i) {
      for (size_t j = i + 1; j < kb.conditional.size(); ++j) {
        const auto& a = kb.conditional[i].cond;
        const auto& b = kb.conditional[j].cond;
        if (equivalent(a.antecedent, b.antecedent, n) &&
            equivalent(Event::land(a.consequent, a.antecedent),
                       Event::land(b.consequent, b.antecedent), n))
          add(ViolationKind::Distinctness,
              "P[" + std::to_string(i) + "] and P[" + std::to_string(j) +
                  "] constrain the same conditional event");
      }
    }
  }
  return report;
}

std::vector<uint32_t> zero_worlds(const std::vector<LogicalConstraint>& logical,
                                  const WorldSpace& ws) {
  std::vector<char> zero(ws.size(), 0);
  for (const auto& lc : logical) {
    auto bad = world_mask(Event::land(lc.antecedent, Event::lnot(lc.consequent)), ws);
    for (uint32_t i = 0; i < ws.size(); ++i)
      if (bad[i]) zero[i] = 1;
  }
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < ws.size(); ++i)
    if (zero[i]) out.push_back(i);
  return out;
}

}  // namespace probkb
