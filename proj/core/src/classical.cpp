#include "probkb/classical.hpp"

#include <algorithm>
#include <limits>

#include "probkb/errors.hpp"
#include "probkb/rational.hpp"

namespace probkb {

namespace {

bool satisfies_logical(const World& w, const std::vector<LogicalConstraint>& logical) {
  for (const auto& lc : logical)
    if (eval_event(w, lc.antecedent) && !eval_event(w, lc.consequent)) return false;
  return true;
}

bool satisfies_material(const World& w, const Default& d) {
  return !eval_event(w, d.antecedent) || eval_event(w, d.consequent);
}

ClassicalPartition require_consistent(const ClassicalKB& ckb, const char* who) {
  auto part = classical_z_partition(ckb);
  if (!part) throw PreconditionError(std::string(who) + " requires a consistent default base");
  return *part;
}

}  // namespace

ClassicalKB gamma(const KnowledgeBase& kb) {
  ClassicalKB out;
  out.atoms = kb.atoms;
  out.logical = kb.logical;
  for (const auto& c : kb.conditional) {
    if (c.lower != 1 || c.upper != 1)
      throw StructuralError("gamma requires interval [1, 1], got [" + to_fraction(c.lower) +
                            ", " + to_fraction(c.upper) + "]");
    out.defaults.push_back(Default{c.cond.consequent, c.cond.antecedent});
  }
  return out;
}

std::optional<ClassicalPartition> classical_z_partition(const ClassicalKB& ckb) {
  WorldSpace ws = enumerate_worlds(ckb.atoms);
  std::vector<int> residue(ckb.defaults.size());
  for (size_t i = 0; i < residue.size(); ++i) residue[i] = static_cast<int>(i);

  auto tolerated = [&](int idx, const std::vector<int>& res) {
    const Default& d = ckb.defaults[idx];
    for (uint32_t i = 0; i < ws.size(); ++i) {
      World w = ws.world(i);
      if (!satisfies_logical(w, ckb.logical)) continue;
      if (!eval_event(w, d.antecedent) || !eval_event(w, d.consequent)) continue;
      bool ok = true;
      for (int j : res)
        if (!satisfies_material(w, ckb.defaults[j])) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  };

  ClassicalPartition part;
  part.rank.assign(ckb.defaults.size(), -1);
  while (!residue.empty()) {
    std::vector<int> level, rest;
    for (int i : residue)
      (tolerated(i, residue) ? level : rest).push_back(i);
    if (level.empty()) return std::nullopt;
    for (int i : level) part.rank[i] = static_cast<int>(part.levels.size());
    part.levels.push_back(std::move(level));
    residue = std::move(rest);
  }
  return part;
}

bool classical_z_entails(const ClassicalKB& ckb, const Default& d) {
  ClassicalPartition part = require_consistent(ckb, "classical_z_entails");
  WorldSpace ws = enumerate_worlds(ckb.atoms);
  constexpr long kInf = std::numeric_limits<long>::max();

  auto kappa = [&](const World& w) -> long {
    if (!satisfies_logical(w, ckb.logical)) return kInf;
    long worst = -1;
    for (size_t i = 0; i < ckb.defaults.size(); ++i)
      if (!satisfies_material(w, ckb.defaults[i])) worst = std::max(worst, (long)part.rank[i]);
    return worst + 1;
  };

  auto min_rank = [&](auto&& pred) {
    long best = kInf;
    for (uint32_t i = 0; i < ws.size(); ++i) {
      World w = ws.world(i);
      if (pred(w)) best = std::min(best, kappa(w));
    }
    return best;
  };

  long on_alpha = min_rank([&](const World& w) { return eval_event(w, d.antecedent); });
  if (on_alpha == kInf) return true;
  long with_beta = min_rank([&](const World& w) {
    return eval_event(w, d.antecedent) && eval_event(w, d.consequent);
  });
  long against_beta = min_rank([&](const World& w) {
    return eval_event(w, d.antecedent) && !eval_event(w, d.consequent);
  });
  return with_beta < against_beta;
}

bool classical_lex_entails(const ClassicalKB& ckb, const Default& d) {
  ClassicalPartition part = require_consistent(ckb, "classical_lex_entails");
  WorldSpace ws = enumerate_worlds(ckb.atoms);
  int k = static_cast<int>(part.levels.size());

  // Per-level satisfied-default counts, most specific level first; larger is
  // preferable.
  auto profile = [&](const World& w) {
    std::vector<int> counts(k, 0);
    for (size_t i = 0; i < ckb.defaults.size(); ++i)
      if (satisfies_material(w, ckb.defaults[i])) ++counts[k - 1 - part.rank[i]];
    return counts;
  };

  std::vector<int> best;
  bool any = false;
  std::vector<uint32_t> alpha_worlds;
  for (uint32_t i = 0; i < ws.size(); ++i) {
    World w = ws.world(i);
    if (!satisfies_logical(w, ckb.logical) || !eval_event(w, d.antecedent)) continue;
    alpha_worlds.push_back(i);
    std::vector<int> p = profile(w);
    if (!any || p > best) {
      best = std::move(p);
      any = true;
    }
  }
  if (!any) return true;
  for (uint32_t i : alpha_worlds) {
    World w = ws.world(i);
    if (profile(w) == best && !eval_event(w, d.consequent)) return false;
  }
  return true;
}

bool classical_logical_entails(const ClassicalKB& ckb, const Default& d) {
  WorldSpace ws = enumerate_worlds(ckb.atoms);
  for (uint32_t i = 0; i < ws.size(); ++i) {
    World w = ws.world(i);
    if (!satisfies_logical(w, ckb.logical)) continue;
    bool all_material = true;
    for (const auto& df : ckb.defaults)
      if (!satisfies_material(w, df)) {
        all_material = false;
        break;
      }
    if (!all_material) continue;
    if (eval_event(w, d.antecedent) && !eval_event(w, d.consequent)) return false;
  }
  return true;
}

}  // namespace probkb

