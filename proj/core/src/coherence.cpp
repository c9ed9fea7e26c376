#include "probkb/coherence.hpp"

#include <algorithm>
#include <map>

#include "probkb/errors.hpp"

namespace probkb {

std::vector<int> ZPartition::at_least(int level) const {
  std::vector<int> out;
  for (size_t i = 0; i < rank.size(); ++i)
    if (rank[i] >= level) out.push_back(static_cast<int>(i));
  return out;
}

ZPartitionResult z_partition(const KnowledgeBase& kb) {
  WorldSpace ws = enumerate_worlds(kb.atoms);
  std::vector<int> residue(kb.conditional.size());
  for (size_t i = 0; i < residue.size(); ++i) residue[i] = static_cast<int>(i);

  ZPartition zp;
  zp.rank.assign(kb.conditional.size(), -1);
  while (!residue.empty()) {
    std::vector<ConditionalConstraint> residue_constraints;
    for (int i : residue) residue_constraints.push_back(kb.conditional[i]);
    std::vector<int> level, rest;
    for (int i : residue) {
      if (tolerates(kb.logical, residue_constraints, ws, kb.conditional[i]))
        level.push_back(i);
      else
        rest.push_back(i);
    }
    if (level.empty()) return ZPartitionResult{std::nullopt, residue};
    for (int i : level) zp.rank[i] = zp.num_levels();
    zp.levels.push_back(std::move(level));
    residue = std::move(rest);
  }
  return ZPartitionResult{std::move(zp), {}};
}

bool is_gcoherent(const KnowledgeBase& kb) { return z_partition(kb).gcoherent(); }

bool in_conflict(const std::vector<LogicalConstraint>& logical,
                 const std::vector<ConditionalConstraint>& subset,
                 const WorldSpace& ws, const ConditionalConstraint& c) {
  return !tolerates(logical, subset, ws, c);
}

bool gcoherence_oracle(const KnowledgeBase& kb, int max_p) {
  int n = static_cast<int>(kb.conditional.size());
  if (n > max_p)
    throw ResourceLimitError("gcoherence_oracle capped at |P| <= " + std::to_string(max_p));
  WorldSpace ws = enumerate_worlds(kb.atoms);

  // conflict[mask][c]: subset `mask` of P is under L in conflict with P[c].
  std::vector<std::vector<char>> conflict(1u << n, std::vector<char>(n));
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<ConditionalConstraint> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.push_back(kb.conditional[i]);
    for (int c = 0; c < n; ++c)
      conflict[mask][c] = in_conflict(kb.logical, subset, ws, kb.conditional[c]);
  }

  // All rankings sigma: P -> {0, ..., n}.
  std::vector<int> sigma(n, 0);
  for (;;) {
    bool admissible = true;
    for (uint32_t mask = 0; mask < (1u << n) && admissible; ++mask) {
      for (int c = 0; c < n && admissible; ++c) {
        if (!conflict[mask][c]) continue;
        bool lower_found = false;
        for (int i = 0; i < n; ++i)
          if ((mask & (1u << i)) && sigma[i] < sigma[c]) {
            lower_found = true;
            break;
          }
        if (!lower_found) admissible = false;
      }
    }
    if (admissible) return true;
    int pos = 0;
    while (pos < n && sigma[pos] == n) sigma[pos++] = 0;
    if (pos == n) return false;
    ++sigma[pos];
  }
}

GTightEngine::GTightEngine(const KnowledgeBase& kb) : kb_(kb) {
  ZPartitionResult zp = z_partition(kb_);
  if (!zp.gcoherent())
    throw PreconditionError("gcoherent_tight requires a g-coherent KB");
  zp_ = std::move(*zp.partition);
  ws_ = enumerate_worlds(kb_.atoms);

  std::vector<char> zero(ws_.size(), 0);
  for (uint32_t w : zero_worlds(kb_.logical, ws_)) zero[w] = 1;
  for (uint32_t w = 0; w < ws_.size(); ++w)
    if (!zero[w]) cols_.push_back(w);
  for (const auto& c : kb_.conditional) {
    Rows r;
    r.phi = mask_cols(world_mask(c.cond.antecedent, ws_));
    r.psiphi = mask_cols(world_mask(Event::land(c.cond.consequent, c.cond.antecedent), ws_));
    rows_.push_back(std::move(r));
  }
}

std::vector<char> GTightEngine::mask_cols(const std::vector<char>& world_set) const {
  std::vector<char> out(cols_.size());
  for (size_t j = 0; j < cols_.size(); ++j) out[j] = world_set[cols_[j]];
  return out;
}

namespace {

void append_interval_rows(LinearProgram& lp, const std::vector<char>& phi,
                          const std::vector<char>& psiphi, const Rational& lo,
                          const Rational& hi) {
  LinearConstraint clo, chi;
  clo.rel = Relation::GreaterEq;
  clo.rhs = 0;
  chi.rel = Relation::LessEq;
  chi.rhs = 0;
  for (size_t j = 0; j < phi.size(); ++j) {
    Rational a = (psiphi[j] ? Rational(1) : Rational(0)) - (phi[j] ? lo : Rational(0));
    Rational b = (psiphi[j] ? Rational(1) : Rational(0)) - (phi[j] ? hi : Rational(0));
    if (a != 0) clo.coeffs.emplace_back(static_cast<int>(j), std::move(a));
    if (b != 0) chi.coeffs.emplace_back(static_cast<int>(j), std::move(b));
  }
  lp.constraints.push_back(std::move(clo));
  lp.constraints.push_back(std::move(chi));
}

}  // namespace

bool GTightEngine::toleration_feasible(uint32_t mask, const Rows* aug, const Rational& p,
                                       const std::vector<char>& norm) {
  LinearProgram lp;
  lp.num_vars = static_cast<int>(cols_.size());
  for (size_t c = 0; c < kb_.conditional.size(); ++c)
    if (mask & (1u << c))
      append_interval_rows(lp, rows_[c].phi, rows_[c].psiphi, kb_.conditional[c].lower,
                           kb_.conditional[c].upper);
  if (aug) append_interval_rows(lp, aug->phi, aug->psiphi, p, p);
  LinearConstraint unit;
  unit.rel = Relation::Eq;
  unit.rhs = 1;
  for (size_t j = 0; j < cols_.size(); ++j)
    if (norm[j]) unit.coeffs.emplace_back(static_cast<int>(j), Rational(1));
  lp.constraints.push_back(std::move(unit));
  return feasible(lp);
}

bool GTightEngine::base_tolerates(uint32_t mask, int c) {
  uint64_t key = static_cast<uint64_t>(mask) * kb_.conditional.size() + c;
  auto it = base_memo_.find(key);
  if (it != base_memo_.end()) return it->second;
  bool tol = toleration_feasible(mask, nullptr, Rational(0), rows_[c].phi);
  base_memo_.emplace(key, tol);
  return tol;
}

// Greedy toleration partition of P u {(q)[p,p]}. A constraint not tolerated by
// a residue without the augmentation cannot be tolerated with it, so the base
// memo filters most LP calls once warm.
bool GTightEngine::augmented_coherent(const Rows& aug, const Rational& p) {
  uint32_t mask = (1u << kb_.conditional.size()) - 1;
  bool a_in = true;
  while (mask != 0 || a_in) {
    uint32_t new_mask = mask;
    bool new_a = a_in;
    bool placed = false;
    for (size_t c = 0; c < kb_.conditional.size(); ++c) {
      if (!(mask & (1u << c))) continue;
      if (!base_tolerates(mask, static_cast<int>(c))) continue;
      if (!a_in || toleration_feasible(mask, &aug, p, rows_[c].phi)) {
        new_mask &= ~(1u << c);
        placed = true;
      }
    }
    if (a_in && toleration_feasible(mask, &aug, p, aug.phi)) {
      new_a = false;
      placed = true;
    }
    if (!placed) return false;
    mask = new_mask;
    a_in = new_a;
  }
  return true;
}

GTightResult GTightEngine::tight(const ConditionalEvent& q, const GTightOptions& opts) {
  // An antecedent L forces to probability zero admits no verifying model at
  // any p; report the empty encoding, matching the zero-probability
  // conditioning convention of the logical layer.
  if (!detail::positive_model_exists(kb_.logical, {}, ws_, q.antecedent))
    return GTightResult{TightInterval::empty(), true, true};

  Rows aug;
  aug.phi = mask_cols(world_mask(q.antecedent, ws_));
  aug.psiphi = mask_cols(world_mask(Event::land(q.consequent, q.antecedent), ws_));

  std::map<Rational, bool> memo;
  auto coherent = [&](const Rational& p) {
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    bool c = augmented_coherent(aug, p);
    memo.emplace(p, c);
    return c;
  };

  // Frequent case on loosely constrained KBs: both extremes already cohere,
  // so the whole unit interval does.
  if (!opts.sweep_diagnostic && coherent(Rational(0)) && coherent(Rational(1)))
    return GTightResult{TightInterval{Rational(0), Rational(1)}, true, true};

  // Candidate endpoints: trivial bounds, interval endpoints occurring in P,
  // and the tight logical bounds of q under every rank-threshold suffix.
  std::vector<Rational> cand{Rational(0), Rational(1)};
  for (const auto& c : kb_.conditional) {
    cand.push_back(c.lower);
    cand.push_back(c.upper);
  }
  for (int j = 0; j <= zp_.num_levels(); ++j) {
    std::vector<ConditionalConstraint> suffix;
    for (int i : zp_.at_least(j)) suffix.push_back(kb_.conditional[i]);
    TightResult t = tight_logical(kb_.logical, suffix, ws_, q);
    if (!t.interval.is_empty()) {
      cand.push_back(t.interval.lower);
      cand.push_back(t.interval.upper);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::erase_if(cand, [](const Rational& r) { return r < 0 || r > 1; });

  // Bracket the coherent set among the candidates. Points strictly between
  // two coherent ones are taken as coherent (single-interval assumption,
  // optionally checked by the sweep diagnostic below).
  int lo_idx = -1;
  for (size_t i = 0; i < cand.size(); ++i)
    if (coherent(cand[i])) {
      lo_idx = static_cast<int>(i);
      break;
    }
  if (lo_idx < 0) {
    // Dyadic grid seed search.
    bool found = false;
    for (int depth = 1; depth <= opts.grid_depth && !found; ++depth) {
      for (int i = 1; i < (1 << depth) && !found; i += 2) {
        Rational p{i, 1 << depth};
        if (coherent(p)) {
          cand.push_back(p);
          std::sort(cand.begin(), cand.end());
          found = true;
        }
      }
    }
    if (!found)
      throw InconsistencyError("no coherent augmentation point found up to grid depth " +
                               std::to_string(opts.grid_depth));
    for (size_t i = 0; i < cand.size(); ++i)
      if (coherent(cand[i])) {
        lo_idx = static_cast<int>(i);
        break;
      }
  }
  int hi_idx = lo_idx;
  for (int i = static_cast<int>(cand.size()) - 1; i > lo_idx; --i)
    if (coherent(cand[i])) {
      hi_idx = i;
      break;
    }

  GTightResult res;

  // Lower endpoint: boundary between the incoherent candidate below and the
  // first coherent one.
  if (cand[lo_idx] == 0) {
    res.interval.lower = 0;
  } else {
    Rational lo = lo_idx > 0 ? cand[lo_idx - 1] : Rational(0);
    Rational hi = cand[lo_idx];
    while (hi - lo > opts.tolerance) {
      Rational m = (lo + hi) / 2;
      if (coherent(m))
        hi = m;
      else
        lo = m;
    }
    res.lower_exact = false;
    res.interval.lower = hi;
    for (const Rational& d : cand)
      if (d > lo && d <= hi && coherent(d)) {
        res.interval.lower = d;
        res.lower_exact = true;
        break;
      }
  }

  // Upper endpoint, symmetric.
  if (cand[hi_idx] == 1) {
    res.interval.upper = 1;
  } else {
    Rational lo = cand[hi_idx];
    Rational hi = hi_idx + 1 < static_cast<int>(cand.size()) ? cand[hi_idx + 1] : Rational(1);
    while (hi - lo > opts.tolerance) {
      Rational m = (lo + hi) / 2;
      if (coherent(m))
        lo = m;
      else
        hi = m;
    }
    res.upper_exact = false;
    res.interval.upper = lo;
    for (auto it = cand.rbegin(); it != cand.rend(); ++it)
      if (*it >= lo && *it < hi && coherent(*it)) {
        res.interval.upper = *it;
        res.upper_exact = true;
        break;
      }
  }

  if (opts.sweep_diagnostic) {
    int first = -1, last = -1;
    for (int i = 0; i <= 64; ++i) {
      if (coherent(Rational(i, 64))) {
        if (first < 0) first = i;
        last = i;
      }
    }
    for (int i = first; i >= 0 && i <= last; ++i)
      if (!coherent(Rational(i, 64)))
        throw Error("coherent-p set appears disconnected on the 1/64 grid");
  }
  return res;
}

GTightResult gcoherent_tight(const KnowledgeBase& kb, const ConditionalEvent& q,
                             const GTightOptions& opts) {
  return GTightEngine(kb).tight(q, opts);
}

GEntailResult gcoherent_entails(const KnowledgeBase& kb, const ConditionalConstraint& c,
                                const GTightOptions& opts) {
  GTightResult t = gcoherent_tight(kb, c.cond, opts);
  GEntailResult out;
  out.tight = t.interval;
  out.exact = t.exact();
  out.entailed = TightInterval{c.lower, c.upper}.contains(t.interval);
  return out;
}

}  // namespace probkb
