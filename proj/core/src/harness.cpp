#include "probkb/harness.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "probkb/classical.hpp"
#include "probkb/coherence.hpp"
#include "probkb/errors.hpp"
#include "probkb/kb_text.hpp"
#include "probkb/preferential.hpp"

namespace probkb {

std::vector<Rational> default_bound_grid() {
  return {Rational(0),      Rational(1, 10), Rational(1, 4), Rational(1, 2),
          Rational(3, 4),   Rational(9, 10), Rational(1)};
}

KnowledgeBase random_kb(const GenParams& p) {
  if (p.num_atoms < 1 || p.num_atoms > 5 || p.num_logical < 0 || p.num_logical > 3 ||
      p.num_conditional < 0 || p.num_conditional > 5)
    throw StructuralError("random_kb parameters outside the supported caps");

  static const char* kNames[] = {"a", "b", "c", "d", "e"};
  std::vector<Rational> grid = p.bound_grid.empty() ? default_bound_grid() : p.bound_grid;
  std::mt19937_64 rng(p.seed);
  auto pick = [&](size_t n) { return static_cast<int>(rng() % n); };

  std::function<Event(int)> rnd_event = [&](int depth) -> Event {
    if (depth == 0) return Event::atom(pick(p.num_atoms));
    switch (pick(4)) {
      case 0:
        return Event::atom(pick(p.num_atoms));
      case 1:
        return Event::lnot(rnd_event(depth - 1));
      default:
        return Event::land(rnd_event(depth - 1), rnd_event(depth - 1));
    }
  };
  WorldSpace ws{p.num_atoms};
  auto rnd_antecedent = [&](int depth) {
    for (int i = 0; i < 50; ++i) {
      Event e = rnd_event(depth);
      std::vector<char> m = world_mask(e, ws);
      if (std::find(m.begin(), m.end(), char(1)) != m.end()) return e;
    }
    return Event::atom(pick(p.num_atoms));
  };

  for (int attempt = 0; attempt < p.rejection_budget; ++attempt) {
    KnowledgeBase kb;
    for (int i = 0; i < p.num_atoms; ++i) kb.atoms.add(kNames[i]);
    for (int i = 0; i < p.num_logical; ++i)
      kb.logical.push_back(LogicalConstraint{rnd_event(1), rnd_antecedent(1)});
    for (int i = 0; i < p.num_conditional; ++i) {
      ConditionalConstraint c;
      c.cond = ConditionalEvent{rnd_event(2), rnd_antecedent(2)};
      if (p.only_unit_intervals) {
        c.lower = c.upper = 1;
      } else {
        Rational x = grid[pick(grid.size())], y = grid[pick(grid.size())];
        c.lower = std::min(x, y);
        c.upper = std::max(x, y);
      }
      kb.conditional.push_back(std::move(c));
    }
    if (!validate_kb(kb).ok()) continue;
    if (!is_gcoherent(kb)) continue;
    return kb;
  }
  throw ResourceLimitError("random_kb rejection budget exhausted (" +
                           std::to_string(p.rejection_budget) + " attempts)");
}

namespace {

std::vector<Event> literal_list(int num_atoms) {
  std::vector<Event> out;
  for (int i = 0; i < num_atoms; ++i) {
    out.push_back(Event::atom(i));
    out.push_back(Event::lnot(Event::atom(i)));
  }
  return out;
}

std::vector<Event> conjunction_list(int num_atoms) {
  std::vector<Event> out;
  for (int i = 0; i < num_atoms; ++i)
    for (int j = i + 1; j < num_atoms; ++j)
      for (int si = 0; si < 2; ++si)
        for (int sj = 0; sj < 2; ++sj) {
          Event a = si ? Event::lnot(Event::atom(i)) : Event::atom(i);
          Event b = sj ? Event::lnot(Event::atom(j)) : Event::atom(j);
          out.push_back(Event::land(a, b));
        }
  return out;
}

}  // namespace

std::vector<ConditionalEvent> standard_query_family(const KnowledgeBase& kb) {
  int n = kb.atoms.size();
  std::vector<Event> ants = literal_list(n);
  for (Event& e : conjunction_list(n)) ants.push_back(std::move(e));
  std::vector<ConditionalEvent> out;
  for (const Event& psi : literal_list(n))
    for (const Event& phi : ants) out.push_back(ConditionalEvent{psi, phi});
  return out;
}

std::vector<ConditionalEvent> depth2_query_family(const KnowledgeBase& kb) {
  int n = kb.atoms.size();
  std::vector<Event> ants = literal_list(n);
  for (Event& e : conjunction_list(n)) ants.push_back(std::move(e));
  for (const Event& e : conjunction_list(n)) ants.push_back(Event::lnot(e));
  std::vector<ConditionalEvent> out;
  for (const Event& psi : literal_list(n))
    for (const Event& phi : ants) out.push_back(ConditionalEvent{psi, phi});
  return out;
}

void PropertyReport::record(const std::string& key, bool ok, const std::string& counterexample,
                            bool required) {
  PropertyOutcome& row = rows[key];
  row.required = row.required && required;
  if (ok) {
    ++row.passes;
  } else {
    ++row.failures;
    if (row.counterexamples.size() < 5) row.counterexamples.push_back(counterexample);
  }
}

void PropertyReport::merge(const PropertyReport& other) {
  for (const auto& [key, row] : other.rows) {
    PropertyOutcome& mine = rows[key];
    mine.required = mine.required && row.required;
    mine.passes += row.passes;
    mine.failures += row.failures;
    for (const auto& cx : row.counterexamples)
      if (mine.counterexamples.size() < 5) mine.counterexamples.push_back(cx);
  }
}

bool PropertyReport::required_pass() const {
  for (const auto& [key, row] : rows)
    if (row.required && row.failures > 0) return false;
  return true;
}

std::string PropertyReport::serialize() const {
  std::ostringstream os;
  os << "rng: " << rng_id << "\n";
  for (const auto& [key, row] : rows) {
    os << key << ": pass=" << row.passes << " fail=" << row.failures
       << (row.required ? "" : " informational") << "\n";
    for (const auto& cx : row.counterexamples) {
      std::istringstream lines(cx);
      std::string line;
      while (std::getline(lines, line)) os << "    " << line << "\n";
    }
  }
  os << "result: " << (required_pass() ? "pass" : "fail") << "\n";
  return os.str();
}

namespace {

enum class Sem { Logical, G, Z, Lex };

const char* sem_name(Sem s) {
  switch (s) {
    case Sem::Logical: return "logical";
    case Sem::G: return "g";
    case Sem::Z: return "z";
    case Sem::Lex: return "lex";
  }
  return "?";
}

// Per-KB tight-interval cache across the four relations, keyed by the
// serialized query.
class SemanticsCache {
 public:
  SemanticsCache(const KnowledgeBase& kb, const SuiteOptions& opts)
      : kb_(kb), ws_(enumerate_worlds(kb.atoms)), opts_(opts) {
    ZPartitionResult zp = z_partition(kb_);
    if (!zp.gcoherent())
      throw PreconditionError("check_property_suite requires a g-coherent KB");
    zp_ = std::move(*zp.partition);
    if (opts_.check_g) engine_.emplace(kb_);
  }

  const KnowledgeBase& kb() const { return kb_; }
  const WorldSpace& ws() const { return ws_; }
  const Rational& g_tolerance() const { return opts_.g_tolerance; }

  std::string key(const ConditionalEvent& q) const {
    return query_to_string(q, kb_.atoms);
  }

  const TightInterval& tight(Sem s, const ConditionalEvent& q) {
    auto& m = cache_[static_cast<int>(s)];
    std::string k = key(q);
    auto it = m.find(k);
    if (it != m.end()) return it->second;
    TightInterval t;
    switch (s) {
      case Sem::Logical:
        t = tight_logical(kb_.logical, kb_.conditional, ws_, q).interval;
        break;
      case Sem::Z:
        t = z_tight(kb_, zp_, q).interval;
        break;
      case Sem::Lex:
        t = lex_tight(kb_, zp_, q).interval;
        break;
      case Sem::G: {
        GTightOptions go;
        go.tolerance = opts_.g_tolerance;
        t = engine_->tight(q, go).interval;
        break;
      }
    }
    return m.emplace(std::move(k), std::move(t)).first->second;
  }

  // Containment with slack on the outer interval for the coherence layer,
  // whose endpoints may be approximate.
  bool contains_for(Sem s, TightInterval outer, const TightInterval& inner) const {
    if (inner.is_empty()) return true;
    if (s == Sem::G && !outer.is_empty()) {
      outer.lower -= opts_.g_tolerance;
      outer.upper += opts_.g_tolerance;
    }
    return outer.contains(inner);
  }

  bool entails(Sem s, const ConditionalEvent& q, const Rational& l, const Rational& u) {
    return contains_for(s, TightInterval{l, u}, tight(s, q));
  }

  bool equal_for(Sem s, const TightInterval& a, const TightInterval& b) const {
    if (s != Sem::G) return a == b;
    if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
    auto close = [&](const Rational& x, const Rational& y) {
      Rational d = x - y;
      if (d < 0) d = -d;
      return d <= opts_.g_tolerance;
    };
    return close(a.lower, b.lower) && close(a.upper, b.upper);
  }

  Rational max_antecedent_prob(const Event& phi) {
    std::string k = event_to_string(phi, kb_.atoms);
    auto it = maxprob_.find(k);
    if (it != maxprob_.end()) return it->second;
    Rational v = max_prob(kb_.logical, kb_.conditional, ws_, phi);
    maxprob_.emplace(std::move(k), v);
    return v;
  }

 private:
  KnowledgeBase kb_;
  WorldSpace ws_;
  SuiteOptions opts_;
  ZPartition zp_;
  std::optional<GTightEngine> engine_;
  std::map<std::string, TightInterval> cache_[4];
  std::map<std::string, Rational> maxprob_;
};

}  // namespace

PropertyReport check_property_suite(const KnowledgeBase& kb,
                                    const std::vector<ConditionalEvent>& queries,
                                    const SuiteOptions& opts) {
  PropertyReport report;
  SemanticsCache c(kb, opts);
  std::string kbdump = serialize_kb(kb);
  auto cx = [&](const ConditionalEvent& q) {
    return kbdump + "query: " + c.key(q) + "\n";
  };

  int n = kb.atoms.size();
  std::vector<Event> lits = literal_list(n);
  std::vector<Sem> sems{Sem::Logical, Sem::Z, Sem::Lex};
  if (opts.check_g) sems.push_back(Sem::G);

  std::vector<bool> used(n, false);
  {
    std::vector<bool> u(static_cast<size_t>(n), false);
    for (const auto& lc : kb.logical) {
      lc.consequent.collect_atoms(u);
      lc.antecedent.collect_atoms(u);
    }
    for (const auto& cc : kb.conditional) {
      cc.cond.consequent.collect_atoms(u);
      cc.cond.antecedent.collect_atoms(u);
    }
    used = u;
  }
  int spare = -1;
  for (int i = 0; i < n; ++i)
    if (!used[i]) {
      spare = i;
      break;
    }

  for (Sem s : sems) {
    std::string nm = sem_name(s);

    for (const Event& eps : lits) {
      ConditionalEvent q{eps, eps};
      report.record("Ref/" + nm, c.entails(s, q, 1, 1), cx(q));
    }

    if (n >= 2) {
      Event strong = Event::land(Event::atom(0), Event::atom(1));
      for (const Event& eps : lits) {
        ConditionalEvent prem{strong, eps};
        const TightInterval& t = c.tight(s, prem);
        if (t.is_empty()) continue;
        ConditionalEvent concl{Event::atom(0), eps};
        bool ok = c.contains_for(s, TightInterval{t.lower, Rational(1)}, c.tight(s, concl));
        report.record("RW/" + nm, ok, cx(prem));
      }
    }

    for (size_t pi = 0; pi < lits.size() && pi < 2; ++pi)
      for (size_t ai = 0; ai < lits.size() && ai < 2; ++ai) {
        ConditionalEvent q{lits[pi], lits[ai]};
        ConditionalEvent q2{lits[pi], Event::lnot(Event::lnot(lits[ai]))};
        report.record("LLE/" + nm, c.equal_for(s, c.tight(s, q), c.tight(s, q2)), cx(q));
      }

    for (size_t ei = 0; ei < lits.size(); ++ei)
      for (size_t ej = 0; ej < lits.size(); ++ej) {
        const Event& eps = lits[ei];
        const Event& eps2 = lits[ej];
        if (ei / 2 == ej / 2) continue;  // same atom
        bool prem = c.entails(s, ConditionalEvent{eps, eps2}, 1, 1);
        Event both = Event::land(eps, eps2);
        if (prem) {
          for (const Event& psi : lits) {
            ConditionalEvent fine{psi, both};
            ConditionalEvent coarse{psi, eps2};
            const TightInterval& tf = c.tight(s, fine);
            if (!tf.is_empty()) {
              report.record("Cut/" + nm, c.contains_for(s, tf, c.tight(s, coarse)), cx(fine));
            } else if (s != Sem::G) {
              report.record("Cut/" + nm, c.tight(s, coarse).is_empty(), cx(fine));
            }
            const TightInterval& tc = c.tight(s, coarse);
            if (!tc.is_empty())
              report.record("CM/" + nm, c.contains_for(s, tc, c.tight(s, fine)), cx(fine));
          }
        }
        if (ei < ej) {
          for (const Event& psi : lits) {
            if (c.entails(s, ConditionalEvent{psi, eps}, 1, 1) &&
                c.entails(s, ConditionalEvent{psi, eps2}, 1, 1)) {
              ConditionalEvent q{psi, Event::lor(eps, eps2)};
              report.record("Or/" + nm, c.entails(s, q, 1, 1), cx(q));
            }
          }
        }
        for (const Event& psi : lits) {
          if (c.entails(s, ConditionalEvent{psi, eps}, 1, 1) &&
              !c.entails(s, ConditionalEvent{Event::lnot(eps2), eps}, 1, 1)) {
            ConditionalEvent q{psi, both};
            report.record("RM/" + nm, c.entails(s, q, 1, 1), cx(q), s != Sem::G);
          }
        }
      }

    if (spare >= 0) {
      Event extra = Event::atom(spare);
      std::vector<bool> touches(static_cast<size_t>(n), false);
      for (const Event& psi : lits)
        for (const Event& eps : lits) {
          std::fill(touches.begin(), touches.end(), false);
          psi.collect_atoms(touches);
          eps.collect_atoms(touches);
          if (touches[spare]) continue;
          if (!c.entails(s, ConditionalEvent{psi, eps}, 1, 1)) continue;
          ConditionalEvent q{psi, Event::land(eps, extra)};
          report.record("Irr/" + nm, c.entails(s, q, 1, 1), cx(q), s != Sem::G);
        }
    }

    for (const auto& cc : kb.conditional)
      report.record("DI/" + nm, c.entails(s, cc.cond, cc.lower, cc.upper), cx(cc.cond));
  }

  for (const ConditionalEvent& q : queries) {
    const TightInterval& tl = c.tight(Sem::Logical, q);
    const TightInterval& tlex = c.tight(Sem::Lex, q);
    const TightInterval& tz = c.tight(Sem::Z, q);
    report.record("Chain/logical-in-lex", c.contains_for(Sem::Lex, tlex, tl), cx(q));
    report.record("Chain/lex-in-z", c.contains_for(Sem::Z, tz, tlex), cx(q));
    if (opts.check_g)
      report.record("Chain/z-in-g", c.contains_for(Sem::G, c.tight(Sem::G, q), tz), cx(q));
    if (c.max_antecedent_prob(q.antecedent) > 0)
      report.record("Coincidence/logical-z-lex", tl == tz && tz == tlex, cx(q));
  }

  bool all_unit = std::all_of(kb.conditional.begin(), kb.conditional.end(),
                              [](const ConditionalConstraint& cc) {
                                return cc.lower == 1 && cc.upper == 1;
                              });
  if (opts.check_classical && all_unit) {
    ClassicalKB ckb = gamma(kb);
    report.record("ClassicalConsistency/z", classical_z_partition(ckb).has_value(), kbdump);
    for (const ConditionalEvent& q : depth2_query_family(kb)) {
      Default d{q.consequent, q.antecedent};
      report.record("Oracle/z", c.entails(Sem::Z, q, 1, 1) == classical_z_entails(ckb, d),
                    cx(q));
      report.record("Oracle/lex",
                    c.entails(Sem::Lex, q, 1, 1) == classical_lex_entails(ckb, d), cx(q));
      report.record("Oracle/logical",
                    c.entails(Sem::Logical, q, 1, 1) == classical_logical_entails(ckb, d),
                    cx(q));
    }
  }
  return report;
}

std::vector<DistributionVector> sample_extreme_models(
    const std::vector<LogicalConstraint>& logical,
    const std::vector<ConditionalConstraint>& conditional, const WorldSpace& ws, int n,
    uint64_t seed) {
  LinearProgram lp = encode(logical, conditional, ws);
  std::mt19937_64 rng(seed);
  std::vector<DistributionVector> out;
  for (int t = 0; t < n; ++t) {
    std::vector<Rational> obj(lp.num_vars);
    for (auto& v : obj) v = Rational(static_cast<long>(rng() % 2001) - 1000, 1000);
    LPOutcome res = solve_lp(lp, obj, Sense::Max);
    if (res.status != LPStatus::Optimal)
      throw PreconditionError("sample_extreme_models requires a satisfiable KB");
    out.push_back(DistributionVector{res.witness});
  }
  return out;
}

namespace {

KnowledgeBase fixture_rm() {
  KnowledgeBase kb;
  int bird = kb.atoms.add("bird");
  int eagle = kb.atoms.add("eagle");
  int fly = kb.atoms.add("fly");
  kb.logical.push_back(LogicalConstraint{Event::atom(bird), Event::atom(eagle)});
  kb.conditional.push_back(
      ConditionalConstraint{ConditionalEvent{Event::atom(fly), Event::atom(bird)}, 1, 1});
  return kb;
}

KnowledgeBase fixture_irr() {
  KnowledgeBase kb;
  int bird = kb.atoms.add("bird");
  int fly = kb.atoms.add("fly");
  kb.atoms.add("red");
  kb.conditional.push_back(
      ConditionalConstraint{ConditionalEvent{Event::atom(fly), Event::atom(bird)}, 1, 1});
  return kb;
}

}  // namespace

PropertyReport run_harness(const HarnessParams& hp) {
  PropertyReport report;
  for (int k = 0; k < hp.kbs; ++k) {
    GenParams gp;
    gp.seed = hp.seed + static_cast<uint64_t>(k);
    gp.num_atoms = 2 + k % std::max(1, hp.max_atoms - 1);
    gp.num_logical = k % 2;
    gp.num_conditional = 2 + k % 3;
    gp.only_unit_intervals = hp.only_unit_intervals;
    KnowledgeBase kb = random_kb(gp);
    report.merge(check_property_suite(kb, standard_query_family(kb), hp.suite));
  }
  if (hp.include_fixtures) {
    for (const KnowledgeBase& kb : {fixture_rm(), fixture_irr()})
      report.merge(check_property_suite(kb, standard_query_family(kb), hp.suite));
  }
  return report;
}

}  // namespace probkb
