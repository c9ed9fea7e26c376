#include "probkb/semantics.hpp"

#include <algorithm>

#include "probkb/errors.hpp"

namespace probkb {

bool DistributionVector::is_valid() const {
  Rational total = 0;
  for (const auto& m : masses) {
    if (m < 0) return false;
    total += m;
  }
  return total == 1;
}

Rational DistributionVector::prob(const Event& e, const WorldSpace& ws) const {
  if (masses.size() != ws.size())
    throw StructuralError("distribution size does not match world space");
  auto mask = world_mask(e, ws);
  Rational p = 0;
  for (uint32_t i = 0; i < ws.size(); ++i)
    if (mask[i] && masses[i] != 0) p += masses[i];
  return p;
}

Rational DistributionVector::cond_prob(const ConditionalEvent& c, const WorldSpace& ws) const {
  Rational pphi = prob(c.antecedent, ws);
  if (pphi == 0) throw PreconditionError("conditional probability on a zero-probability event");
  return prob(Event::land(c.consequent, c.antecedent), ws) / pphi;
}

struct ProbabilisticFormula::Node {
  Kind kind;
  std::optional<ConditionalConstraint> constraint;
  std::shared_ptr<const Node> a, b;
};

ProbabilisticFormula ProbabilisticFormula::constraint(ConditionalConstraint c) {
  ProbabilisticFormula f;
  f.node_ = std::make_shared<const Node>(Node{Kind::Constraint, std::move(c), nullptr, nullptr});
  return f;
}

ProbabilisticFormula ProbabilisticFormula::lnot(ProbabilisticFormula f) {
  ProbabilisticFormula out;
  out.node_ = std::make_shared<const Node>(Node{Kind::Not, std::nullopt, f.node_, nullptr});
  return out;
}

ProbabilisticFormula ProbabilisticFormula::land(ProbabilisticFormula a, ProbabilisticFormula b) {
  ProbabilisticFormula out;
  out.node_ = std::make_shared<const Node>(Node{Kind::And, std::nullopt, a.node_, b.node_});
  return out;
}

ProbabilisticFormula ProbabilisticFormula::positivity(const Event& phi) {
  return lnot(constraint({ConditionalEvent{phi, Event::top()}, Rational(0), Rational(0)}));
}

ProbabilisticFormula::Kind ProbabilisticFormula::kind() const { return node_->kind; }
const ConditionalConstraint& ProbabilisticFormula::constraint_value() const {
  return *node_->constraint;
}
ProbabilisticFormula ProbabilisticFormula::child() const {
  ProbabilisticFormula f;
  f.node_ = node_->a;
  return f;
}
ProbabilisticFormula ProbabilisticFormula::left() const { return child(); }
ProbabilisticFormula ProbabilisticFormula::right() const {
  ProbabilisticFormula f;
  f.node_ = node_->b;
  return f;
}

namespace detail {

std::vector<Rational> WorldSystem::objective(const std::vector<char>& world_set) const {
  std::vector<Rational> obj(cols.size(), Rational(0));
  for (size_t j = 0; j < cols.size(); ++j)
    if (world_set[cols[j]]) obj[j] = 1;
  return obj;
}

void WorldSystem::add_sum_row(const std::vector<char>& world_set, Relation rel, Rational rhs) {
  LinearConstraint row;
  row.rel = rel;
  row.rhs = std::move(rhs);
  for (size_t j = 0; j < cols.size(); ++j)
    if (world_set[cols[j]]) row.coeffs.emplace_back(static_cast<int>(j), Rational(1));
  lp.constraints.push_back(std::move(row));
}

WorldSystem build_homogeneous(const std::vector<LogicalConstraint>& logical,
                              const std::vector<ConditionalConstraint>& conditional,
                              const WorldSpace& ws) {
  WorldSystem sys;
  std::vector<char> zero(ws.size(), 0);
  for (uint32_t w : zero_worlds(logical, ws)) zero[w] = 1;
  for (uint32_t w = 0; w < ws.size(); ++w)
    if (!zero[w]) sys.cols.push_back(w);
  sys.lp.num_vars = static_cast<int>(sys.cols.size());

  for (const auto& c : conditional) {
    auto phi = world_mask(c.cond.antecedent, ws);
    auto psiphi = world_mask(Event::land(c.cond.consequent, c.cond.antecedent), ws);
    // Pr(psi&phi) - l*Pr(phi) >= 0 and Pr(psi&phi) - u*Pr(phi) <= 0.
    LinearConstraint lo, hi;
    lo.rel = Relation::GreaterEq;
    lo.rhs = 0;
    hi.rel = Relation::LessEq;
    hi.rhs = 0;
    for (size_t j = 0; j < sys.cols.size(); ++j) {
      uint32_t w = sys.cols[j];
      Rational clo = (psiphi[w] ? Rational(1) : Rational(0)) - (phi[w] ? c.lower : Rational(0));
      Rational chi = (psiphi[w] ? Rational(1) : Rational(0)) - (phi[w] ? c.upper : Rational(0));
      if (clo != 0) lo.coeffs.emplace_back(static_cast<int>(j), std::move(clo));
      if (chi != 0) hi.coeffs.emplace_back(static_cast<int>(j), std::move(chi));
    }
    sys.lp.constraints.push_back(std::move(lo));
    sys.lp.constraints.push_back(std::move(hi));
  }
  return sys;
}

bool positive_model_exists(const std::vector<LogicalConstraint>& logical,
                           const std::vector<ConditionalConstraint>& conditional,
                           const WorldSpace& ws, const Event& phi) {
  WorldSystem sys = build_homogeneous(logical, conditional, ws);
  sys.add_sum_row(world_mask(phi, ws), Relation::Eq, Rational(1));
  return feasible(sys.lp);
}

}  // namespace detail

LinearProgram encode(const std::vector<LogicalConstraint>& logical,
                     const std::vector<ConditionalConstraint>& conditional,
                     const WorldSpace& ws) {
  LinearProgram lp;
  lp.num_vars = static_cast<int>(ws.size());
  for (uint32_t w : zero_worlds(logical, ws)) {
    LinearConstraint pin;
    pin.coeffs.emplace_back(static_cast<int>(w), Rational(1));
    pin.rel = Relation::Eq;
    pin.rhs = 0;
    lp.constraints.push_back(std::move(pin));
  }
  LinearConstraint total;
  total.rel = Relation::Eq;
  total.rhs = 1;
  for (uint32_t w = 0; w < ws.size(); ++w)
    total.coeffs.emplace_back(static_cast<int>(w), Rational(1));
  lp.constraints.push_back(std::move(total));
  for (const auto& c : conditional) {
    auto phi = world_mask(c.cond.antecedent, ws);
    auto psiphi = world_mask(Event::land(c.cond.consequent, c.cond.antecedent), ws);
    LinearConstraint lo, hi;
    lo.rel = Relation::GreaterEq;
    lo.rhs = 0;
    hi.rel = Relation::LessEq;
    hi.rhs = 0;
    for (uint32_t w = 0; w < ws.size(); ++w) {
      Rational clo = (psiphi[w] ? Rational(1) : Rational(0)) - (phi[w] ? c.lower : Rational(0));
      Rational chi = (psiphi[w] ? Rational(1) : Rational(0)) - (phi[w] ? c.upper : Rational(0));
      if (clo != 0) lo.coeffs.emplace_back(static_cast<int>(w), std::move(clo));
      if (chi != 0) hi.coeffs.emplace_back(static_cast<int>(w), std::move(chi));
    }
    lp.constraints.push_back(std::move(lo));
    lp.constraints.push_back(std::move(hi));
  }
  return lp;
}

bool satisfiable(const std::vector<LogicalConstraint>& logical,
                 const std::vector<ConditionalConstraint>& conditional,
                 const WorldSpace& ws) {
  detail::WorldSystem sys = detail::build_homogeneous(logical, conditional, ws);
  std::vector<char> all(ws.size(), 1);
  sys.add_sum_row(all, Relation::Eq, Rational(1));
  return feasible(sys.lp);
}

bool satisfiable(const KnowledgeBase& kb) {
  return satisfiable(kb.logical, kb.conditional, enumerate_worlds(kb.atoms));
}

Rational max_prob(const std::vector<LogicalConstraint>& logical,
                  const std::vector<ConditionalConstraint>& conditional,
                  const WorldSpace& ws, const Event& phi) {
  detail::WorldSystem sys = detail::build_homogeneous(logical, conditional, ws);
  std::vector<char> all(ws.size(), 1);
  sys.add_sum_row(all, Relation::Eq, Rational(1));
  auto obj = sys.objective(world_mask(phi, ws));
  LPOutcome out = solve_lp(sys.lp, obj, Sense::Max);
  if (out.status != LPStatus::Optimal)
    throw PreconditionError("max_prob requires a satisfiable system");
  return out.value;
}

bool eval_constraint(const DistributionVector& d, const ConditionalConstraint& c,
                     const WorldSpace& ws) {
  Rational pphi = d.prob(c.cond.antecedent, ws);
  if (pphi == 0) return true;
  Rational ppsiphi = d.prob(Event::land(c.cond.consequent, c.cond.antecedent), ws);
  return c.lower * pphi <= ppsiphi && ppsiphi <= c.upper * pphi;
}

bool eval_formula(const DistributionVector& d, const ProbabilisticFormula& f,
                  const WorldSpace& ws) {
  switch (f.kind()) {
    case ProbabilisticFormula::Kind::Constraint:
      return eval_constraint(d, f.constraint_value(), ws);
    case ProbabilisticFormula::Kind::Not:
      return !eval_formula(d, f.child(), ws);
    case ProbabilisticFormula::Kind::And:
      return eval_formula(d, f.left(), ws) && eval_formula(d, f.right(), ws);
  }
  return false;
}

bool verifies(const DistributionVector& d, const ConditionalConstraint& c,
              const WorldSpace& ws) {
  return d.prob(c.cond.antecedent, ws) > 0 && eval_constraint(d, c, ws);
}

bool falsifies(const DistributionVector& d, const ConditionalConstraint& c,
               const WorldSpace& ws) {
  return d.prob(c.cond.antecedent, ws) > 0 && !eval_constraint(d, c, ws);
}

bool tolerates(const std::vector<LogicalConstraint>& logical,
               const std::vector<ConditionalConstraint>& conditional,
               const WorldSpace& ws, const ConditionalConstraint& c) {
  std::vector<ConditionalConstraint> augmented = conditional;
  augmented.push_back(c);
  return detail::positive_model_exists(logical, augmented, ws, c.cond.antecedent);
}

TightResult tight_logical(const std::vector<LogicalConstraint>& logical,
                          const std::vector<ConditionalConstraint>& conditional,
                          const WorldSpace& ws, const ConditionalEvent& q,
                          bool want_witnesses) {
  detail::WorldSystem sys = detail::build_homogeneous(logical, conditional, ws);
  auto phi = world_mask(q.antecedent, ws);
  sys.add_sum_row(phi, Relation::Eq, Rational(1));
  auto obj = sys.objective(world_mask(Event::land(q.consequent, q.antecedent), ws));

  TightResult res;
  LPOutcome lo = solve_lp(sys.lp, obj, Sense::Min);
  if (lo.status != LPStatus::Optimal) return res;  // empty encoding
  LPOutcome hi = solve_lp(sys.lp, obj, Sense::Max);
  if (hi.status != LPStatus::Optimal)
    throw StructuralError("tight bound cannot be unbounded under normalization");
  res.interval = TightInterval::closed(lo.value, hi.value);
  if (want_witnesses) {
    auto to_distribution = [&](const std::vector<Rational>& y) {
      Rational total = 0;
      for (const auto& v : y) total += v;
      DistributionVector d;
      d.masses.assign(ws.size(), Rational(0));
      for (size_t j = 0; j < sys.cols.size(); ++j)
        if (y[j] != 0) d.masses[sys.cols[j]] = y[j] / total;
      return d;
    };
    res.lower_witness = to_distribution(lo.witness);
    res.upper_witness = to_distribution(hi.witness);
  }
  return res;
}

bool entails_logical(const KnowledgeBase& kb, const ConditionalConstraint& c) {
  WorldSpace ws = enumerate_worlds(kb.atoms);
  if (!satisfiable(kb.logical, kb.conditional, ws))
    throw PreconditionError("logical entailment requires a satisfiable KB");
  TightResult t = tight_logical(kb.logical, kb.conditional, ws, c.cond);
  return TightInterval{c.lower, c.upper}.contains(t.interval);
}

}  // namespace probkb
