#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "probkb/semantics.hpp"

using namespace probkb;
using probkb::testing::load_fixture;

namespace {

ConditionalEvent q(const KnowledgeBase& kb, const char* psi, const char* phi) {
  return ConditionalEvent{parse_event(psi, kb.atoms), parse_event(phi, kb.atoms)};
}

// Random feasible model of L u P via a seeded random objective.
DistributionVector random_model(const KnowledgeBase& kb, uint64_t seed) {
  WorldSpace ws = enumerate_worlds(kb.atoms);
  LinearProgram lp = encode(kb.logical, kb.conditional, ws);
  std::mt19937_64 rng(seed);
  std::vector<Rational> obj(lp.num_vars);
  for (auto& v : obj) v = Rational(static_cast<long>(rng() % 201) - 100, 100);
  auto out = solve_lp(lp, obj, Sense::Max);
  REQUIRE(out.status == LPStatus::Optimal);
  return DistributionVector{out.witness};
}

}  // namespace

TEST_CASE("distribution vector") {
  WorldSpace ws{2};
  DistributionVector d{{Rational(1, 2), Rational(1, 4), Rational(1, 4), Rational(0)}};
  CHECK(d.is_valid());
  CHECK(d.prob(Event::atom(0), ws) == Rational(1, 4));
  CHECK(d.prob(Event::top(), ws) == 1);
  CHECK(d.cond_prob(ConditionalEvent{Event::atom(0), Event::top()}, ws) == Rational(1, 4));

  DistributionVector bad{{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(-1, 2)}};
  CHECK_FALSE(bad.is_valid());
}

TEST_CASE("encode matches formula evaluation") {
  KnowledgeBase kb = load_fixture("kb_b.kb");
  WorldSpace ws = enumerate_worlds(kb.atoms);
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    DistributionVector d = random_model(kb, seed);
    REQUIRE(d.is_valid());
    for (const auto& lc : kb.logical)
      CHECK(d.prob(Event::land(lc.consequent, lc.antecedent), ws) ==
            d.prob(lc.antecedent, ws));
    for (const auto& cc : kb.conditional) {
      CAPTURE(seed);
      CHECK(eval_constraint(d, cc, ws));
    }
  }
}

TEST_CASE("satisfiable and max_prob") {
  KnowledgeBase a = load_fixture("kb_a.kb");
  KnowledgeBase b = load_fixture("kb_b.kb");
  CHECK(satisfiable(a));
  CHECK(satisfiable(b));
  WorldSpace ws = enumerate_worlds(a.atoms);
  Event penguin = parse_event("penguin", a.atoms);
  CHECK(max_prob(a.logical, a.conditional, ws, penguin) == 1);
  CHECK(max_prob(b.logical, b.conditional, ws, penguin) == 0);
  CHECK(max_prob(b.logical, b.conditional, ws, parse_event("bird", b.atoms)) == 1);

  KnowledgeBase contradiction;
  contradiction.atoms.add("a");
  contradiction.conditional.push_back(
      ConditionalConstraint{ConditionalEvent{Event::atom(0), Event::top()}, 1, 1});
  contradiction.conditional.push_back(ConditionalConstraint{
      ConditionalEvent{Event::lnot(Event::atom(0)), Event::top()}, 1, 1});
  CHECK_FALSE(satisfiable(contradiction));
  WorldSpace cws = enumerate_worlds(contradiction.atoms);
  CHECK_THROWS_AS(
      max_prob(contradiction.logical, contradiction.conditional, cws, Event::atom(0)),
      PreconditionError);
}

TEST_CASE("verifies falsifies tolerates") {
  KnowledgeBase kb = load_fixture("kb_a.kb");
  WorldSpace ws = enumerate_worlds(kb.atoms);
  // Point mass on the bird & fly & have_legs & !penguin world.
  DistributionVector d{std::vector<Rational>(16, Rational(0))};
  d.masses[0b1101] = 1;
  ConditionalConstraint fly_bird{q(kb, "fly", "bird"), 1, 1};
  ConditionalConstraint nofly_bird{q(kb, "!fly", "bird"), 1, 1};
  ConditionalConstraint fly_penguin{q(kb, "fly", "penguin"), 1, 1};
  CHECK(verifies(d, fly_bird, ws));
  CHECK(falsifies(d, nofly_bird, ws));
  CHECK_FALSE(verifies(d, fly_penguin, ws));  // zero antecedent probability
  CHECK_FALSE(falsifies(d, fly_penguin, ws));
  CHECK(eval_constraint(d, fly_penguin, ws));

  CHECK(tolerates(kb.logical, kb.conditional, ws, fly_bird));
  KnowledgeBase b = load_fixture("kb_b.kb");
  ConditionalConstraint penguin_c = b.conditional[2];
  // The penguin constraint is not tolerated by the full set but is by itself.
  CHECK_FALSE(tolerates(b.logical, b.conditional, ws, penguin_c));
  CHECK(tolerates(b.logical, {penguin_c}, ws, penguin_c));
}

TEST_CASE("tight_logical on the reference KBs") {
  KnowledgeBase a = load_fixture("kb_a.kb");
  KnowledgeBase b = load_fixture("kb_b.kb");
  WorldSpace ws = enumerate_worlds(a.atoms);

  for (const char* query : {"fly", "have_legs"}) {
    CAPTURE(query);
    CHECK(tight_logical(a.logical, a.conditional, ws, q(a, query, "bird")).interval ==
          TightInterval::closed(1, 1));
    CHECK(tight_logical(a.logical, a.conditional, ws, q(a, query, "penguin")).interval ==
          TightInterval::closed(1, 1));
    CHECK(tight_logical(b.logical, b.conditional, ws, q(b, query, "bird")).interval ==
          TightInterval::closed(1, 1));
    CHECK(tight_logical(b.logical, b.conditional, ws, q(b, query, "penguin"))
              .interval.is_empty());
  }
}

TEST_CASE("tight_logical witnesses attain the bounds") {
  KnowledgeBase kb = load_fixture("kb_d.kb");
  WorldSpace ws = enumerate_worlds(kb.atoms);
  ConditionalEvent query = q(kb, "red", "bird");
  TightResult t = tight_logical(kb.logical, kb.conditional, ws, query, true);
  CHECK(t.interval == TightInterval::closed(0, 1));
  REQUIRE(t.lower_witness.has_value());
  REQUIRE(t.upper_witness.has_value());
  CHECK(t.lower_witness->is_valid());
  CHECK(t.upper_witness->is_valid());
  CHECK(t.lower_witness->cond_prob(query, ws) == t.interval.lower);
  CHECK(t.upper_witness->cond_prob(query, ws) == t.interval.upper);
  for (const auto& cc : kb.conditional) {
    CHECK(eval_constraint(*t.lower_witness, cc, ws));
    CHECK(eval_constraint(*t.upper_witness, cc, ws));
  }
}

TEST_CASE("entails_logical") {
  KnowledgeBase b = load_fixture("kb_b.kb");
  CHECK(entails_logical(b, ConditionalConstraint{q(b, "fly", "bird"), 1, 1}));
  CHECK_FALSE(entails_logical(b, ConditionalConstraint{q(b, "fly", "bird"), 0, Rational(1, 2)}));
  // Empty tight interval is inside every requested interval.
  CHECK(entails_logical(b, ConditionalConstraint{q(b, "fly", "penguin"), 0, 0}));
  CHECK(entails_logical(b, ConditionalConstraint{q(b, "fly", "penguin"), 1, 1}));
}

TEST_CASE("monotonicity of tight_logical in P") {
  KnowledgeBase b = load_fixture("kb_b.kb");
  WorldSpace ws = enumerate_worlds(b.atoms);
  ConditionalEvent query = q(b, "fly", "bird");
  auto full = tight_logical(b.logical, b.conditional, ws, query).interval;
  std::vector<ConditionalConstraint> fewer(b.conditional.begin(), b.conditional.end() - 1);
  auto relaxed = tight_logical(b.logical, fewer, ws, query).interval;
  CHECK(relaxed.contains(full));
}

TEST_CASE("probabilistic formulas") {
  WorldSpace ws{1};
  DistributionVector d{{Rational(1, 2), Rational(1, 2)}};
  auto pos = ProbabilisticFormula::positivity(Event::atom(0));
  CHECK(eval_formula(d, pos, ws));
  auto never = ProbabilisticFormula::constraint(
      ConditionalConstraint{ConditionalEvent{Event::atom(0), Event::top()}, 0, 0});
  CHECK_FALSE(eval_formula(d, never, ws));
  CHECK(eval_formula(d, ProbabilisticFormula::lnot(never), ws));
  CHECK(eval_formula(d, ProbabilisticFormula::land(pos, ProbabilisticFormula::lnot(never)), ws));
}
