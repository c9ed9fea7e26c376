#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "probkb/coherence.hpp"

using namespace probkb;
using probkb::testing::load_fixture;

namespace {

ConditionalEvent q(const KnowledgeBase& kb, const char* psi, const char* phi) {
  return ConditionalEvent{parse_event(psi, kb.atoms), parse_event(phi, kb.atoms)};
}

KnowledgeBase incoherent_pair() {
  KnowledgeBase kb;
  kb.atoms.add("a");
  kb.conditional.push_back(
      ConditionalConstraint{ConditionalEvent{Event::atom(0), Event::top()}, 1, 1});
  kb.conditional.push_back(ConditionalConstraint{
      ConditionalEvent{Event::lnot(Event::atom(0)), Event::top()}, 1, 1});
  return kb;
}

}  // namespace

TEST_CASE("z_partition on the reference KBs") {
  KnowledgeBase a = load_fixture("kb_a.kb");
  auto pa = z_partition(a);
  REQUIRE(pa.gcoherent());
  CHECK(pa.partition->levels == std::vector<std::vector<int>>{{0, 1}});

  KnowledgeBase b = load_fixture("kb_b.kb");
  auto pb = z_partition(b);
  REQUIRE(pb.gcoherent());
  CHECK(pb.partition->levels == std::vector<std::vector<int>>{{0, 1}, {2}});
  CHECK(pb.partition->rank == std::vector<int>{0, 0, 1});
  CHECK(pb.partition->at_least(1) == std::vector<int>{2});

  KnowledgeBase e = load_fixture("kb_e.kb");
  auto pe = z_partition(e);
  REQUIRE(pe.gcoherent());
  CHECK(pe.partition->levels == std::vector<std::vector<int>>{{0, 1}, {2}});
}

TEST_CASE("incoherence is detected") {
  KnowledgeBase kb = incoherent_pair();
  auto p = z_partition(kb);
  CHECK_FALSE(p.gcoherent());
  CHECK(p.stuck_residue.size() == 2);
  CHECK_FALSE(is_gcoherent(kb));
  CHECK_FALSE(gcoherence_oracle(kb));
}

TEST_CASE("partition is permutation invariant") {
  KnowledgeBase b = load_fixture("kb_b.kb");
  KnowledgeBase shuffled = b;
  std::swap(shuffled.conditional[0], shuffled.conditional[2]);
  auto pb = z_partition(b);
  auto ps = z_partition(shuffled);
  REQUIRE(pb.gcoherent());
  REQUIRE(ps.gcoherent());
  REQUIRE(pb.partition->num_levels() == ps.partition->num_levels());
  for (int l = 0; l < pb.partition->num_levels(); ++l) {
    auto names = [&](const KnowledgeBase& kb, const std::vector<int>& idx) {
      std::vector<std::string> out;
      for (int i : idx) out.push_back(query_to_string(kb.conditional[i].cond, kb.atoms));
      std::sort(out.begin(), out.end());
      return out;
    };
    CHECK(names(b, pb.partition->levels[l]) == names(shuffled, ps.partition->levels[l]));
  }
}

TEST_CASE("greedy check agrees with the ranking-search oracle") {
  // Raw sampler without the coherence rejection of random_kb, so incoherent
  // KBs are exercised too.
  std::mt19937_64 rng(99);
  auto literal = [&](int atoms) {
    Event a = Event::atom(static_cast<int>(rng() % atoms));
    return rng() % 2 ? Event::lnot(a) : a;
  };
  int incoherent_seen = 0, coherent_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int atoms = 2 + static_cast<int>(rng() % 2);
    KnowledgeBase kb;
    for (int i = 0; i < atoms; ++i) kb.atoms.add(std::string(1, static_cast<char>('a' + i)));
    kb.strict_distinctness = false;
    int np = 2 + static_cast<int>(rng() % 3);
    const Rational grid[] = {Rational(0), Rational(1, 2), Rational(1)};
    for (int i = 0; i < np; ++i) {
      Event psi = literal(atoms);
      Event phi = rng() % 2 ? literal(atoms) : Event::land(literal(atoms), literal(atoms));
      Rational x = grid[rng() % 3], y = grid[rng() % 3];
      kb.conditional.push_back(ConditionalConstraint{ConditionalEvent{psi, phi},
                                                     std::min(x, y), std::max(x, y)});
    }
    CAPTURE(trial);
    bool greedy = is_gcoherent(kb);
    CHECK(greedy == gcoherence_oracle(kb));
    (greedy ? coherent_seen : incoherent_seen)++;
  }
  CHECK(incoherent_seen > 0);
  CHECK(coherent_seen > 0);
}

TEST_CASE("gcoherent_tight on the reference KBs") {
  KnowledgeBase a = load_fixture("kb_a.kb");
  auto ta = gcoherent_tight(a, q(a, "fly", "penguin"));
  CHECK(ta.interval == TightInterval::closed(0, 1));
  CHECK(ta.exact());

  KnowledgeBase b = load_fixture("kb_b.kb");
  GTightEngine engine(b);
  auto fly = engine.tight(q(b, "fly", "penguin"));
  CHECK(fly.interval == TightInterval::closed(0, Rational(1, 20)));
  CHECK(fly.exact());
  auto legs = engine.tight(q(b, "have_legs", "penguin"));
  CHECK(legs.interval == TightInterval::closed(0, 1));
  CHECK(legs.exact());

  KnowledgeBase c = load_fixture("kb_c.kb");
  auto eag = gcoherent_tight(c, q(c, "fly", "bird & eagle"));
  CHECK(eag.interval == TightInterval::closed(0, 1));

  KnowledgeBase d = load_fixture("kb_d.kb");
  auto red = gcoherent_tight(d, q(d, "fly", "red & bird"));
  CHECK(red.interval == TightInterval::closed(0, 1));
}

TEST_CASE("gcoherent_tight sweep diagnostic accepts the fixtures") {
  KnowledgeBase b = load_fixture("kb_b.kb");
  GTightOptions opts;
  opts.sweep_diagnostic = true;
  auto t = gcoherent_tight(b, q(b, "fly", "penguin"), opts);
  CHECK(t.interval == TightInterval::closed(0, Rational(1, 20)));
}

TEST_CASE("gcoherent_tight empty for an impossible antecedent") {
  KnowledgeBase kb = load_fixture("kb_a.kb");
  auto t = gcoherent_tight(kb, q(kb, "fly", "penguin & !bird"));
  CHECK(t.interval.is_empty());
  CHECK(t.exact());
}

TEST_CASE("gcoherent_entails") {
  KnowledgeBase c = load_fixture("kb_c.kb");
  auto yes = gcoherent_entails(c, ConditionalConstraint{q(c, "fly", "bird"), 1, 1});
  CHECK(yes.entailed);
  auto no = gcoherent_entails(c, ConditionalConstraint{q(c, "fly", "bird & eagle"), 1, 1});
  CHECK_FALSE(no.entailed);
  CHECK(no.tight == TightInterval::closed(0, 1));
}

TEST_CASE("precondition errors") {
  KnowledgeBase kb = incoherent_pair();
  CHECK_THROWS_AS(gcoherent_tight(kb, ConditionalEvent{Event::atom(0), Event::top()}),
                  PreconditionError);
  CHECK_THROWS_AS(gcoherence_oracle(load_fixture("kb_b.kb"), 2), ResourceLimitError);
}
