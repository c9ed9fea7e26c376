#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "probkb/event.hpp"

using namespace probkb;

TEST_CASE("atom table names") {
  CHECK(AtomTable::valid_name("bird"));
  CHECK(AtomTable::valid_name("have_legs"));
  CHECK(AtomTable::valid_name("_x9"));
  CHECK_FALSE(AtomTable::valid_name("v"));      // reserved: disjunction token
  CHECK_FALSE(AtomTable::valid_name("true"));
  CHECK_FALSE(AtomTable::valid_name("false"));
  CHECK_FALSE(AtomTable::valid_name("Bird"));
  CHECK_FALSE(AtomTable::valid_name("9x"));
  CHECK_FALSE(AtomTable::valid_name(""));

  AtomTable t;
  CHECK(t.add("bird") == 0);
  CHECK(t.add("fly") == 1);
  CHECK(t.index_of("fly") == 1);
  CHECK(t.index_of("nope") == -1);
  CHECK_THROWS_AS(t.add("bird"), StructuralError);
  CHECK_THROWS_AS(t.add("TRUE!"), StructuralError);
}

TEST_CASE("eval_event basics") {
  // atoms: bird=0, penguin=1, fly=2
  World w{0b101, 3};  // bird, fly true; penguin false
  CHECK(eval_event(w, Event::land(Event::atom(0), Event::atom(2))));
  CHECK(eval_event(w, Event::top()));
  CHECK_FALSE(eval_event(w, Event::bottom()));
  CHECK(eval_event(w, Event::land(Event::lnot(Event::atom(1)), Event::atom(0))));
  CHECK(eval_event(w, Event::lor(Event::atom(1), Event::atom(2))));
  CHECK(eval_event(w, Event::implies(Event::atom(1), Event::bottom())));
  CHECK_THROWS_AS(eval_event(w, Event::atom(7)), StructuralError);
}

TEST_CASE("eval_conditional tri-state") {
  ConditionalEvent c{Event::atom(2), Event::atom(0)};  // fly | bird
  CHECK(eval_conditional(World{0b101, 3}, c) == TriState::True);
  CHECK(eval_conditional(World{0b001, 3}, c) == TriState::False);
  CHECK(eval_conditional(World{0b100, 3}, c) == TriState::Indeterminate);
}

TEST_CASE("enumerate_worlds") {
  AtomTable two;
  two.add("a");
  two.add("b");
  CHECK(enumerate_worlds(two).size() == 4);

  AtomTable four;
  for (const char* n : {"bird", "penguin", "fly", "have_legs"}) four.add(n);
  CHECK(enumerate_worlds(four).size() == 16);

  AtomTable empty;
  CHECK(enumerate_worlds(empty).size() == 1);

  AtomTable big;
  for (char c = 'a'; c < 'a' + 17; ++c) big.add(std::string(1, c));
  CHECK_THROWS_AS(enumerate_worlds(big), ResourceLimitError);
  CHECK(enumerate_worlds(big, 17).size() == 1u << 17);
}

TEST_CASE("equivalent") {
  Event a = Event::atom(0), b = Event::atom(1);
  CHECK(equivalent(Event::lnot(Event::lnot(a)), a, 2));
  CHECK(equivalent(Event::lor(a, b), Event::lor(b, a), 2));
  CHECK_FALSE(equivalent(a, b, 2));
  CHECK(equivalent(Event::land(a, Event::lnot(a)), Event::bottom(), 2));
  CHECK(equivalent(Event::implies(a, b), Event::lor(Event::lnot(a), b), 2));
}

TEST_CASE("world_mask") {
  WorldSpace ws{2};
  auto m = world_mask(Event::land(Event::atom(0), Event::atom(1)), ws);
  CHECK(m == std::vector<char>{0, 0, 0, 1});
  auto mn = world_mask(Event::lnot(Event::atom(0)), ws);
  CHECK(mn == std::vector<char>{1, 0, 1, 0});
}

TEST_CASE("collect_atoms and max_atom") {
  Event e = Event::land(Event::atom(0), Event::lnot(Event::atom(3)));
  CHECK(e.max_atom() == 3);
  CHECK(Event::top().max_atom() == -1);
  std::vector<bool> used(4, false);
  e.collect_atoms(used);
  CHECK(used == std::vector<bool>{true, false, false, true});
}
