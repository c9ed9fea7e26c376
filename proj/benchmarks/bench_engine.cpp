#include <benchmark/benchmark.h>

#include "probkb/coherence.hpp"
#include "probkb/kb_text.hpp"
#include "probkb/preferential.hpp"
#include "probkb/semantics.hpp"

namespace {

const char* kKbText = R"(atoms: bird penguin fly have_legs
L: penguin => bird
P: (have_legs | bird) [1, 1]
P: (fly | bird) [1, 1]
P: (fly | penguin) [0, 1/20]
)";

probkb::KnowledgeBase kb() { return probkb::parse_kb(kKbText); }

void BM_TightLogical(benchmark::State& state) {
  auto k = kb();
  auto ws = probkb::enumerate_worlds(k.atoms);
  probkb::ConditionalEvent q{probkb::Event::atom(3), probkb::Event::atom(1)};
  for (auto _ : state)
    benchmark::DoNotOptimize(probkb::tight_logical(k.logical, k.conditional, ws, q));
}
BENCHMARK(BM_TightLogical);

void BM_ZPartition(benchmark::State& state) {
  auto k = kb();
  for (auto _ : state) benchmark::DoNotOptimize(probkb::z_partition(k));
}
BENCHMARK(BM_ZPartition);

void BM_ZTight(benchmark::State& state) {
  auto k = kb();
  probkb::ConditionalEvent q{probkb::Event::atom(3), probkb::Event::atom(1)};
  for (auto _ : state) benchmark::DoNotOptimize(probkb::z_tight(k, q));
}
BENCHMARK(BM_ZTight);

void BM_GTight(benchmark::State& state) {
  auto k = kb();
  probkb::GTightEngine engine(k);
  probkb::ConditionalEvent q{probkb::Event::atom(3), probkb::Event::atom(1)};
  for (auto _ : state) benchmark::DoNotOptimize(engine.tight(q));
}
BENCHMARK(BM_GTight);

}  // namespace

BENCHMARK_MAIN();
