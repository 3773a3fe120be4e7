#include <benchmark/benchmark.h>

#include <random>

#include "lut/rewrite.hpp"
#include "lut/semantics.hpp"
#include "lut/suite.hpp"

namespace {

void BM_ParseRender(benchmark::State& state) {
  const std::string text = "[p & ~K_a q] (U_a (p | q) -> B_b ~p)";
  for (auto _ : state) {
    benchmark::DoNotOptimize(lut::render(lut::parse_formula(text)));
  }
}
BENCHMARK(BM_ParseRender);

void BM_Measures(benchmark::State& state) {
  const lut::FormulaPtr f = lut::parse_formula("[p][q][r] (K_a p & U_a q)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(lut::measures(f));
  }
}
BENCHMARK(BM_Measures);

void BM_EvalUnknowable(benchmark::State& state) {
  const lut::Model m = lut::three_state_fixture();
  const lut::FormulaPtr f = lut::parse_formula("U_i (~K_i p & ~K_i q)");
  for (auto _ : state) {
    lut::Evaluator ev(m);
    benchmark::DoNotOptimize(ev.eval(0, f));
  }
}
BENCHMARK(BM_EvalUnknowable);

void BM_Partition(benchmark::State& state) {
  std::mt19937_64 rng(99);
  const lut::Model m = [&] {
    lut::Model candidate = lut::random_model(rng, 8, {"i", "j"}, {"p", "q"});
    while (candidate.num_states() < 8) candidate = lut::random_model(rng, 8, {"i", "j"}, {"p", "q"});
    return candidate;
  }();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lut::compute_partition(m));
  }
}
BENCHMARK(BM_Partition);

void BM_Enumerate3(benchmark::State& state) {
  for (auto _ : state) {
    lut::EnumOptions o;
    o.max_states = 3;
    o.agents = {"i"};
    o.atoms = {"p"};
    lut::ModelEnumerator en(o);
    std::uint64_t n = 0;
    while (en.next()) ++n;
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_Enumerate3);

void BM_BoundedValidity(benchmark::State& state) {
  const lut::FormulaPtr f = lut::parse_formula("U_a p -> B_a p");
  for (auto _ : state) {
    lut::ValidityOptions o;
    o.max_states = 2;
    benchmark::DoNotOptimize(lut::bounded_validity(f, o));
  }
}
BENCHMARK(BM_BoundedValidity);

void BM_EliminateAnnouncements(benchmark::State& state) {
  const lut::FormulaPtr f = lut::parse_formula("[p][q][r] K_a s");
  for (auto _ : state) {
    benchmark::DoNotOptimize(lut::eliminate_announcements(f));
  }
}
BENCHMARK(BM_EliminateAnnouncements);

}  // namespace

BENCHMARK_MAIN();
