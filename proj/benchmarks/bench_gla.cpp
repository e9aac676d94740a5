#include <benchmark/benchmark.h>

#include "gla/classify.hpp"
#include "gla/derive.hpp"
#include "gla/prop.hpp"
#include "gla/semantics.hpp"

using namespace gla;

static void BM_CheckTheorem6(benchmark::State& state) {
  const Derivation d = build_theorem6(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check(d, CheckMode::Strict));
  state.counters["steps"] = static_cast<double>(d.steps.size());
}
BENCHMARK(BM_CheckTheorem6)->DenseRange(1, 8, 1);

static void BM_BuildTheorem1(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_theorem1(n));
}
BENCHMARK(BM_BuildTheorem1)->DenseRange(1, 8, 1);

static void BM_CompileTautology(benchmark::State& state) {
  const Formula f = parse_formula("(P -> Q) & (Q -> R) & (R -> S) -> (P -> S)");
  for (auto _ : state) benchmark::DoNotOptimize(compile_tautology(f));
}
BENCHMARK(BM_CompileTautology);

static void BM_FindCountermodel(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const Formula f = Formula::impl(Formula::boxes(k, Formula::falsum()), Formula::boxes(k - 1, Formula::falsum()));
  for (auto _ : state) benchmark::DoNotOptimize(find_countermodel(f, k));
}
BENCHMARK(BM_FindCountermodel)->DenseRange(1, 5, 1);

static void BM_FindCountermodelValid(benchmark::State& state) {
  const Formula f = parse_formula("[]([]P -> P) -> []P");
  const auto bound = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_countermodel(f, bound));
}
BENCHMARK(BM_FindCountermodelValid)->DenseRange(1, 5, 1);

static void BM_Lift(benchmark::State& state) {
  const Derivation d = build_lemma2a(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lift(d));
}
BENCHMARK(BM_Lift)->DenseRange(1, 8, 1);

static void BM_CertificateAndVerify(benchmark::State& state) {
  const Generator g = parse_generator("[]^" + std::to_string(state.range(0)) + " u : v : P -> P");
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(certificate(g)));
}
BENCHMARK(BM_CertificateAndVerify)->DenseRange(0, 6, 2);
BENCHMARK_MAIN();
