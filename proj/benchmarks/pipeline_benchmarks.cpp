#include <benchmark/benchmark.h>

#include "aitlab/frobenius.hpp"
#include "aitlab/resolvent.hpp"
#include "aitlab/rh_classifier.hpp"

using namespace aitlab;

namespace {

// Three eigenvalue ordinates per family member, widened with the requested count.
OperatorSpec bench_spec(FamilyKind kind, int count, int jordan = 2) {
  FamilyParams p;
  for (int i = 0; i < count; ++i) p.gammas.push_back(1.3 + 1.1 * i);
  p.jordan_size = jordan;
  p.delta = 0.1;
  p.seed = 7;
  return generate_family(kind, p);
}

void BM_RieszProjection(benchmark::State& state) {
  const auto spec = bench_spec(FamilyKind::RhSemisimple, static_cast<int>(state.range(0)));
  const auto op = build_jordan_operator(spec);
  Contour contour = make_contour(op, 1.3 + 1.1 * state.range(0));
  contour.nodes_per_side = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(riesz_projection(op, contour));
}
BENCHMARK(BM_RieszProjection)->ArgsProduct({{2, 5, 10}, {64, 512}});

void BM_AdaptiveContourFrobenius(benchmark::State& state) {
  const auto spec = bench_spec(FamilyKind::RhJordan, static_cast<int>(state.range(0)), 3);
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 1.3 + 1.1 * state.range(0), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(frobenius_via_adaptive_contour(op, w));
}
BENCHMARK(BM_AdaptiveContourFrobenius)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ClosedFormFrobenius(benchmark::State& state) {
  const auto spec = bench_spec(FamilyKind::RhJordan, static_cast<int>(state.range(0)), 3);
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 1.3 + 1.1 * state.range(0), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(frobenius_via_exponential(op, w));
}
BENCHMARK(BM_ClosedFormFrobenius)->Arg(3)->Arg(8);

void BM_GrowthSequence(benchmark::State& state) {
  const auto spec = bench_spec(FamilyKind::RhJordan, 6, 4);
  const auto op = build_jordan_operator(spec);
  const auto w = spectral_window(spec, 9.0, 2.0);
  const auto model = build_standard_model(frobenius_via_exponential(op, w), w);
  for (auto _ : state) benchmark::DoNotOptimize(growth_sequence(model, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GrowthSequence)->Arg(256)->Arg(512)->Arg(2048);

void BM_EndToEnd(benchmark::State& state) {
  const auto kind = static_cast<FamilyKind>(state.range(0));
  const auto spec = bench_spec(kind, 3);
  EndToEndConfig cfg;
  cfg.sample_count = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(end_to_end_report(spec, cfg));
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_EndToEnd)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
