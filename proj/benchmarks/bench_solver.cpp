#include <refsel/solver_dp.hpp>
#include <refsel/solver_oracle.hpp>

#include <benchmark/benchmark.h>

namespace {

// Window of su ticks with a margin of su/10 on each side, cameras every 4 ticks.
refsel::Scenario ladder(std::int64_t su, int capacity) {
  using refsel::Rational;
  const std::int64_t margin = su / 10;
  const std::int64_t n = su + 2 * margin;
  std::vector<Rational> cams;
  for (std::int64_t t = 0; t < n; t += 4)
    cams.push_back(Rational::from_int(t));
  cams.push_back(Rational::from_int(n));
  refsel::Scenario s;
  s.grid = refsel::build_grid(1, 5, Rational::from_int(n), cams);
  s.window = {refsel::ViewTick{margin}, refsel::ViewTick{margin + su - 1}};
  s.capacity = capacity;
  s.params.gamma = 0.05;
  s.evaluator = refsel::DistortionEvaluator::closed_form(s.params);
  return s;
}

void BM_SolveDp(benchmark::State &state) {
  const auto s = ladder(state.range(0), static_cast<int>(state.range(1)));
  for (auto _ : state)
    benchmark::DoNotOptimize(refsel::solve(s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveDp)
    ->ArgsProduct({{20, 40, 80, 160}, {4}})
    ->Unit(benchmark::kMillisecond)
    ->Complexity();
BENCHMARK(BM_SolveDp)->ArgsProduct({{80}, {2, 3, 5, 6}})->Unit(benchmark::kMillisecond);

void BM_SolveCamerasOnly(benchmark::State &state) {
  auto s = ladder(state.range(0), 4);
  s.candidate_mode = refsel::CandidateMode::CamerasOnly;
  for (auto _ : state)
    benchmark::DoNotOptimize(refsel::solve(s));
}
BENCHMARK(BM_SolveCamerasOnly)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_Exhaustive(benchmark::State &state) {
  const auto s = ladder(state.range(0), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(refsel::exhaustive_solve(s));
}
BENCHMARK(BM_Exhaustive)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
