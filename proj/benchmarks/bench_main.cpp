#include <benchmark/benchmark.h>

#include "spreadspeed/fbsim.hpp"
#include "spreadspeed/phaseplane.hpp"
#include "spreadspeed/semiwave.hpp"
#include "spreadspeed/sweep.hpp"

namespace {

using namespace spreadspeed;

const MediumParams kMedium{1.0, 0.5, 1.0};

void BM_Intercept(benchmark::State& state) {
  const auto term = ReactionTerm::logistic();
  for (auto _ : state) {
    benchmark::DoNotOptimize(intercept(1.0, Direction::Right, kMedium, term));
  }
}
BENCHMARK(BM_Intercept);

void BM_SolveSpeed(benchmark::State& state) {
  const auto term = ReactionTerm::logistic();
  const auto dir = static_cast<Direction>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_speed(dir, kMedium, term).c_star);
  }
}
BENCHMARK(BM_SolveSpeed)
    ->Arg(static_cast<int>(Direction::Right))
    ->Arg(static_cast<int>(Direction::Left))
    ->Unit(benchmark::kMillisecond);

void BM_SpeedTriple(benchmark::State& state) {
  const auto term = ReactionTerm::logistic();
  for (auto _ : state) benchmark::DoNotOptimize(speed_triple(kMedium, term));
}
BENCHMARK(BM_SpeedTriple)->Unit(benchmark::kMillisecond);

void BM_TransformStep(benchmark::State& state) {
  const auto term = ReactionTerm::logistic();
  SimControls controls;
  controls.intervals = static_cast<std::size_t>(state.range(0));
  auto front = initial_state(InitialData::parabolic(2.0, 0.8), controls.intervals);
  std::tie(front.g_speed, front.h_speed) = front_velocities(front.u, front.width(), kMedium.stefan);
  const double dt = stable_time_step(front, kMedium, controls);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transform_step(front, dt, kMedium, term, controls));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TransformStep)->RangeMultiplier(2)->Range(100, 1600)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
