#include <benchmark/benchmark.h>

#include "vmbandit/dataset.hpp"
#include "vmbandit/simulator.hpp"

using namespace vmbandit;

namespace {

void BM_SelectEpsilonGreedy(benchmark::State& state) {
  PolicyState st = make_policy_state(EpsilonGreedy{0.1}, 10);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(select_arm(st, rng));
}
BENCHMARK(BM_SelectEpsilonGreedy);

void BM_SelectUcb1(benchmark::State& state) {
  PolicyState st = make_policy_state(Ucb1{}, 10);
  Rng rng(1);
  for (std::size_t i = 0; i < 10; ++i) update_policy(st, i, 1.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(select_arm(st, rng));
}
BENCHMARK(BM_SelectUcb1);

void BM_SelectThompson(benchmark::State& state) {
  PolicyState st = make_policy_state(Thompson{}, 10);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(select_arm(st, rng));
}
BENCHMARK(BM_SelectThompson);

void BM_Update(benchmark::State& state) {
  PolicyState st = make_policy_state(Thompson{}, 10);
  Rng rng(1);
  std::size_t arm = 0;
  for (auto _ : state) {
    update_policy(st, arm, (arm & 1) ? 1.0 : 0.0, rng);
    arm = (arm + 1) % 10;
  }
}
BENCHMARK(BM_Update);

void BM_PullClippedGaussian(benchmark::State& state) {
  const Fleet fleet = Fleet::reference(ClippedGaussian{0.3});
  Rng rng(1);
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fleet.pull(t % 10, t, rng));
    ++t;
  }
}
BENCHMARK(BM_PullClippedGaussian);

void BM_RunEpisode(benchmark::State& state) {
  const SimulationConfig config{Fleet::reference(Bernoulli{}),
                                {"thompson"},
                                static_cast<std::uint64_t>(state.range(0)),
                                1,
                                42};
  std::uint64_t rep = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_episode(config, rep++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunEpisode)->Arg(500)->Arg(2000);

void BM_GenerateDataset(benchmark::State& state) {
  const Fleet fleet = Fleet::reference(ClippedGaussian{0.3});
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_anomaly_dataset(fleet, 5000, seed++));
  state.SetItemsProcessed(state.iterations() * 5000 * 10);
}
BENCHMARK(BM_GenerateDataset);

void BM_ExactExpectedValue(benchmark::State& state) {
  const Fleet fleet({{"a", 0.9}, {"b", 0.5}, {"c", 0.1}}, Bernoulli{});
  for (auto _ : state)
    benchmark::DoNotOptimize(exact_expected_value(fleet, EpsilonGreedy{0.5}, 12));
}
BENCHMARK(BM_ExactExpectedValue);

}  // namespace

BENCHMARK_MAIN();
