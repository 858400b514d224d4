// Acceptance suite: one pass/fail line per criterion, with the measured
// numbers printed underneath. Exits with the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "oracles.hpp"
#include "vmbandit/dataset.hpp"
#include "vmbandit/io.hpp"
#include "vmbandit/simulator.hpp"

using namespace vmbandit;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr unsigned kThreads = 4;

const double kReferenceRewards[10] = {0.8699699, 0.8532210, 0.8237321, 0.7907654, 0.7555953,
                                   0.7168073, 0.6760537, 0.6335874, 0.5451657, 0.4995684};
const double kReferenceRegrets[10] = {
    0.13000300493547656, 0.14677899267818123, 0.17626787165447283, 0.2092324508302787,
    0.2444046877681307,  0.28319260434966553, 0.32394625504245034, 0.36641251834004895,
    0.4548342919317785,  0.5004031596862766};
const double kPreferenceProbabilities[10] = {0.98, 0.95, 0.90, 0.85, 0.8,
                                             0.75, 0.7,  0.65, 0.55, 0.5};

struct Check {
  bool ok = true;
  std::ostringstream detail;

  template <typename... Args>
  void require(bool condition, const char* fmt, Args... args) {
    char buf[512];
    if constexpr (sizeof...(Args) == 0)
      std::snprintf(buf, sizeof(buf), "%s", fmt);
    else
      std::snprintf(buf, sizeof(buf), fmt, args...);
    detail << "    " << (condition ? "ok  " : "FAIL") << "  " << buf << "\n";
    ok = ok && condition;
  }
};

std::vector<double> final_oracle_regrets(const Fleet& fleet, const std::string& spec,
                                         std::uint64_t horizon, std::uint32_t reps,
                                         std::uint64_t policy_index) {
  const SimulationConfig config{fleet, {spec}, horizon, reps, kSeed};
  std::vector<double> finals(reps);
  for (std::uint32_t r = 0; r < reps; ++r) {
    double acc = 0.0;
    for (const auto& rec : run_episode(config, r, policy_index).records)
      acc += rec.oracle_regret;
    finals[r] = acc;
  }
  return finals;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// --- criterion 1: per-arm mean rewards in the 500-step round-robin sweep ---
bool criterion1(Check& c) {
  const Fleet fleet = Fleet::reference(ClippedGaussian{0.3});
  double integrated[10];
  for (int i = 0; i < 10; ++i)
    integrated[i] = oracles::clipped_normal_mean(kPreferenceProbabilities[i], 0.3);

  for (int i = 0; i < 10; ++i)
    c.require(std::abs(integrated[i] - kReferenceRewards[i]) <= 0.005,
              "integrated mean for p=%.2f is %.7f vs reference value %.7f (tol 0.005)",
              kPreferenceProbabilities[i], integrated[i], kReferenceRewards[i]);

  const auto sweep500 = sweep_fleet(fleet, 500, kSeed);
  for (int i = 0; i < 10; ++i)
    c.require(std::abs(sweep500[i].mean_reward - kReferenceRewards[i]) <= 0.04,
              "%s: 500-step mean %.4f vs reference %.7f (tol 0.04)",
              sweep500[i].name.c_str(), sweep500[i].mean_reward, kReferenceRewards[i]);

  const auto sweep1m = sweep_fleet(fleet, 1000000, kSeed);
  for (int i = 0; i < 10; ++i)
    c.require(std::abs(sweep1m[i].mean_reward - integrated[i]) <= 0.005,
              "%s: 1e6-pull mean %.5f vs integrated %.5f (tol 0.005)",
              sweep1m[i].name.c_str(), sweep1m[i].mean_reward, integrated[i]);
  return c.ok;
}

// --- criterion 2: regret identity, emitted exactly and in the printed rows ---
bool criterion2(Check& c) {
  const Fleet fleet({{"vm", 0.5}}, Bernoulli{});
  RunLog log;
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  bool exact = true;
  std::uint64_t t = 0;
  for (double r : {0.0, 1.0, 0.5, 1e-17, 1.0 - 1e-16}) {
    record_step(log, t++, 0, r, fleet);
    exact = exact && log.records.back().reward + log.records.back().ideal_regret == 1.0;
  }
  for (int i = 0; i < 100000; ++i) {
    record_step(log, t++, 0, dist(gen), fleet);
    exact = exact && log.records.back().reward + log.records.back().ideal_regret == 1.0;
  }
  c.require(exact, "emitted ideal_regret satisfies reward + regret == 1 exactly (100005 records)");

  double worst = 0.0;
  for (int i = 0; i < 10; ++i)
    worst = std::max(worst, std::abs(kReferenceRewards[i] + kReferenceRegrets[i] - 1.0));
  c.require(worst <= 5e-5,
            "reference rows: worst |reward + regret - 1| = %.2e (tol 5e-5; the reference "
            "values are internally inconsistent by up to 2.9e-5)",
            worst);
  return c.ok;
}

// --- criterion 3: ucb1 below every epsilon-greedy variant at 2000 steps ---
bool criterion3(Check& c) {
  const auto report =
      compare_policies(Fleet::reference(Bernoulli{}),
                       {"ucb1", "eps:0.1", "eps:0.2", "eps:0.3", "eps:0.4"}, 2000, 100,
                       kSeed, kThreads);
  double ucb_final = 0.0;
  const std::string ucb_name = canonical_policy_spec(Ucb1{});
  for (const auto& entry : report.entries)
    if (entry.policy == ucb_name) ucb_final = entry.final_mean_oracle_regret;
  for (const auto& entry : report.entries) {
    if (entry.policy == ucb_name) continue;
    c.require(ucb_final < entry.final_mean_oracle_regret,
              "%s: mean final oracle regret %.2f vs %.2f for %s", ucb_name.c_str(),
              ucb_final, entry.final_mean_oracle_regret, entry.policy.c_str());
  }
  return c.ok;
}

// --- criterion 4: thompson vs epsilon-greedy at 1000 steps ---
bool criterion4(Check& c) {
  const Fleet fleet = Fleet::reference(Bernoulli{});
  const std::vector<std::string> specs = {"thompson", "eps:0.1", "eps:0.2", "eps:0.3",
                                          "eps:0.4"};
  std::vector<std::vector<double>> finals;
  for (std::size_t i = 0; i < specs.size(); ++i)
    finals.push_back(final_oracle_regrets(fleet, specs[i], 1000, 100, i));

  const double ts_median = median_of(finals[0]);
  c.require(ts_median <= 5.0,
            "thompson median final oracle regret %.2f (required <= 5; the 10-arm fleet's "
            "0.03 top gap puts the achievable floor well above 5)",
            ts_median);

  for (std::size_t i = 1; i < specs.size(); ++i) {
    int wins = 0;
    for (std::size_t r = 0; r < finals[i].size(); ++r) wins += finals[0][r] < finals[i][r];
    c.require(wins >= 90, "thompson below %s in %d/100 paired replications (required >= 90)",
              specs[i].c_str(), wins);
  }

  const double eps01_max = *std::max_element(finals[1].begin(), finals[1].end());
  c.require(eps01_max >= 4.0 * ts_median,
            "eps:0.1 final regrets reach %.2f vs 4x thompson median %.2f", eps01_max,
            4.0 * ts_median);
  return c.ok;
}

// --- criterion 5: VM1 has the highest pull count for every learning policy ---
bool criterion5(Check& c) {
  const Fleet fleet = Fleet::reference(Bernoulli{});
  const std::vector<std::string> specs = {"eps:0.1", "eps:0.2",      "eps:0.3", "eps:0.4",
                                          "epsfirst:200", "ucb1", "thompson"};
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const SimulationConfig config{fleet, {specs[i]}, 2000, 100, kSeed};
    int top = 0;
    for (std::uint32_t r = 0; r < 100; ++r) {
      std::vector<std::uint64_t> pulls(fleet.size(), 0);
      for (const auto& rec : run_episode(config, r, i).records) pulls[rec.arm_id] += 1;
      bool vm1_top = true;
      for (std::size_t a = 1; a < pulls.size(); ++a)
        if (pulls[a] >= pulls[0]) {
          vm1_top = false;
          break;
        }
      top += vm1_top;
    }
    c.require(top >= 95, "%s: VM1 has the top pull count in %d/100 replications (>= 95)",
              specs[i].c_str(), top);
  }
  return c.ok;
}

// --- criterion 6: simulation matches the exhaustive-enumeration expectation ---
bool criterion6(Check& c) {
  struct Instance {
    std::vector<std::pair<std::string, double>> arms;
    std::uint64_t horizon;
  };
  const std::vector<Instance> instances = {
      {{{"a", 0.7}}, 3},
      {{{"a", 0.9}, {"b", 0.1}}, 3},
      {{{"a", 0.9}, {"b", 0.1}}, 8},
      {{{"a", 0.55}, {"b", 0.5}}, 10},
      {{{"a", 0.9}, {"b", 0.5}, {"c", 0.1}}, 12},
  };
  const int reps = 100000;
  for (const char* spec : {"eps:0", "eps:0.5", "random"}) {
    for (const auto& inst : instances) {
      const Fleet fleet(inst.arms, Bernoulli{});
      const auto exact =
          exact_expected_value(fleet, parse_policy_spec(spec, inst.horizon), inst.horizon);
      const SimulationConfig config{fleet, {spec}, inst.horizon, reps, kSeed};
      double sum = 0.0, sum2 = 0.0, gsum = 0.0, gsum2 = 0.0;
      for (int r = 0; r < reps; ++r) {
        double reward = 0.0, regret = 0.0;
        for (const auto& rec : run_episode(config, r).records) {
          reward += rec.reward;
          regret += rec.oracle_regret;
        }
        sum += reward;
        sum2 += reward * reward;
        gsum += regret;
        gsum2 += regret * regret;
      }
      const double mean = sum / reps;
      const double se = std::sqrt(std::max(0.0, sum2 / reps - mean * mean) / reps);
      const double gmean = gsum / reps;
      const double gse = std::sqrt(std::max(0.0, gsum2 / reps - gmean * gmean) / reps);
      c.require(std::abs(mean - exact.expected_cumulative_reward) <= 3.0 * se + 1e-9,
                "%-8s %zu arms h=%-2llu reward: sim %.4f vs exact %.4f (3se %.4f)", spec,
                inst.arms.size(), static_cast<unsigned long long>(inst.horizon), mean,
                exact.expected_cumulative_reward, 3.0 * se);
      c.require(std::abs(gmean - exact.expected_cumulative_oracle_regret) <= 3.0 * gse + 1e-9,
                "%-8s %zu arms h=%-2llu regret: sim %.4f vs exact %.4f (3se %.4f)", spec,
                inst.arms.size(), static_cast<unsigned long long>(inst.horizon), gmean,
                exact.expected_cumulative_oracle_regret, 3.0 * gse);
    }
  }
  return c.ok;
}

// --- criterion 7: invariant suite ---
int run_cli(const std::string& args) {
  const std::string cmd = std::string(VMBANDIT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return !sa.str().empty() && sa.str() == sb.str();
}

bool criterion7(Check& c) {
  const Fleet fleet = Fleet::reference(Bernoulli{});

  {  // value estimates equal the arithmetic mean of the trace, to 1e-12
    bool ok = true;
    for (int trial = 0; trial < 5; ++trial) {
      const SimulationConfig config{Fleet::reference(ClippedGaussian{0.3}),
                                    {"eps:0.3"}, 1000, 1,
                                    static_cast<std::uint64_t>(trial)};
      const RunLog log = run_episode(config, 0);
      PolicyState st = make_policy_state(EpsilonGreedy{0.3}, 10);
      Rng scratch(0);
      std::vector<double> sums(10, 0.0);
      std::vector<std::uint64_t> counts(10, 0);
      for (const auto& rec : log.records) {
        update_policy(st, rec.arm_id, rec.reward, scratch);
        sums[rec.arm_id] += rec.reward;
        counts[rec.arm_id] += 1;
      }
      for (std::size_t a = 0; a < 10; ++a)
        if (counts[a] > 0)
          ok = ok && std::abs(st.arms[a].value_estimate -
                              sums[a] / static_cast<double>(counts[a])) <= 1e-12;
    }
    c.require(ok, "value estimates match trace means to 1e-12");
  }
  {  // Beta posterior mass conservation
    PolicyState st = make_policy_state(Thompson{}, 10);
    Rng pol(3), env(4);
    bool ok = true;
    for (int i = 0; i < 20000; ++i) {
      const std::size_t arm = select_arm(st, pol);
      update_policy(st, arm, env.uniform01(), pol);
    }
    for (const auto& arm : st.arms)
      ok = ok && arm.alpha + arm.beta - 2.0 == static_cast<double>(arm.pulls);
    c.require(ok, "alpha + beta - alpha0 - beta0 == pulls after 20000 updates");
  }
  {  // monotone cumulative regret, both definitions
    bool ok = true;
    for (int trial = 0; trial < 5; ++trial) {
      const SimulationConfig config{fleet, {"thompson"}, 500, 1,
                                    static_cast<std::uint64_t>(trial)};
      const RunLog log = run_episode(config, 0);
      for (const auto kind : {RegretKind::ideal, RegretKind::oracle}) {
        const auto curve = cumulative_regret_curve(log, kind);
        for (std::size_t i = 1; i < curve.size(); ++i) ok = ok && curve[i] >= curve[i - 1];
      }
    }
    c.require(ok, "cumulative regret curves are nondecreasing");
  }
  {  // allocation frequency normalization
    const SimulationConfig config{fleet, {"eps:0.2"}, 777, 1, 5};
    const auto summary = per_arm_summary(run_episode(config, 0), fleet.size());
    double freq_sum = 0.0;
    std::uint64_t pulls = 0;
    for (const auto& arm : summary) {
      freq_sum += arm.allocation_frequency;
      pulls += arm.pulls;
    }
    c.require(pulls == 777 && std::abs(freq_sum - 1.0) <= 1e-12,
              "pulls sum to the horizon and frequencies to 1 (1e-12)");
  }
  {  // ucb1 initial round-robin
    PolicyState st = make_policy_state(Ucb1{}, 10);
    Rng pol(1), env(2);
    bool ok = true;
    for (std::size_t t = 0; t < 10; ++t) {
      const std::size_t arm = select_arm(st, pol);
      ok = ok && arm == t;
      update_policy(st, arm, fleet.pull(arm, t, env).reward, pol);
    }
    c.require(ok, "ucb1 pulls every arm once, in id order, before using the bound");
  }
  {  // EpsilonFirst(0) behaves identically to EpsilonGreedy(0)
    const SimulationConfig a{fleet, {"epsfirst:0"}, 2000, 1, 6};
    const SimulationConfig b{fleet, {"eps:0"}, 2000, 1, 6};
    const RunLog la = run_episode(a, 0);
    const RunLog lb = run_episode(b, 0);
    bool ok = la.records.size() == lb.records.size();
    for (std::size_t i = 0; ok && i < la.records.size(); ++i)
      ok = la.records[i].arm_id == lb.records[i].arm_id &&
           la.records[i].reward == lb.records[i].reward;
    c.require(ok, "epsfirst:0 and eps:0 produce identical episodes");
  }
  {  // bit-identical reruns, also across thread counts
    const SimulationConfig config{fleet, {"thompson"}, 400, 16, 9};
    const auto r1 = run_replicated(config, 1);
    const auto r2 = run_replicated(config, 1);
    const auto r4 = run_replicated(config, 4);
    c.require(r1.logs == r2.logs && r1.aggregate == r2.aggregate,
              "rerunning a fixed seed reproduces logs and aggregates bit-identically");
    c.require(r1.logs == r4.logs && r1.aggregate == r4.aggregate,
              "1-thread and 4-thread runs are bit-identical");
  }
  {  // the CLI writes byte-identical artifacts across reruns and thread counts
    const auto dir = fs::temp_directory_path() / "vmbandit-acceptance";
    fs::create_directories(dir);
    const std::string config_path =
        (fs::path(VMBANDIT_CONFIG_DIR) / "paper-fleet-bernoulli.json").string();
    const auto o1 = dir / "a.json", o2 = dir / "b.json", o3 = dir / "c.json";
    const std::string base = "compare --config " + config_path +
                             " --policies eps:0.1,ucb1,thompson --horizon 120 --runs 10 "
                             "--seed 31 --out ";
    const int e1 = run_cli(base + o1.string() + " --threads 1");
    const int e2 = run_cli(base + o2.string() + " --threads 1");
    const int e3 = run_cli(base + o3.string() + " --threads 3");
    c.require(e1 == 0 && e2 == 0 && e3 == 0, "cli invocations exit 0");
    c.require(same_bytes(o1, o2), "identical cli invocations write byte-identical files");
    c.require(same_bytes(o1, o3), "--threads does not change cli artifacts");
  }
  return c.ok;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* title;
    std::function<bool(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "per-arm mean rewards reproduce the reference values at 500 steps", criterion1},
      {2, "every emitted regret is exactly 1 - reward", criterion2},
      {3, "ucb1 has the lowest mean final oracle regret at 2000 steps", criterion3},
      {4, "thompson dominates epsilon-greedy at 1000 steps", criterion4},
      {5, "VM1 collects the most pulls for every learning policy", criterion5},
      {6, "simulation matches exhaustive-enumeration expectations", criterion6},
      {7, "invariant suite", criterion7},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Check check;
    bool ok = false;
    try {
      ok = criterion.run(check);
    } catch (const std::exception& e) {
      check.detail << "    exception: " << e.what() << "\n";
    }
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.title);
    std::fputs(check.detail.str().c_str(), stdout);
    failed += !ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
