#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vmbandit/env.hpp"

namespace vmbandit {

enum class RegretKind {
  ideal,   // 1 - reward: shortfall from a perfect outcome
  oracle,  // best true mean - chosen true mean: expectation regret
};

struct StepRecord {
  std::uint64_t t = 0;
  std::uint32_t arm_id = 0;
  double reward = 0.0;
  double ideal_regret = 0.0;
  double oracle_regret = 0.0;

  bool operator==(const StepRecord&) const = default;
};

// Full per-step trace of one seeded episode.
struct RunLog {
  std::uint64_t config_digest = 0;
  std::uint64_t seed = 0;  // derived environment-stream seed
  std::vector<StepRecord> records;

  bool operator==(const RunLog&) const = default;
};

// Appends the step with both regrets computed from the fleet's cached true
// means. t must be the next index.
void record_step(RunLog& log, std::uint64_t t, std::uint32_t arm_id, double reward,
                 const Fleet& fleet);

struct ArmSummary {
  std::uint32_t arm_id = 0;
  std::uint64_t pulls = 0;
  std::optional<double> mean_reward;        // absent when the arm was never pulled
  std::optional<double> mean_ideal_regret;  // absent when the arm was never pulled
  double allocation_frequency = 0.0;        // pulls / horizon
};

std::vector<ArmSummary> per_arm_summary(const RunLog& log, std::size_t num_arms);

// Prefix sums of the chosen regret field; nondecreasing.
std::vector<double> cumulative_regret_curve(const RunLog& log, RegretKind kind);

struct RegretCurveStats {
  std::vector<double> mean;    // per-step mean cumulative regret across runs
  std::vector<double> stddev;  // population standard deviation across runs
  double final_min = 0.0;
  double final_median = 0.0;
  double final_max = 0.0;

  bool operator==(const RegretCurveStats&) const = default;
};

// Cross-replication statistics for both regret definitions.
struct AggregateSummary {
  std::uint64_t config_digest = 0;
  std::uint64_t horizon = 0;
  std::uint32_t replications = 0;
  RegretCurveStats ideal;
  RegretCurveStats oracle;

  bool operator==(const AggregateSummary&) const = default;
};

// All logs must share config digest and horizon. The result is invariant
// under permutation of the input list.
AggregateSummary merge_runs(const std::vector<RunLog>& logs);

inline const RegretCurveStats& curve_stats(const AggregateSummary& agg, RegretKind kind) {
  return kind == RegretKind::ideal ? agg.ideal : agg.oracle;
}

}  // namespace vmbandit
