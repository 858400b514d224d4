#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vmbandit/env.hpp"
#include "vmbandit/metrics.hpp"
#include "vmbandit/policy.hpp"

namespace vmbandit {

struct SimulationConfig {
  Fleet fleet;
  std::vector<std::string> policies;  // policy specifiers
  std::uint64_t horizon = 500;
  std::uint32_t replications = 100;
  std::uint64_t base_seed = 42;
};

// Stable hash of the canonical config serialization (FNV-1a over text); equal
// across runs and platforms.
std::uint64_t config_digest(const SimulationConfig& config);

// One seeded episode of config.policies.front(): select -> pull -> update ->
// record for every step. policy_index only separates policy-lane streams when
// several policies share the environment stream; standalone runs use 0.
RunLog run_episode(const SimulationConfig& config, std::uint64_t replication_index,
                   std::uint64_t policy_index = 0);

struct ReplicatedResult {
  std::vector<RunLog> logs;
  AggregateSummary aggregate;
};

// Independent episodes with replication indices 0..replications-1. Results
// are identical for any thread count.
ReplicatedResult run_replicated(const SimulationConfig& config, unsigned threads = 1);

struct PolicyComparisonEntry {
  std::string policy;  // canonical specifier
  AggregateSummary aggregate;
  std::vector<double> allocation_frequencies;  // per arm, pooled over replications
  double final_mean_ideal_regret = 0.0;
  double final_mean_oracle_regret = 0.0;

  bool operator==(const PolicyComparisonEntry&) const = default;
};

struct ComparisonReport {
  Fleet fleet;
  std::uint64_t horizon = 0;
  std::uint32_t replications = 0;
  std::uint64_t base_seed = 0;
  // Ascending by final mean cumulative oracle regret.
  std::vector<PolicyComparisonEntry> entries;

  bool operator==(const ComparisonReport&) const = default;
};

// Evaluates every policy in config.policies under common random numbers:
// replication r of each policy consumes the same environment stream.
ComparisonReport run_report(const SimulationConfig& config, unsigned threads = 1);

// run_report plus the comparison contract: at least two policies, duplicates
// (after canonicalization) rejected.
ComparisonReport compare_policies(const Fleet& fleet,
                                  const std::vector<std::string>& policy_specs,
                                  std::uint64_t horizon, std::uint32_t replications,
                                  std::uint64_t base_seed, unsigned threads = 1);

struct SweepRow {
  std::string name;
  double preference_probability = 0.0;
  double mean_reward = 0.0;
  double mean_ideal_regret = 0.0;

  bool operator==(const SweepRow&) const = default;
};

// Round-robin sweep pulling every arm once per round; per-arm means over
// `rounds` pulls.
std::vector<SweepRow> sweep_fleet(const Fleet& fleet, std::uint64_t rounds,
                                  std::uint64_t seed);

struct ExactValue {
  double expected_cumulative_reward = 0.0;
  double expected_cumulative_oracle_regret = 0.0;
};

inline constexpr std::size_t kMaxExactArms = 3;
inline constexpr std::uint64_t kMaxExactHorizon = 12;

// Exact expectations by weighted enumeration of every (selection branch,
// reward outcome) path. Bernoulli fleets with at most kMaxExactArms arms and
// horizons up to kMaxExactHorizon; policies whose selection randomness is
// continuous (Thompson) are rejected.
ExactValue exact_expected_value(const Fleet& fleet, const PolicyKind& kind,
                                std::uint64_t horizon);

}  // namespace vmbandit
