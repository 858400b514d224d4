#pragma once

#include <filesystem>

#include "vmbandit/numeric.hpp"
#include "vmbandit/simulator.hpp"

namespace vmbandit {

// JSON configuration schema:
//   {
//     "fleet": {
//       "arms": [{"name": "VM1", "p": 0.98}, ...],
//       "reward_model": "bernoulli" | "clipped_gaussian",
//       "sigma": 0.3            // optional, clipped_gaussian only
//     },
//     "policy": "eps:0.1",      // or "policies": ["eps:0.1", "ucb1"]
//     "horizon": 500,           // optional
//     "replications": 100,      // optional
//     "seed": 42                // optional
//   }
// Unknown keys are rejected; errors name the offending key path.
SimulationConfig load_config(const std::filesystem::path& path);

void write_report_json(const ComparisonReport& report, const std::filesystem::path& path);
ComparisonReport read_report_json(const std::filesystem::path& path);

// Curve CSV schema: t,policy,mean_cum_regret,std_cum_regret,definition with
// one row per (policy, definition, step).
void write_curves_csv(const ComparisonReport& report, const std::filesystem::path& path);

// Sweep CSV schema: name,preference_probability,reward,regret.
void write_table_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

}  // namespace vmbandit
