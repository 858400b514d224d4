// vmbandit — deterministic multi-armed-bandit simulator for security-aware
// VM allocation. Subcommands: generate, simulate, compare, tables.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vmbandit/dataset.hpp"
#include "vmbandit/errors.hpp"
#include "vmbandit/io.hpp"
#include "vmbandit/simulator.hpp"

namespace {

using namespace vmbandit;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint32_t> runs;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

void apply_overrides(SimulationConfig& config, const CommonFlags& flags) {
  if (flags.horizon) config.horizon = *flags.horizon;
  if (flags.runs) config.replications = *flags.runs;
  if (flags.seed) config.base_seed = *flags.seed;
}

std::string frequencies_line(const Fleet& fleet, const std::vector<double>& freqs) {
  std::string line;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (i) line += ' ';
    line += fleet.arms()[i].name + "=" + format_double(freqs[i]);
  }
  return line;
}

int cmd_generate(const CommonFlags& flags, std::uint64_t samples,
                 const std::string& out_path) {
  const SimulationConfig config = load_config(flags.config_path);
  const std::uint64_t seed = flags.seed.value_or(config.base_seed);
  const AnomalyDataset ds = generate_anomaly_dataset(config.fleet, samples, seed);
  write_dataset_csv(ds, out_path);
  std::cout << "wrote " << ds.n_samples << " rows x " << ds.names.size() << " columns to "
            << out_path << "; column means:";
  for (std::size_t col = 0; col < ds.names.size(); ++col)
    std::cout << ' ' << ds.names[col] << '=' << format_double(ds.column_mean(col));
  std::cout << '\n';
  return 0;
}

int cmd_simulate(const CommonFlags& flags, const std::string& policy,
                 const std::string& out_path, const std::string& format) {
  SimulationConfig config = load_config(flags.config_path);
  apply_overrides(config, flags);
  if (!policy.empty()) config.policies = {policy};
  if (config.policies.empty())
    throw ConfigError("no policy given; pass --policy or set one in the config");
  if (config.policies.size() != 1)
    throw ConfigError("config lists " + std::to_string(config.policies.size()) +
                      " policies; pass --policy to pick one, or use 'compare'");

  const ComparisonReport report = run_report(config, flags.threads);
  if (format == "json")
    write_report_json(report, out_path);
  else
    write_curves_csv(report, out_path);

  const auto& entry = report.entries.front();
  std::cout << "policy " << entry.policy << " | horizon " << report.horizon
            << " | replications " << report.replications << " | seed " << report.base_seed
            << '\n';
  std::cout << "final mean cumulative regret: oracle="
            << format_double(entry.final_mean_oracle_regret)
            << " ideal=" << format_double(entry.final_mean_ideal_regret) << '\n';
  std::cout << "final oracle regret quantiles: min="
            << format_double(entry.aggregate.oracle.final_min)
            << " median=" << format_double(entry.aggregate.oracle.final_median)
            << " max=" << format_double(entry.aggregate.oracle.final_max) << '\n';
  std::cout << "allocation frequencies: "
            << frequencies_line(report.fleet, entry.allocation_frequencies) << '\n';
  return 0;
}

int cmd_compare(const CommonFlags& flags, const std::string& policies_csv,
                const std::string& out_path, const std::string& csv_path) {
  SimulationConfig config = load_config(flags.config_path);
  apply_overrides(config, flags);
  std::vector<std::string> specs = config.policies;
  if (!policies_csv.empty()) {
    specs.clear();
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = policies_csv.find(',', start);
      specs.push_back(policies_csv.substr(start, pos - start));
      if (pos == std::string::npos) break;
      start = pos + 1;
    }
  }
  const ComparisonReport report = compare_policies(
      config.fleet, specs, config.horizon, config.replications, config.base_seed,
      flags.threads);
  write_report_json(report, out_path);
  if (!csv_path.empty()) write_curves_csv(report, csv_path);

  std::cout << "rank  policy                  final_oracle_regret  final_ideal_regret\n";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    std::printf("%-5zu %-23s %-20s %s\n", i + 1, e.policy.c_str(),
                format_double(e.final_mean_oracle_regret).c_str(),
                format_double(e.final_mean_ideal_regret).c_str());
  }
  return 0;
}

int cmd_tables(const CommonFlags& flags, const std::string& out_path) {
  SimulationConfig config = load_config(flags.config_path);
  if (!std::holds_alternative<ClippedGaussian>(config.fleet.reward_model()))
    throw ConfigError("'tables' needs a clipped_gaussian fleet");
  const std::uint64_t horizon = flags.horizon.value_or(500);
  const std::uint64_t seed = flags.seed.value_or(config.base_seed);

  const auto rows = sweep_fleet(config.fleet, horizon, seed);
  write_table_csv(rows, out_path);
  std::cout << "name  preference_probability  reward  regret\n";
  for (const auto& row : rows)
    std::printf("%-5s %-23s %-7s %s\n", row.name.c_str(),
                format_double(row.preference_probability).c_str(),
                format_double(row.mean_reward).c_str(),
                format_double(row.mean_ideal_regret).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic multi-armed-bandit simulator for security-aware VM allocation"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::uint64_t samples = 5000;
  std::string policy, policies_csv, out_path, csv_path, format = "json";

  auto add_common = [&](CLI::App* cmd, bool with_runs) {
    cmd->add_option("--config", flags.config_path, "JSON configuration file")->required();
    cmd->add_option("--seed", flags.seed, "Base seed (overrides the config)")
        ->check(CLI::NonNegativeNumber);
    if (with_runs) {
      cmd->add_option("--horizon", flags.horizon, "Steps per episode (overrides the config)")
          ->check(CLI::PositiveNumber);
      cmd->add_option("--runs", flags.runs, "Replications (overrides the config)")
          ->check(CLI::PositiveNumber);
      cmd->add_option("--threads", flags.threads, "Worker threads; never affects results")
          ->check(CLI::Range(1u, 256u));
    }
  };

  CLI::App* generate = app.add_subcommand("generate", "Write a synthetic anomaly-score CSV");
  add_common(generate, false);
  generate->add_option("--samples", samples, "Rows to generate (one per hour index)")
      ->check(CLI::Range(std::uint64_t{1}, std::uint64_t{100000000}));
  generate->add_option("--out", out_path, "Output CSV path")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "Run one policy over seeded replications");
  add_common(simulate, true);
  simulate->add_option("--policy", policy,
                       "Policy specifier: " + policy_spec_grammar());
  simulate->add_option("--out", out_path, "Output report path")->required();
  simulate->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* compare = app.add_subcommand("compare", "Rank policies under common random numbers");
  add_common(compare, true);
  compare->add_option("--policies", policies_csv,
                      "Comma-separated specifiers: " + policy_spec_grammar());
  compare->add_option("--out", out_path, "Output report JSON path")->required();
  compare->add_option("--csv", csv_path, "Optional cumulative-regret curve CSV path");

  CLI::App* tables = app.add_subcommand("tables", "Per-arm mean reward/regret round-robin sweep");
  add_common(tables, false);
  tables->add_option("--horizon", flags.horizon, "Rounds (every arm is pulled once per round)")
      ->check(CLI::PositiveNumber);
  tables->add_option("--out", out_path, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    std::cerr << app.help() << '\n';
    return 1;
  }

  try {
    if (generate->parsed()) return cmd_generate(flags, samples, out_path);
    if (simulate->parsed()) return cmd_simulate(flags, policy, out_path, format);
    if (compare->parsed()) return cmd_compare(flags, policies_csv, out_path, csv_path);
    return cmd_tables(flags, out_path);
  } catch (const vmbandit::IoError& e) {
    std::cerr << "error: io: " << e.what() << '\n';
    return 2;
  } catch (const vmbandit::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return 1;
  } catch (const vmbandit::DataError& e) {
    std::cerr << "error: data: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
}
