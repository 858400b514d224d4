#include "vmbandit/simulator.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "vmbandit/errors.hpp"
#include "vmbandit/numeric.hpp"

namespace vmbandit {

namespace {

void fnv1a(std::uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
}

std::string canonical_config_text(const SimulationConfig& c) {
  std::string s = "fleet=";
  for (const auto& arm : c.fleet.arms())
    s += arm.name + ":" + format_double(arm.preference_probability) + ",";
  s += "|model=";
  s += std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Bernoulli>)
          return "bernoulli";
        else
          return "clipped_gaussian:" + format_double(m.sigma);
      },
      c.fleet.reward_model());
  s += "|policies=";
  for (const auto& p : c.policies)
    s += canonical_policy_spec(parse_policy_spec(p, c.horizon)) + ",";
  s += "|horizon=" + std::to_string(c.horizon);
  s += "|replications=" + std::to_string(c.replications);
  s += "|seed=" + std::to_string(c.base_seed);
  return s;
}

void validate_config(const SimulationConfig& c) {
  if (c.horizon == 0) throw ConfigError("horizon must be >= 1");
  if (c.replications == 0) throw ConfigError("replications must be >= 1");
  if (c.policies.empty()) throw ConfigError("no policy specified");
}

std::vector<RunLog> run_many(const SimulationConfig& config, std::uint64_t policy_index,
                             unsigned threads) {
  std::vector<RunLog> logs(config.replications);
  auto work = [&](unsigned first, unsigned stride) {
    for (std::uint64_t r = first; r < config.replications; r += stride)
      logs[r] = run_episode(config, r, policy_index);
  };
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work, i, threads);
    for (auto& th : pool) th.join();
  }
  return logs;
}

}  // namespace

std::uint64_t config_digest(const SimulationConfig& config) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  fnv1a(h, canonical_config_text(config));
  return h;
}

RunLog run_episode(const SimulationConfig& config, std::uint64_t replication_index,
                   std::uint64_t policy_index) {
  validate_config(config);
  if (config.policies.size() != 1)
    throw ConfigError("run_episode expects exactly one policy, got " +
                      std::to_string(config.policies.size()));
  const PolicyKind kind = parse_policy_spec(config.policies.front(), config.horizon);
  PolicyState state = make_policy_state(kind, config.fleet.size());

  const std::uint64_t env_seed =
      derive_stream_seed(config.base_seed, replication_index, StreamLane::environment);
  Rng env(env_seed);
  Rng pol(derive_stream_seed(config.base_seed, replication_index, StreamLane::policy,
                             policy_index));

  RunLog log{config_digest(config), env_seed, {}};
  log.records.reserve(config.horizon);
  for (std::uint64_t t = 0; t < config.horizon; ++t) {
    const std::size_t arm = select_arm(state, pol);
    const RewardObservation obs = config.fleet.pull(arm, t, env);
    update_policy(state, arm, obs.reward, pol);
    record_step(log, t, obs.arm_id, obs.reward, config.fleet);
  }
  return log;
}

ReplicatedResult run_replicated(const SimulationConfig& config, unsigned threads) {
  validate_config(config);
  if (config.policies.size() != 1)
    throw ConfigError("run_replicated expects exactly one policy, got " +
                      std::to_string(config.policies.size()));
  ReplicatedResult result;
  result.logs = run_many(config, 0, threads);
  result.aggregate = merge_runs(result.logs);
  return result;
}

ComparisonReport run_report(const SimulationConfig& config, unsigned threads) {
  validate_config(config);
  ComparisonReport report{config.fleet, config.horizon, config.replications,
                          config.base_seed, {}};
  for (std::size_t i = 0; i < config.policies.size(); ++i) {
    const PolicyKind kind = parse_policy_spec(config.policies[i], config.horizon);
    SimulationConfig sub = config;
    sub.policies = {canonical_policy_spec(kind)};
    const auto logs = run_many(sub, i, threads);

    PolicyComparisonEntry entry;
    entry.policy = sub.policies.front();
    entry.aggregate = merge_runs(logs);
    entry.final_mean_ideal_regret = entry.aggregate.ideal.mean.back();
    entry.final_mean_oracle_regret = entry.aggregate.oracle.mean.back();
    std::vector<std::uint64_t> pulls(config.fleet.size(), 0);
    for (const auto& log : logs)
      for (const auto& rec : log.records) pulls[rec.arm_id] += 1;
    const double total = static_cast<double>(config.horizon) * config.replications;
    entry.allocation_frequencies.resize(config.fleet.size());
    for (std::size_t a = 0; a < pulls.size(); ++a)
      entry.allocation_frequencies[a] = static_cast<double>(pulls[a]) / total;
    report.entries.push_back(std::move(entry));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const PolicyComparisonEntry& a, const PolicyComparisonEntry& b) {
                     return a.final_mean_oracle_regret < b.final_mean_oracle_regret;
                   });
  return report;
}

ComparisonReport compare_policies(const Fleet& fleet,
                                  const std::vector<std::string>& policy_specs,
                                  std::uint64_t horizon, std::uint32_t replications,
                                  std::uint64_t base_seed, unsigned threads) {
  if (policy_specs.size() < 2)
    throw ConfigError("policy comparison needs at least two policies");
  std::set<std::string> seen;
  for (const auto& spec : policy_specs) {
    const auto canonical = canonical_policy_spec(parse_policy_spec(spec, horizon));
    if (!seen.insert(canonical).second)
      throw ConfigError("duplicate policy specifier '" + spec + "' (canonical form " +
                        canonical + ")");
  }
  return run_report(SimulationConfig{fleet, policy_specs, horizon, replications, base_seed},
                    threads);
}

std::vector<SweepRow> sweep_fleet(const Fleet& fleet, std::uint64_t rounds,
                                  std::uint64_t seed) {
  if (rounds == 0) throw ConfigError("sweep needs at least one round");
  Rng env(derive_stream_seed(seed, 0, StreamLane::environment));
  std::vector<double> reward_sum(fleet.size(), 0.0);
  for (std::uint64_t t = 0; t < rounds; ++t)
    for (std::size_t arm = 0; arm < fleet.size(); ++arm)
      reward_sum[arm] += fleet.pull(arm, t, env).reward;
  std::vector<SweepRow> rows(fleet.size());
  for (std::size_t arm = 0; arm < fleet.size(); ++arm) {
    const double mean = reward_sum[arm] / static_cast<double>(rounds);
    rows[arm] = SweepRow{fleet.arms()[arm].name,
                         fleet.arms()[arm].preference_probability, mean, 1.0 - mean};
  }
  return rows;
}

}  // namespace vmbandit
