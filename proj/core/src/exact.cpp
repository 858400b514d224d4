#include <cmath>
#include <cstring>
#include <unordered_map>
#include <vector>

#include "vmbandit/errors.hpp"
#include "vmbandit/simulator.hpp"

namespace vmbandit {

namespace {

// Selection distribution implied by the policy rules, written independently
// of select_arm: branch probabilities instead of draws.
std::vector<double> selection_distribution(const PolicyState& state) {
  const std::size_t k = state.arms.size();
  std::vector<double> probs(k, 0.0);
  std::size_t greedy = 0;
  for (std::size_t i = 1; i < k; ++i)
    if (state.arms[i].value_estimate > state.arms[greedy].value_estimate) greedy = i;

  if (const auto* eg = std::get_if<EpsilonGreedy>(&state.kind)) {
    for (std::size_t i = 0; i < k; ++i) probs[i] = eg->epsilon / static_cast<double>(k);
    probs[greedy] += 1.0 - eg->epsilon;
  } else if (const auto* ef = std::get_if<EpsilonFirst>(&state.kind)) {
    if (state.t < ef->explore_steps)
      for (std::size_t i = 0; i < k; ++i) probs[i] = 1.0 / static_cast<double>(k);
    else
      probs[greedy] = 1.0;
  } else if (const auto* ucb = std::get_if<Ucb1>(&state.kind)) {
    for (std::size_t i = 0; i < k; ++i) {
      if (state.arms[i].pulls == 0) {
        probs[i] = 1.0;
        return probs;
      }
    }
    const double log_t = std::log(static_cast<double>(state.t));
    std::size_t best = 0;
    double best_bound = -1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double bound = state.arms[i].value_estimate +
                           ucb->c * std::sqrt(log_t / static_cast<double>(state.arms[i].pulls));
      if (bound > best_bound) {
        best_bound = bound;
        best = i;
      }
    }
    probs[best] = 1.0;
  } else if (std::holds_alternative<UniformRandom>(state.kind)) {
    for (std::size_t i = 0; i < k; ++i) probs[i] = 1.0 / static_cast<double>(k);
  } else {
    throw ConfigError(
        "exact expectation is not defined for policies with continuous selection "
        "randomness (thompson)");
  }
  return probs;
}

// Memo key: per-arm pull counts and the exact value-estimate bit patterns.
// Carrying the estimates as produced by update_policy keeps the enumeration
// aligned with simulated trajectories down to floating-point ties.
std::string state_key(const PolicyState& state) {
  std::string key;
  key.resize(state.arms.size() * 16);
  char* out = key.data();
  for (const auto& arm : state.arms) {
    std::memcpy(out, &arm.pulls, 8);
    std::memcpy(out + 8, &arm.value_estimate, 8);
    out += 16;
  }
  return key;
}

struct Enumerator {
  const Fleet& fleet;
  std::uint64_t horizon;
  std::vector<double> gap;  // best true mean - arm true mean
  std::unordered_map<std::string, ExactValue> memo;
  Rng scratch{0};  // update_policy never draws for non-Thompson 0/1 rewards

  ExactValue solve(const PolicyState& state) {
    if (state.t == horizon) return {};
    auto key = state_key(state);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;

    const auto probs = selection_distribution(state);
    ExactValue value;
    for (std::size_t arm = 0; arm < probs.size(); ++arm) {
      if (probs[arm] == 0.0) continue;
      const double p = fleet.arms()[arm].preference_probability;
      for (const double reward : {1.0, 0.0}) {
        const double weight = probs[arm] * (reward == 1.0 ? p : 1.0 - p);
        if (weight == 0.0) continue;
        PolicyState child = state;
        update_policy(child, arm, reward, scratch);
        const ExactValue rest = solve(child);
        value.expected_cumulative_reward +=
            weight * (reward + rest.expected_cumulative_reward);
        value.expected_cumulative_oracle_regret +=
            weight * (gap[arm] + rest.expected_cumulative_oracle_regret);
      }
    }
    memo.emplace(std::move(key), value);
    return value;
  }
};

}  // namespace

ExactValue exact_expected_value(const Fleet& fleet, const PolicyKind& kind,
                                std::uint64_t horizon) {
  if (!std::holds_alternative<Bernoulli>(fleet.reward_model()))
    throw ConfigError("exact expectation requires a Bernoulli fleet");
  if (fleet.size() > kMaxExactArms || horizon > kMaxExactHorizon)
    throw ConfigError("instance too large for exhaustive enumeration (at most " +
                      std::to_string(kMaxExactArms) + " arms and horizon " +
                      std::to_string(kMaxExactHorizon) + ")");
  if (std::holds_alternative<Thompson>(kind))
    throw ConfigError(
        "exact expectation is not defined for policies with continuous selection "
        "randomness (thompson)");
  validate_policy(kind);

  Enumerator e{fleet, horizon, {}, {}, Rng{0}};
  e.gap.reserve(fleet.size());
  const double best_mean = fleet.best_arm().second;
  for (std::size_t i = 0; i < fleet.size(); ++i)
    e.gap.push_back(best_mean - fleet.true_mean(i));
  return e.solve(make_policy_state(kind, fleet.size()));
}

}  // namespace vmbandit
