#include "vmbandit/policy.hpp"

#include <cmath>
#include <stdexcept>

#include "vmbandit/errors.hpp"
#include "vmbandit/numeric.hpp"

namespace vmbandit {

namespace {

std::size_t argmax_estimate(const std::vector<ArmEstimate>& arms) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < arms.size(); ++i)
    if (arms[i].value_estimate > arms[best].value_estimate) best = i;
  return best;
}

}  // namespace

void validate_policy(const PolicyKind& kind) {
  std::visit(
      [](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, EpsilonGreedy>) {
          if (!(k.epsilon >= 0.0 && k.epsilon <= 1.0))
            throw ConfigError("epsilon must lie in [0,1]");
        } else if constexpr (std::is_same_v<K, Ucb1>) {
          if (!(k.c > 0.0) || !std::isfinite(k.c))
            throw ConfigError("ucb1 exploration constant must be positive and finite");
        } else if constexpr (std::is_same_v<K, Thompson>) {
          if (!(k.alpha0 > 0.0) || !std::isfinite(k.alpha0) || !(k.beta0 > 0.0) ||
              !std::isfinite(k.beta0))
            throw ConfigError("thompson prior parameters must be positive and finite");
        }
      },
      kind);
}

PolicyState make_policy_state(PolicyKind kind, std::size_t num_arms) {
  if (num_arms == 0) throw ConfigError("policy needs at least one arm");
  validate_policy(kind);
  PolicyState state{kind, {}, 0};
  ArmEstimate init;
  if (const auto* ts = std::get_if<Thompson>(&state.kind)) {
    init.alpha = ts->alpha0;
    init.beta = ts->beta0;
  }
  state.arms.assign(num_arms, init);
  return state;
}

std::size_t select_arm(const PolicyState& state, Rng& rng) {
  const std::size_t k = state.arms.size();
  return std::visit(
      [&](const auto& kind) -> std::size_t {
        using K = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<K, EpsilonGreedy>) {
          if (rng.uniform01() < kind.epsilon) return rng.uniform_below(k);
          return argmax_estimate(state.arms);
        } else if constexpr (std::is_same_v<K, EpsilonFirst>) {
          if (state.t < kind.explore_steps) return rng.uniform_below(k);
          return argmax_estimate(state.arms);
        } else if constexpr (std::is_same_v<K, Ucb1>) {
          for (std::size_t i = 0; i < k; ++i)
            if (state.arms[i].pulls == 0) return i;
          const double log_t = std::log(static_cast<double>(state.t));
          std::size_t best = 0;
          double best_bound = -1.0;
          for (std::size_t i = 0; i < k; ++i) {
            const auto& a = state.arms[i];
            const double bound =
                a.value_estimate +
                kind.c * std::sqrt(log_t / static_cast<double>(a.pulls));
            if (bound > best_bound) {
              best_bound = bound;
              best = i;
            }
          }
          return best;
        } else if constexpr (std::is_same_v<K, Thompson>) {
          std::size_t best = 0;
          double best_draw = -1.0;
          for (std::size_t i = 0; i < k; ++i) {
            const double draw = rng.beta(state.arms[i].alpha, state.arms[i].beta);
            if (draw > best_draw) {
              best_draw = draw;
              best = i;
            }
          }
          return best;
        } else {
          return rng.uniform_below(k);
        }
      },
      state.kind);
}

void update_policy(PolicyState& state, std::size_t arm_id, double reward, Rng& rng) {
  if (arm_id >= state.arms.size())
    throw std::out_of_range("arm id " + std::to_string(arm_id) + " out of range");
  if (!(reward >= 0.0 && reward <= 1.0))
    throw DataError("reward " + format_double(reward) + " out of range [0,1]");
  ArmEstimate& a = state.arms[arm_id];
  a.pulls += 1;
  a.value_estimate += (reward - a.value_estimate) / static_cast<double>(a.pulls);
  state.t += 1;
  if (std::holds_alternative<Thompson>(state.kind)) {
    if (reward == 0.0 || reward == 1.0) {
      a.alpha += reward;
      a.beta += 1.0 - reward;
    } else if (rng.bernoulli(reward)) {
      a.alpha += 1.0;
    } else {
      a.beta += 1.0;
    }
  }
}

std::vector<double> allocation_probabilities(const PolicyState& state, Rng& rng,
                                             std::uint64_t n_samples) {
  if (n_samples == 0) throw ConfigError("allocation probabilities need n_samples >= 1");
  std::vector<std::uint64_t> counts(state.arms.size(), 0);
  for (std::uint64_t s = 0; s < n_samples; ++s) counts[select_arm(state, rng)] += 1;
  std::vector<double> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    probs[i] = static_cast<double>(counts[i]) / static_cast<double>(n_samples);
  return probs;
}

namespace {

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(delim, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_param(const std::string& spec, const std::string& field) {
  try {
    return parse_double(field);
  } catch (const DataError&) {
    throw ConfigError("bad number '" + field + "' in policy specifier '" + spec + "'");
  }
}

std::uint64_t parse_count(const std::string& spec, const std::string& field) {
  const double v = parse_param(spec, field);
  const auto n = static_cast<std::uint64_t>(v);
  if (v < 0.0 || static_cast<double>(n) != v)
    throw ConfigError("'" + field + "' in policy specifier '" + spec +
                      "' must be a non-negative integer");
  return n;
}

}  // namespace

std::string policy_spec_grammar() {
  return "eps:<epsilon>, epsfirst[:<steps>], ucb1[:<c>], thompson[:<alpha0>:<beta0>], random";
}

PolicyKind parse_policy_spec(const std::string& spec, std::uint64_t horizon) {
  const auto parts = split(spec, ':');
  const std::string& head = parts.front();
  const std::size_t nargs = parts.size() - 1;
  PolicyKind kind;
  if (head == "eps" && nargs == 1) {
    kind = EpsilonGreedy{parse_param(spec, parts[1])};
  } else if (head == "epsfirst" && nargs <= 1) {
    kind = EpsilonFirst{nargs == 1 ? parse_count(spec, parts[1]) : horizon / 10};
  } else if (head == "ucb1" && nargs <= 1) {
    kind = Ucb1{nargs == 1 ? parse_param(spec, parts[1]) : kDefaultUcb1C};
  } else if (head == "thompson" && (nargs == 0 || nargs == 2)) {
    kind = nargs == 2 ? Thompson{parse_param(spec, parts[1]), parse_param(spec, parts[2])}
                      : Thompson{};
  } else if (head == "random" && nargs == 0) {
    kind = UniformRandom{};
  } else {
    throw ConfigError("unknown policy specifier '" + spec +
                      "'; valid specifiers: " + policy_spec_grammar());
  }
  validate_policy(kind);
  return kind;
}

std::string canonical_policy_spec(const PolicyKind& kind) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, EpsilonGreedy>)
          return "eps:" + format_double(k.epsilon);
        else if constexpr (std::is_same_v<K, EpsilonFirst>)
          return "epsfirst:" + std::to_string(k.explore_steps);
        else if constexpr (std::is_same_v<K, Ucb1>)
          return "ucb1:" + format_double(k.c);
        else if constexpr (std::is_same_v<K, Thompson>)
          return "thompson:" + format_double(k.alpha0) + ":" + format_double(k.beta0);
        else
          return "random";
      },
      kind);
}

}  // namespace vmbandit
