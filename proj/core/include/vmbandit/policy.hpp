#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "vmbandit/rng.hpp"

namespace vmbandit {

// Default confidence width. Calibrated so the bundled 10-VM fleet, whose top
// arms sit 0.03 apart, is not over-explored at horizons of a few thousand;
// the textbook sqrt(2) keeps ~10x more pulls on runner-up arms there.
inline constexpr double kDefaultUcb1C = 0.3;

// Explore uniformly with probability epsilon, otherwise exploit argmax Q.
struct EpsilonGreedy {
  double epsilon = 0.1;
  bool operator==(const EpsilonGreedy&) const = default;
};

// Uniformly random for the first explore_steps selections, then pure argmax.
struct EpsilonFirst {
  std::uint64_t explore_steps = 0;
  bool operator==(const EpsilonFirst&) const = default;
};

// Argmax of Q_i + c * sqrt(ln t / n_i); unpulled arms are visited first in
// id order.
struct Ucb1 {
  double c = kDefaultUcb1C;
  bool operator==(const Ucb1&) const = default;
};

// Beta-Bernoulli posterior sampling: argmax of per-arm Beta(alpha, beta)
// draws.
struct Thompson {
  double alpha0 = 1.0;
  double beta0 = 1.0;
  bool operator==(const Thompson&) const = default;
};

struct UniformRandom {
  bool operator==(const UniformRandom&) const = default;
};

using PolicyKind = std::variant<EpsilonGreedy, EpsilonFirst, Ucb1, Thompson, UniformRandom>;

struct ArmEstimate {
  std::uint64_t pulls = 0;
  double value_estimate = 0.0;  // running mean reward; 0 before the first pull
  double alpha = 1.0;           // Beta posterior, maintained for Thompson
  double beta = 1.0;

  bool operator==(const ArmEstimate&) const = default;
};

struct PolicyState {
  PolicyKind kind;
  std::vector<ArmEstimate> arms;
  std::uint64_t t = 0;  // total selections so far; equals the sum of pulls

  bool operator==(const PolicyState&) const = default;
};

// Throws ConfigError when a parameter is out of range.
void validate_policy(const PolicyKind& kind);

PolicyState make_policy_state(PolicyKind kind, std::size_t num_arms);

// Ties are broken by lowest arm id everywhere.
std::size_t select_arm(const PolicyState& state, Rng& rng);

// n += 1; Q += (reward - Q)/n; t += 1. Thompson additionally moves one unit
// of posterior mass: alpha += reward for reward in {0,1}, and fractional
// rewards are binarized with an auxiliary Bernoulli(reward) draw.
void update_policy(PolicyState& state, std::size_t arm_id, double reward, Rng& rng);

// Empirical P(select == i) from n_samples selections on a frozen copy of the
// state; sums to 1 up to rounding.
std::vector<double> allocation_probabilities(const PolicyState& state, Rng& rng,
                                             std::uint64_t n_samples);

// Specifier grammar: eps:<epsilon> | epsfirst[:<steps>] | ucb1[:<c>] |
// thompson[:<alpha0>:<beta0>] | random. A bare "epsfirst" explores for
// horizon/10 steps.
PolicyKind parse_policy_spec(const std::string& spec, std::uint64_t horizon);
std::string canonical_policy_spec(const PolicyKind& kind);
std::string policy_spec_grammar();

}  // namespace vmbandit
