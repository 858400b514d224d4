#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vmbandit/rng.hpp"

namespace vmbandit {

// One tenant VM offered for allocation. preference_probability is the
// probability-scale attack resistance: the chance an attack on this VM fails.
struct VmArm {
  std::uint32_t id = 0;
  std::string name;
  double preference_probability = 0.0;

  bool operator==(const VmArm&) const = default;
};

struct Bernoulli {
  bool operator==(const Bernoulli&) const = default;
};

// Rewards are Normal(p, sigma) draws clipped to [0, 1]; equivalently
// 1 - clip(Normal(1 - p, sigma)), the complement of the anomaly score.
struct ClippedGaussian {
  double sigma = 0.3;
  bool operator==(const ClippedGaussian&) const = default;
};

using RewardModel = std::variant<Bernoulli, ClippedGaussian>;

struct RewardObservation {
  std::uint32_t arm_id = 0;
  std::uint64_t t = 0;  // allocation cycle index, one per hour
  double reward = 0.0;  // in [0, 1]; {0, 1} under Bernoulli
};

// Mean of a Normal(mu, sigma) draw clipped to [0, 1], in closed form.
double clipped_normal_mean(double mu, double sigma);

// Immutable arm set plus reward model. True mean rewards are cached per arm
// at construction; all randomness comes from caller-supplied streams, so a
// Fleet is freely shareable across threads.
class Fleet {
 public:
  Fleet(const std::vector<std::pair<std::string, double>>& arms, RewardModel model);

  // The bundled 10-VM fleet (VM1..VM10, resistance 0.98 down to 0.5).
  static Fleet reference(RewardModel model);

  std::size_t size() const { return arms_.size(); }
  const std::vector<VmArm>& arms() const { return arms_; }
  const RewardModel& reward_model() const { return model_; }

  // Expected reward of an arm under the fleet's reward model.
  double true_mean(std::size_t arm_id) const;

  // Arm with the maximal true mean reward; ties broken by lowest id.
  std::pair<std::uint32_t, double> best_arm() const;

  RewardObservation pull(std::size_t arm_id, std::uint64_t t, Rng& rng) const;

  // Clipped Normal(1 - p, sigma) draw; 1 means a perfectly malicious machine.
  // Only defined for ClippedGaussian fleets. reward == 1 - score for paired
  // draws from the same stream position.
  double anomaly_score(std::size_t arm_id, Rng& rng) const;

  bool operator==(const Fleet& other) const {
    return arms_ == other.arms_ && model_ == other.model_;
  }

 private:
  void check_arm(std::size_t arm_id) const;

  std::vector<VmArm> arms_;
  RewardModel model_;
  std::vector<double> true_means_;
  std::uint32_t best_arm_id_ = 0;
};

}  // namespace vmbandit
