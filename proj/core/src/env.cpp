#include "vmbandit/env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vmbandit/errors.hpp"

namespace vmbandit {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

double clipped_normal_mean(double mu, double sigma) {
  // E[clip(X, 0, 1)] = P(X > 1) + mu*(Phi(b) - Phi(a)) - sigma*(phi(b) - phi(a))
  // with a = (0 - mu)/sigma, b = (1 - mu)/sigma.
  const double a = (0.0 - mu) / sigma;
  const double b = (1.0 - mu) / sigma;
  return (1.0 - normal_cdf(b)) + mu * (normal_cdf(b) - normal_cdf(a)) -
         sigma * (normal_pdf(b) - normal_pdf(a));
}

Fleet::Fleet(const std::vector<std::pair<std::string, double>>& arms, RewardModel model)
    : model_(model) {
  if (arms.empty()) throw ConfigError("fleet needs at least one arm");
  if (const auto* cg = std::get_if<ClippedGaussian>(&model_)) {
    if (!(cg->sigma > 0.0) || !std::isfinite(cg->sigma))
      throw ConfigError("clipped_gaussian sigma must be positive and finite");
  }
  arms_.reserve(arms.size());
  true_means_.reserve(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) {
    const std::string& name = arms[i].first;
    const double p = arms[i].second;
    if (name.find_first_of(",\r\n#") != std::string::npos)
      throw ConfigError("arm name '" + name + "' may not contain ',', '#' or line breaks");
    if (!(p >= 0.0 && p <= 1.0))
      throw ConfigError("preference probability of arm '" + name + "' out of range [0,1]");
    arms_.push_back(VmArm{static_cast<std::uint32_t>(i), name, p});
    true_means_.push_back(std::visit(
        [p](const auto& m) -> double {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, Bernoulli>)
            return p;
          else
            return clipped_normal_mean(p, m.sigma);
        },
        model_));
  }
  for (std::size_t i = 1; i < true_means_.size(); ++i)
    if (true_means_[i] > true_means_[best_arm_id_])
      best_arm_id_ = static_cast<std::uint32_t>(i);
}

Fleet Fleet::reference(RewardModel model) {
  return Fleet({{"VM1", 0.98},
                {"VM2", 0.95},
                {"VM3", 0.90},
                {"VM4", 0.85},
                {"VM5", 0.8},
                {"VM6", 0.75},
                {"VM7", 0.7},
                {"VM8", 0.65},
                {"VM9", 0.55},
                {"VM10", 0.5}},
               model);
}

void Fleet::check_arm(std::size_t arm_id) const {
  if (arm_id >= arms_.size())
    throw std::out_of_range("arm id " + std::to_string(arm_id) + " out of range (fleet has " +
                            std::to_string(arms_.size()) + " arms)");
}

double Fleet::true_mean(std::size_t arm_id) const {
  check_arm(arm_id);
  return true_means_[arm_id];
}

std::pair<std::uint32_t, double> Fleet::best_arm() const {
  return {best_arm_id_, true_means_[best_arm_id_]};
}

RewardObservation Fleet::pull(std::size_t arm_id, std::uint64_t t, Rng& rng) const {
  check_arm(arm_id);
  const double p = arms_[arm_id].preference_probability;
  const double reward = std::visit(
      [&](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Bernoulli>) {
          return rng.bernoulli(p) ? 1.0 : 0.0;
        } else {
          const double score = std::clamp(rng.normal(1.0 - p, m.sigma), 0.0, 1.0);
          return 1.0 - score;  // exact complement of the anomaly score
        }
      },
      model_);
  return RewardObservation{static_cast<std::uint32_t>(arm_id), t, reward};
}

double Fleet::anomaly_score(std::size_t arm_id, Rng& rng) const {
  check_arm(arm_id);
  const auto* cg = std::get_if<ClippedGaussian>(&model_);
  if (cg == nullptr)
    throw ConfigError("anomaly scores are only defined for clipped_gaussian fleets");
  const double p = arms_[arm_id].preference_probability;
  return std::clamp(rng.normal(1.0 - p, cg->sigma), 0.0, 1.0);
}

}  // namespace vmbandit
