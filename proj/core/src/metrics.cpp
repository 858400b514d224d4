#include "vmbandit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vmbandit/errors.hpp"
#include "vmbandit/numeric.hpp"

namespace vmbandit {

void record_step(RunLog& log, std::uint64_t t, std::uint32_t arm_id, double reward,
                 const Fleet& fleet) {
  if (t != log.records.size())
    throw std::logic_error("out-of-order step: expected t=" +
                           std::to_string(log.records.size()) + ", got t=" + std::to_string(t));
  if (!(reward >= 0.0 && reward <= 1.0))
    throw DataError("reward " + format_double(reward) + " out of range [0,1]");
  const double chosen_mean = fleet.true_mean(arm_id);
  const double best_mean = fleet.best_arm().second;
  log.records.push_back(StepRecord{t, arm_id, reward, 1.0 - reward, best_mean - chosen_mean});
}

std::vector<ArmSummary> per_arm_summary(const RunLog& log, std::size_t num_arms) {
  if (log.records.empty()) throw DataError("cannot summarize an empty run log");
  std::vector<std::uint64_t> pulls(num_arms, 0);
  std::vector<double> reward_sum(num_arms, 0.0);
  for (const auto& rec : log.records) {
    if (rec.arm_id >= num_arms)
      throw DataError("log references arm " + std::to_string(rec.arm_id) +
                      " but only " + std::to_string(num_arms) + " arms were declared");
    pulls[rec.arm_id] += 1;
    reward_sum[rec.arm_id] += rec.reward;
  }
  const double horizon = static_cast<double>(log.records.size());
  std::vector<ArmSummary> out(num_arms);
  for (std::size_t i = 0; i < num_arms; ++i) {
    out[i].arm_id = static_cast<std::uint32_t>(i);
    out[i].pulls = pulls[i];
    out[i].allocation_frequency = static_cast<double>(pulls[i]) / horizon;
    if (pulls[i] > 0) {
      const double mean = reward_sum[i] / static_cast<double>(pulls[i]);
      out[i].mean_reward = mean;
      out[i].mean_ideal_regret = 1.0 - mean;
    }
  }
  return out;
}

std::vector<double> cumulative_regret_curve(const RunLog& log, RegretKind kind) {
  if (log.records.empty()) throw DataError("cannot compute a curve from an empty run log");
  std::vector<double> curve(log.records.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    acc += kind == RegretKind::ideal ? log.records[i].ideal_regret
                                     : log.records[i].oracle_regret;
    curve[i] = acc;
  }
  return curve;
}

namespace {

// Total order on logs so aggregation sums in a canonical sequence and the
// result does not depend on input permutation.
bool log_less(const RunLog* a, const RunLog* b) {
  if (a->seed != b->seed) return a->seed < b->seed;
  const std::size_t n = std::min(a->records.size(), b->records.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ra = a->records[i];
    const auto& rb = b->records[i];
    if (ra.arm_id != rb.arm_id) return ra.arm_id < rb.arm_id;
    if (ra.reward != rb.reward) return ra.reward < rb.reward;
  }
  return a->records.size() < b->records.size();
}

RegretCurveStats curve_stats_over(const std::vector<const RunLog*>& logs, RegretKind kind) {
  const std::size_t horizon = logs.front()->records.size();
  const double n = static_cast<double>(logs.size());
  RegretCurveStats stats;
  stats.mean.assign(horizon, 0.0);
  stats.stddev.assign(horizon, 0.0);
  for (const RunLog* log : logs) {
    const auto curve = cumulative_regret_curve(*log, kind);
    for (std::size_t t = 0; t < horizon; ++t) stats.mean[t] += curve[t];
  }
  for (std::size_t t = 0; t < horizon; ++t) stats.mean[t] /= n;
  std::vector<double> finals;
  finals.reserve(logs.size());
  for (const RunLog* log : logs) {
    const auto curve = cumulative_regret_curve(*log, kind);
    for (std::size_t t = 0; t < horizon; ++t) {
      const double d = curve[t] - stats.mean[t];
      stats.stddev[t] += d * d;
    }
    finals.push_back(curve.back());
  }
  for (std::size_t t = 0; t < horizon; ++t) stats.stddev[t] = std::sqrt(stats.stddev[t] / n);
  std::sort(finals.begin(), finals.end());
  stats.final_min = finals.front();
  stats.final_max = finals.back();
  const std::size_t mid = finals.size() / 2;
  stats.final_median = finals.size() % 2 == 1 ? finals[mid]
                                              : 0.5 * (finals[mid - 1] + finals[mid]);
  return stats;
}

}  // namespace

AggregateSummary merge_runs(const std::vector<RunLog>& logs) {
  if (logs.empty()) throw DataError("cannot merge an empty list of run logs");
  const std::uint64_t digest = logs.front().config_digest;
  const std::size_t horizon = logs.front().records.size();
  std::vector<const RunLog*> ordered;
  ordered.reserve(logs.size());
  for (const auto& log : logs) {
    if (log.config_digest != digest)
      throw DataError("cannot merge run logs with mismatched config digests");
    if (log.records.size() != horizon)
      throw DataError("cannot merge run logs with mismatched horizons");
    ordered.push_back(&log);
  }
  std::sort(ordered.begin(), ordered.end(), log_less);

  AggregateSummary agg;
  agg.config_digest = digest;
  agg.horizon = horizon;
  agg.replications = static_cast<std::uint32_t>(logs.size());
  agg.ideal = curve_stats_over(ordered, RegretKind::ideal);
  agg.oracle = curve_stats_over(ordered, RegretKind::oracle);
  return agg;
}

}  // namespace vmbandit
