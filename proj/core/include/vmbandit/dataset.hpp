#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "vmbandit/env.hpp"

namespace vmbandit {

// Synthetic per-VM anomaly-score matrix: one score per VM per hour index.
// The generation metadata (seed, sigma, probabilities) regenerates the
// matrix bit-identically.
struct AnomalyDataset {
  std::vector<std::string> names;
  std::vector<double> probabilities;
  double sigma = 0.3;
  std::uint64_t seed = 0;
  std::uint64_t n_samples = 0;
  std::vector<double> scores;  // row-major, n_samples x names.size()

  double at(std::uint64_t row, std::size_t col) const {
    return scores[row * names.size() + col];
  }
  double column_mean(std::size_t col) const;

  bool operator==(const AnomalyDataset&) const = default;
};

// Column i holds n_samples i.i.d. clipped Normal(1 - p_i, sigma) draws.
// ClippedGaussian fleets only.
AnomalyDataset generate_anomaly_dataset(const Fleet& fleet, std::uint64_t n_samples,
                                        std::uint64_t seed);

// CSV layout: '#'-prefixed metadata lines (seed, sigma, probabilities), a
// header row of VM names, then one row per hour index. Values use shortest
// round-trip decimals, UTF-8, LF line endings.
void write_dataset_csv(const AnomalyDataset& dataset, const std::filesystem::path& path);
AnomalyDataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace vmbandit
