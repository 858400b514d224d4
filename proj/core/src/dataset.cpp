#include "vmbandit/dataset.hpp"

#include <fstream>
#include <sstream>

#include "vmbandit/errors.hpp"
#include "vmbandit/numeric.hpp"
#include "vmbandit/rng.hpp"

namespace vmbandit {

double AnomalyDataset::column_mean(std::size_t col) const {
  double sum = 0.0;
  for (std::uint64_t row = 0; row < n_samples; ++row) sum += at(row, col);
  return sum / static_cast<double>(n_samples);
}

AnomalyDataset generate_anomaly_dataset(const Fleet& fleet, std::uint64_t n_samples,
                                        std::uint64_t seed) {
  const auto* cg = std::get_if<ClippedGaussian>(&fleet.reward_model());
  if (cg == nullptr)
    throw ConfigError("anomaly datasets are only defined for clipped_gaussian fleets");
  if (n_samples == 0) throw ConfigError("n_samples must be >= 1");

  AnomalyDataset ds;
  ds.sigma = cg->sigma;
  ds.seed = seed;
  ds.n_samples = n_samples;
  for (const auto& arm : fleet.arms()) {
    ds.names.push_back(arm.name);
    ds.probabilities.push_back(arm.preference_probability);
  }
  const std::size_t k = fleet.size();
  ds.scores.resize(n_samples * k);
  // One stream per column so each column is i.i.d. and regeneration does not
  // depend on traversal order.
  for (std::size_t col = 0; col < k; ++col) {
    Rng rng(derive_stream_seed(seed, col, StreamLane::environment));
    for (std::uint64_t row = 0; row < n_samples; ++row)
      ds.scores[row * k + col] = fleet.anomaly_score(col, rng);
  }
  return ds;
}

void write_dataset_csv(const AnomalyDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << "# seed=" << dataset.seed << "\n";
  out << "# sigma=" << format_double(dataset.sigma) << "\n";
  out << "# probabilities=";
  for (std::size_t i = 0; i < dataset.probabilities.size(); ++i)
    out << (i ? "," : "") << format_double(dataset.probabilities[i]);
  out << "\n";
  for (std::size_t i = 0; i < dataset.names.size(); ++i)
    out << (i ? "," : "") << dataset.names[i];
  out << "\n";
  for (std::uint64_t row = 0; row < dataset.n_samples; ++row) {
    for (std::size_t col = 0; col < dataset.names.size(); ++col)
      out << (col ? "," : "") << format_double(dataset.at(row, col));
    out << "\n";
  }
  if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    cells.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return cells;
}

}  // namespace

AnomalyDataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");

  AnomalyDataset ds;
  bool have_seed = false, have_sigma = false, have_probs = false, have_header = false;
  std::string line;
  std::size_t line_no = 0;
  std::uint64_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string body = line.substr(1);
      const std::size_t eq = body.find('=');
      if (eq == std::string::npos)
        throw DataError("line " + std::to_string(line_no) + ": malformed metadata line");
      std::string key = body.substr(0, eq);
      key.erase(0, key.find_first_not_of(' '));
      const std::string value = body.substr(eq + 1);
      try {
        if (key == "seed") {
          ds.seed = static_cast<std::uint64_t>(std::stoull(value));
          have_seed = true;
        } else if (key == "sigma") {
          ds.sigma = parse_double(value);
          have_sigma = true;
        } else if (key == "probabilities") {
          for (const auto& cell : split_csv_line(value))
            ds.probabilities.push_back(parse_double(cell));
          have_probs = true;
        } else {
          throw DataError("line " + std::to_string(line_no) + ": unknown metadata key '" +
                          key + "'");
        }
      } catch (const std::logic_error&) {
        throw DataError("line " + std::to_string(line_no) + ": bad metadata value '" +
                        value + "'");
      }
      continue;
    }
    if (!have_header) {
      ds.names = split_csv_line(line);
      have_header = true;
      continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() != ds.names.size())
      throw DataError("row " + std::to_string(row) + ": expected " +
                      std::to_string(ds.names.size()) + " cells, got " +
                      std::to_string(cells.size()));
    for (std::size_t col = 0; col < cells.size(); ++col) {
      double v;
      try {
        v = parse_double(cells[col]);
      } catch (const DataError&) {
        throw DataError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                        " (" + ds.names[col] + "): not a number: '" + cells[col] + "'");
      }
      if (!(v >= 0.0 && v <= 1.0))
        throw DataError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                        " (" + ds.names[col] + "): value " + cells[col] +
                        " out of range [0,1]");
      ds.scores.push_back(v);
    }
    ++row;
  }
  if (!have_header || row == 0)
    throw DataError("'" + path.string() + "': no header or data rows");
  if (!have_seed || !have_sigma || !have_probs)
    throw DataError("'" + path.string() + "': missing metadata (seed, sigma, probabilities)");
  if (ds.probabilities.size() != ds.names.size())
    throw DataError("'" + path.string() + "': metadata declares " +
                    std::to_string(ds.probabilities.size()) + " probabilities but header has " +
                    std::to_string(ds.names.size()) + " columns");
  ds.n_samples = row;
  return ds;
}

}  // namespace vmbandit
