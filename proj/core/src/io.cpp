#include "vmbandit/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include <json.hpp>

#include "vmbandit/errors.hpp"

namespace vmbandit {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.contains(key))
      throw ConfigError("unknown key '" + key + "' at " + path);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError("missing key '" + key + "' at " + path);
  return *it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError("expected a number at " + path);
  return v.get<double>();
}

std::uint64_t count_at(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<double>() < 0)
    throw ConfigError("expected a non-negative integer at " + path);
  return v.get<std::uint64_t>();
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError("expected a string at " + path);
  return v.get<std::string>();
}

Fleet fleet_from_json(const json& node, const std::string& path) {
  if (!node.is_object()) throw ConfigError("expected an object at " + path);
  reject_unknown_keys(node, {"arms", "reward_model", "sigma"}, path);

  const json& arms_node = require(node, "arms", path);
  if (!arms_node.is_array() || arms_node.empty())
    throw ConfigError("'" + path + ".arms' must be a non-empty array");
  std::vector<std::pair<std::string, double>> arms;
  for (std::size_t i = 0; i < arms_node.size(); ++i) {
    const std::string arm_path = path + ".arms[" + std::to_string(i) + "]";
    const json& arm = arms_node[i];
    if (!arm.is_object()) throw ConfigError("expected an object at " + arm_path);
    reject_unknown_keys(arm, {"name", "p"}, arm_path);
    const std::string name = string_at(require(arm, "name", arm_path), arm_path + ".name");
    const double p = number_at(require(arm, "p", arm_path), arm_path + ".p");
    if (!(p >= 0.0 && p <= 1.0))
      throw ConfigError("value at " + arm_path + ".p out of range [0,1]");
    arms.emplace_back(name, p);
  }

  const std::string model =
      string_at(require(node, "reward_model", path), path + ".reward_model");
  double sigma = 0.3;
  if (const auto it = node.find("sigma"); it != node.end()) {
    sigma = number_at(*it, path + ".sigma");
    if (!(sigma > 0.0)) throw ConfigError("value at " + path + ".sigma must be > 0");
  }
  if (model == "bernoulli") return Fleet(arms, Bernoulli{});
  if (model == "clipped_gaussian") return Fleet(arms, ClippedGaussian{sigma});
  throw ConfigError("value at " + path +
                    ".reward_model must be 'bernoulli' or 'clipped_gaussian'");
}

json fleet_to_json(const Fleet& fleet) {
  json arms = json::array();
  for (const auto& arm : fleet.arms())
    arms.push_back({{"name", arm.name}, {"p", arm.preference_probability}});
  json node{{"arms", std::move(arms)}};
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Bernoulli>) {
          node["reward_model"] = "bernoulli";
        } else {
          node["reward_model"] = "clipped_gaussian";
          node["sigma"] = m.sigma;
        }
      },
      fleet.reward_model());
  return node;
}

json parse_json_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + " '" + path.string() + "': " + e.what());
  }
  return doc;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

std::uint64_t digest_from_hex(const std::string& s, const std::string& path) {
  try {
    return std::stoull(s, nullptr, 16);
  } catch (const std::logic_error&) {
    throw DataError("bad digest '" + s + "' at " + path);
  }
}

}  // namespace

SimulationConfig load_config(const std::filesystem::path& path) {
  const json doc = parse_json_file(path, "config");
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  reject_unknown_keys(doc, {"fleet", "policy", "policies", "horizon", "replications", "seed"},
                      "$");

  SimulationConfig config{fleet_from_json(require(doc, "fleet", "$"), "$.fleet"), {}, 500, 100,
                          42};
  if (doc.contains("policy") && doc.contains("policies"))
    throw ConfigError("give either 'policy' or 'policies', not both");
  if (const auto it = doc.find("policy"); it != doc.end())
    config.policies = {string_at(*it, "$.policy")};
  if (const auto it = doc.find("policies"); it != doc.end()) {
    if (!it->is_array() || it->empty())
      throw ConfigError("'$.policies' must be a non-empty array");
    for (std::size_t i = 0; i < it->size(); ++i)
      config.policies.push_back(
          string_at((*it)[i], "$.policies[" + std::to_string(i) + "]"));
  }
  if (const auto it = doc.find("horizon"); it != doc.end()) {
    config.horizon = count_at(*it, "$.horizon");
    if (config.horizon == 0) throw ConfigError("'$.horizon' must be >= 1");
  }
  if (const auto it = doc.find("replications"); it != doc.end()) {
    const auto r = count_at(*it, "$.replications");
    if (r == 0) throw ConfigError("'$.replications' must be >= 1");
    config.replications = static_cast<std::uint32_t>(r);
  }
  if (const auto it = doc.find("seed"); it != doc.end())
    config.base_seed = count_at(*it, "$.seed");
  // Validate policy specifiers eagerly so errors carry the key path.
  for (std::size_t i = 0; i < config.policies.size(); ++i) {
    const std::string key =
        doc.contains("policy") ? "$.policy" : "$.policies[" + std::to_string(i) + "]";
    try {
      parse_policy_spec(config.policies[i], config.horizon);
    } catch (const ConfigError& e) {
      throw ConfigError("at " + key + ": " + e.what());
    }
  }
  return config;
}

void write_report_json(const ComparisonReport& report, const std::filesystem::path& path) {
  json doc{{"fleet", fleet_to_json(report.fleet)},
           {"horizon", report.horizon},
           {"replications", report.replications},
           {"seed", report.base_seed},
           {"policies", json::array()}};
  for (std::size_t rank = 0; rank < report.entries.size(); ++rank) {
    const auto& entry = report.entries[rank];
    json curves;
    for (const auto kind : {RegretKind::ideal, RegretKind::oracle}) {
      const auto& stats = curve_stats(entry.aggregate, kind);
      curves[kind == RegretKind::ideal ? "ideal" : "oracle"] = {
          {"mean", stats.mean},
          {"std", stats.stddev},
          {"final_min", stats.final_min},
          {"final_median", stats.final_median},
          {"final_max", stats.final_max}};
    }
    doc["policies"].push_back({{"policy", entry.policy},
                               {"rank", rank + 1},
                               {"config_digest", digest_hex(entry.aggregate.config_digest)},
                               {"final_mean_cumulative_regret",
                                {{"ideal", entry.final_mean_ideal_regret},
                                 {"oracle", entry.final_mean_oracle_regret}}},
                               {"allocation_frequencies", entry.allocation_frequencies},
                               {"curves", std::move(curves)}});
  }
  auto out = open_for_write(path);
  out << doc.dump(2) << "\n";
  if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

ComparisonReport read_report_json(const std::filesystem::path& path) {
  const json doc = parse_json_file(path, "report");
  try {
    ComparisonReport report{fleet_from_json(doc.at("fleet"), "$.fleet"),
                            doc.at("horizon").get<std::uint64_t>(),
                            doc.at("replications").get<std::uint32_t>(),
                            doc.at("seed").get<std::uint64_t>(),
                            {}};
    for (const auto& node : doc.at("policies")) {
      PolicyComparisonEntry entry;
      entry.policy = node.at("policy").get<std::string>();
      entry.aggregate.config_digest =
          digest_from_hex(node.at("config_digest").get<std::string>(), "$.policies");
      entry.aggregate.horizon = report.horizon;
      entry.aggregate.replications = report.replications;
      entry.final_mean_ideal_regret =
          node.at("final_mean_cumulative_regret").at("ideal").get<double>();
      entry.final_mean_oracle_regret =
          node.at("final_mean_cumulative_regret").at("oracle").get<double>();
      entry.allocation_frequencies =
          node.at("allocation_frequencies").get<std::vector<double>>();
      for (const auto kind : {RegretKind::ideal, RegretKind::oracle}) {
        const auto& c = node.at("curves").at(kind == RegretKind::ideal ? "ideal" : "oracle");
        RegretCurveStats stats;
        stats.mean = c.at("mean").get<std::vector<double>>();
        stats.stddev = c.at("std").get<std::vector<double>>();
        stats.final_min = c.at("final_min").get<double>();
        stats.final_median = c.at("final_median").get<double>();
        stats.final_max = c.at("final_max").get<double>();
        (kind == RegretKind::ideal ? entry.aggregate.ideal : entry.aggregate.oracle) =
            std::move(stats);
      }
      report.entries.push_back(std::move(entry));
    }
    return report;
  } catch (const json::exception& e) {
    throw DataError("report '" + path.string() + "': " + e.what());
  }
}

void write_curves_csv(const ComparisonReport& report, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "t,policy,mean_cum_regret,std_cum_regret,definition\n";
  for (const auto& entry : report.entries) {
    for (const auto kind : {RegretKind::ideal, RegretKind::oracle}) {
      const auto& stats = curve_stats(entry.aggregate, kind);
      const char* name = kind == RegretKind::ideal ? "ideal" : "oracle";
      for (std::size_t t = 0; t < stats.mean.size(); ++t)
        out << t << ',' << entry.policy << ',' << format_double(stats.mean[t]) << ','
            << format_double(stats.stddev[t]) << ',' << name << "\n";
    }
  }
  if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

void write_table_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "name,preference_probability,reward,regret\n";
  for (const auto& row : rows)
    out << row.name << ',' << format_double(row.preference_probability) << ','
        << format_double(row.mean_reward) << ',' << format_double(row.mean_ideal_regret)
        << "\n";
  if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace vmbandit
