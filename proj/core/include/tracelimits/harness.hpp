#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tracelimits {

std::string library_version();

// Unset optionals take per-kind defaults in run().
struct ExperimentConfig {
  std::string kind;  // scalar-lln | scalar-clt | matrix-lln | matrix-clt | free-limit | constants |
                     // trace-tables | mvariate | golden
  std::vector<std::string> kernels;  // indicator | difference | file:<path.json>
  std::optional<double> eps;
  std::optional<double> dt;
  std::optional<double> T;
  std::vector<int> N;
  std::vector<int> n;
  std::vector<int> k;
  std::optional<std::size_t> replicates;
  std::optional<std::size_t> samples;
  std::vector<double> hermite_coeffs;
  std::vector<std::string> kappa;
  std::vector<std::string> checks;
  std::uint64_t seed = 20240917;
  unsigned workers = 0;  // 0: hardware concurrency
  std::string out;
};

// Unknown keys and ill-typed values are rejected.
ExperimentConfig parse_config(const std::string& json_text);
// Overwrites only the keys present in the JSON object.
void apply_config_json(ExperimentConfig& c, const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string read_text_file(const std::string& path);
std::string config_to_json(const ExperimentConfig& c);

struct Quantity {
  std::string name;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double analytic_target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ResultRecord {
  ExperimentConfig config;
  std::vector<Quantity> quantities;
  std::map<std::string, std::string> artifacts;
  std::size_t replicates = 0;
  double wall_clock_seconds = 0.0;
  std::string version;
  bool pass = false;
};

std::string to_json(const ResultRecord& r, bool include_wall_clock = true);
void write_result(const ResultRecord& r, const std::string& path);

ResultRecord run(const ExperimentConfig& config);

}  // namespace tracelimits
