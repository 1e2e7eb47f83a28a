#pragma once

#include <string>
#include <vector>

namespace fracgreedy {

enum class NormWeighting { raw, h_weighted };
enum class OutputFormat { csv, markdown };

// One experiment cell. Parsed from a flat "key = value" text file with '#'
// comments and comma-separated lists; see the README for the key reference.
struct ExperimentConfig {
  double alpha = 2.0;
  int relu_power = 1;
  int grid_intervals = 100;
  int max_neurons = 64;
  double bias_lo = -1.1;
  double bias_hi = 1.1;
  int bias_samples = 2049;
  std::vector<int> checkpoints;  // empty -> powers of two up to max_neurons
  NormWeighting norm_weighting = NormWeighting::raw;
  std::string output_path;       // empty -> table_alpha{a}_k{k}_M{M}.<ext> in the cwd
  OutputFormat output_format = OutputFormat::csv;

  // Throws std::invalid_argument with a field-level message.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);
// Canonical form: every key explicit, defaults included.
std::string serialize(const ExperimentConfig& config);

// A cartesian sweep over alphas x relu_powers x grid_intervals, sharing the
// remaining experiment settings.
struct SweepConfig {
  std::vector<double> alphas;
  std::vector<int> relu_powers;
  std::vector<int> grid_intervals;
  int max_neurons = 64;
  double bias_lo = -1.1;
  double bias_hi = 1.1;
  int bias_samples = 2049;
  std::vector<int> checkpoints;
  NormWeighting norm_weighting = NormWeighting::raw;

  void validate() const;
  // Cells in deterministic order: alphas outermost, grids innermost.
  std::vector<ExperimentConfig> cells() const;

  bool operator==(const SweepConfig&) const = default;
};

SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);
std::string serialize(const SweepConfig& config);

// Shortest decimal form, e.g. 2 -> "2", 1.5 -> "1.5"; used in file names.
std::string format_alpha(double alpha);
// table_alpha{a}_k{k}_M{M}.csv
std::string default_table_name(double alpha, int relu_power, int grid_intervals);

const char* to_string(NormWeighting w);
const char* to_string(OutputFormat f);

}  // namespace fracgreedy
