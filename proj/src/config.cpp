#include "fracgreedy/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fracgreedy {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view value, const std::string& key) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument(key + ": expected a number, got '" + std::string(value) + "'");
  }
  return out;
}

int parse_int(std::string_view value, const std::string& key) {
  int out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument(key + ": expected an integer, got '" + std::string(value) + "'");
  }
  return out;
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  if (trim(value).empty()) {
    return items;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = value.find(',', start);
    items.push_back(trim(value.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return items;
}

std::vector<int> parse_int_list(std::string_view value, const std::string& key) {
  std::vector<int> out;
  for (std::string_view item : split_list(value)) {
    out.push_back(parse_int(item, key));
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view value, const std::string& key) {
  std::vector<double> out;
  for (std::string_view item : split_list(value)) {
    out.push_back(parse_double(item, key));
  }
  return out;
}

NormWeighting parse_weighting(std::string_view value) {
  if (value == "raw") {
    return NormWeighting::raw;
  }
  if (value == "h_weighted") {
    return NormWeighting::h_weighted;
  }
  throw std::invalid_argument("norm_weighting: expected 'raw' or 'h_weighted', got '" +
                              std::string(value) + "'");
}

OutputFormat parse_format(std::string_view value) {
  if (value == "csv") {
    return OutputFormat::csv;
  }
  if (value == "markdown" || value == "md") {
    return OutputFormat::markdown;
  }
  throw std::invalid_argument("output_format: expected 'csv' or 'markdown', got '" +
                              std::string(value) + "'");
}

// key -> raw value, rejecting duplicates and malformed lines.
std::map<std::string, std::string> tokenize(const std::string& text) {
  std::map<std::string, std::string> pairs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    if (const std::size_t hash = body.find('#'); hash != std::string_view::npos) {
      body = body.substr(0, hash);
    }
    body = trim(body);
    if (body.empty()) {
      continue;
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + std::string(body) + "'");
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": missing key");
    }
    if (!pairs.emplace(key, value).second) {
      throw std::invalid_argument("duplicate key '" + key + "'");
    }
  }
  return pairs;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += format_alpha(values[i]);
  }
  return out;
}

void validate_checkpoints(const std::vector<int>& checkpoints, int max_neurons) {
  int prev = 0;
  for (int c : checkpoints) {
    if (c <= prev) {
      throw std::invalid_argument("checkpoints: must be strictly ascending and >= 1");
    }
    if (c > max_neurons) {
      throw std::invalid_argument("checkpoints: " + std::to_string(c) + " exceeds max_neurons " +
                                  std::to_string(max_neurons));
    }
    prev = c;
  }
}

void validate_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 2.0)) {
    throw std::invalid_argument("alpha: must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (alpha == 1.0) {
    throw std::invalid_argument(
        "alpha: 1 is excluded because the Riesz scale 1/(2 cos(pi*alpha/2)) is singular there");
  }
}

void validate_shared(int relu_power, int grid_intervals, int max_neurons, double bias_lo,
                     double bias_hi, int bias_samples) {
  if (relu_power != 1 && relu_power != 2) {
    throw std::invalid_argument("relu_power: must be 1 or 2, got " + std::to_string(relu_power));
  }
  if (grid_intervals < 3) {
    throw std::invalid_argument("grid_intervals: must be >= 3, got " +
                                std::to_string(grid_intervals));
  }
  if (max_neurons < 1) {
    throw std::invalid_argument("max_neurons: must be >= 1, got " + std::to_string(max_neurons));
  }
  if (!(bias_lo < -1.0) || !(bias_hi > 1.0)) {
    throw std::invalid_argument("bias_range: must strictly contain [-1, 1], got [" +
                                format_alpha(bias_lo) + ", " + format_alpha(bias_hi) + "]");
  }
  if (bias_samples < 2) {
    throw std::invalid_argument("bias_samples: must be >= 2, got " + std::to_string(bias_samples));
  }
}

}  // namespace

const char* to_string(NormWeighting w) {
  return w == NormWeighting::raw ? "raw" : "h_weighted";
}

const char* to_string(OutputFormat f) {
  return f == OutputFormat::csv ? "csv" : "markdown";
}

std::string format_alpha(double alpha) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), alpha);
  if (ec != std::errc()) {
    return std::to_string(alpha);
  }
  return std::string(buf, ptr);
}

std::string default_table_name(double alpha, int relu_power, int grid_intervals) {
  return "table_alpha" + format_alpha(alpha) + "_k" + std::to_string(relu_power) + "_M" +
         std::to_string(grid_intervals) + ".csv";
}

void ExperimentConfig::validate() const {
  validate_alpha(alpha);
  validate_shared(relu_power, grid_intervals, max_neurons, bias_lo, bias_hi, bias_samples);
  validate_checkpoints(checkpoints, max_neurons);
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : tokenize(text)) {
    if (key == "alpha") {
      cfg.alpha = parse_double(value, key);
    } else if (key == "relu_power") {
      cfg.relu_power = parse_int(value, key);
    } else if (key == "grid_intervals") {
      cfg.grid_intervals = parse_int(value, key);
    } else if (key == "max_neurons") {
      cfg.max_neurons = parse_int(value, key);
    } else if (key == "bias_range") {
      const std::vector<double> range = parse_double_list(value, key);
      if (range.size() != 2) {
        throw std::invalid_argument("bias_range: expected two comma-separated numbers");
      }
      cfg.bias_lo = range[0];
      cfg.bias_hi = range[1];
    } else if (key == "bias_samples") {
      cfg.bias_samples = parse_int(value, key);
    } else if (key == "checkpoints") {
      cfg.checkpoints = parse_int_list(value, key);
    } else if (key == "norm_weighting") {
      cfg.norm_weighting = parse_weighting(value);
    } else if (key == "output_path") {
      cfg.output_path = value;
    } else if (key == "output_format") {
      cfg.output_format = parse_format(value);
    } else {
      throw std::invalid_argument("unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_file(path));
}

std::string serialize(const ExperimentConfig& config) {
  std::string out;
  out += "alpha = " + format_alpha(config.alpha) + "\n";
  out += "relu_power = " + std::to_string(config.relu_power) + "\n";
  out += "grid_intervals = " + std::to_string(config.grid_intervals) + "\n";
  out += "max_neurons = " + std::to_string(config.max_neurons) + "\n";
  out += "bias_range = " + format_alpha(config.bias_lo) + ", " + format_alpha(config.bias_hi) + "\n";
  out += "bias_samples = " + std::to_string(config.bias_samples) + "\n";
  out += "checkpoints = " + join_ints(config.checkpoints) + "\n";
  out += std::string("norm_weighting = ") + to_string(config.norm_weighting) + "\n";
  out += "output_path = " + config.output_path + "\n";
  out += std::string("output_format = ") + to_string(config.output_format) + "\n";
  return out;
}

void SweepConfig::validate() const {
  if (alphas.empty()) {
    throw std::invalid_argument("alphas: must list at least one value");
  }
  if (relu_powers.empty()) {
    throw std::invalid_argument("relu_powers: must list at least one value");
  }
  if (grid_intervals.empty()) {
    throw std::invalid_argument("grid_intervals: must list at least one value");
  }
  for (double a : alphas) {
    validate_alpha(a);
  }
  for (int k : relu_powers) {
    for (int m : grid_intervals) {
      validate_shared(k, m, max_neurons, bias_lo, bias_hi, bias_samples);
    }
  }
  validate_checkpoints(checkpoints, max_neurons);
}

std::vector<ExperimentConfig> SweepConfig::cells() const {
  std::vector<ExperimentConfig> out;
  out.reserve(alphas.size() * relu_powers.size() * grid_intervals.size());
  for (double a : alphas) {
    for (int k : relu_powers) {
      for (int m : grid_intervals) {
        ExperimentConfig cell;
        cell.alpha = a;
        cell.relu_power = k;
        cell.grid_intervals = m;
        cell.max_neurons = max_neurons;
        cell.bias_lo = bias_lo;
        cell.bias_hi = bias_hi;
        cell.bias_samples = bias_samples;
        cell.checkpoints = checkpoints;
        cell.norm_weighting = norm_weighting;
        cell.output_path = default_table_name(a, k, m);
        cell.output_format = OutputFormat::csv;
        out.push_back(std::move(cell));
      }
    }
  }
  return out;
}

SweepConfig parse_sweep_config(const std::string& text) {
  SweepConfig cfg;
  for (const auto& [key, value] : tokenize(text)) {
    if (key == "alphas") {
      cfg.alphas = parse_double_list(value, key);
    } else if (key == "relu_powers") {
      cfg.relu_powers = parse_int_list(value, key);
    } else if (key == "grid_intervals") {
      cfg.grid_intervals = parse_int_list(value, key);
    } else if (key == "max_neurons") {
      cfg.max_neurons = parse_int(value, key);
    } else if (key == "bias_range") {
      const std::vector<double> range = parse_double_list(value, key);
      if (range.size() != 2) {
        throw std::invalid_argument("bias_range: expected two comma-separated numbers");
      }
      cfg.bias_lo = range[0];
      cfg.bias_hi = range[1];
    } else if (key == "bias_samples") {
      cfg.bias_samples = parse_int(value, key);
    } else if (key == "checkpoints") {
      cfg.checkpoints = parse_int_list(value, key);
    } else if (key == "norm_weighting") {
      cfg.norm_weighting = parse_weighting(value);
    } else {
      throw std::invalid_argument("unknown key '" + key + "'");
    }
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  return parse_sweep_config(read_file(path));
}

std::string serialize(const SweepConfig& config) {
  std::string out;
  out += "alphas = " + join_doubles(config.alphas) + "\n";
  out += "relu_powers = " + join_ints(config.relu_powers) + "\n";
  out += "grid_intervals = " + join_ints(config.grid_intervals) + "\n";
  out += "max_neurons = " + std::to_string(config.max_neurons) + "\n";
  out += "bias_range = " + format_alpha(config.bias_lo) + ", " + format_alpha(config.bias_hi) + "\n";
  out += "bias_samples = " + std::to_string(config.bias_samples) + "\n";
  out += "checkpoints = " + join_ints(config.checkpoints) + "\n";
  out += std::string("norm_weighting = ") + to_string(config.norm_weighting) + "\n";
  return out;
}

}  // namespace fracgreedy
