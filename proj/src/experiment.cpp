#include "fracgreedy/experiment.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <thread>
#include <utility>

#include "fracgreedy/oga.hpp"
#include "fracgreedy/table_io.hpp"

namespace fracgreedy {

namespace {

std::string resolved_output_path(const ExperimentConfig& config) {
  if (!config.output_path.empty()) {
    return config.output_path;
  }
  std::filesystem::path p(
      default_table_name(config.alpha, config.relu_power, config.grid_intervals));
  if (config.output_format == OutputFormat::markdown) {
    p.replace_extension(".md");
  }
  return p.string();
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  config.validate();

  const FractionalOrder alpha(config.alpha);
  const Grid grid(config.grid_intervals);
  const DictionaryGrid dict(config.bias_lo, config.bias_hi, config.bias_samples,
                            config.relu_power);
  const SolveConfig solve{alpha, grid, dict, config.max_neurons, config.checkpoints};
  const ManufacturedProblem problem(alpha);

  RunResult result = run(solve, problem);
  if (config.norm_weighting == NormWeighting::h_weighted) {
    const double w = std::sqrt(grid.spacing());
    for (IterationRecord& rec : result.records) {
      rec.l2 *= w;  // orders are invariant under a constant rescale
      rec.h1 *= w;
    }
  }

  ExperimentOutput out;
  out.table_path = resolved_output_path(config);
  out.sidecar_path = sidecar_path(out.table_path);
  out.records = std::move(result.records);
  atomic_write(out.table_path, render_table(out.records, config.output_format));
  atomic_write(out.sidecar_path, render_table_full(out.records));
  return out;
}

SweepOutput run_sweep(const SweepConfig& config, const std::string& out_dir, int jobs) {
  config.validate();
  if (jobs < 1) {
    throw std::invalid_argument("jobs: must be >= 1");
  }
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  const std::vector<ExperimentConfig> cells = config.cells();
  SweepOutput out;
  out.cells.resize(cells.size());

  std::atomic<std::size_t> cursor{0};
  const auto worker = [&] {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= cells.size()) {
        return;
      }
      SweepCell& cell = out.cells[i];
      cell.table_name = cells[i].output_path;  // cells() fills the default name
      cell.config = cells[i];
      cell.config.output_path = (fs::path(out_dir) / cell.table_name).string();
      try {
        run_experiment(cell.config);
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
    }
  };

  if (jobs == 1 || cells.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const std::size_t count = std::min<std::size_t>(jobs, cells.size());
    pool.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
      pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }

  // Index written once, in cell order, after every cell settled.
  std::string index = "table,alpha,relu_power,grid_intervals,status\n";
  out.all_ok = true;
  for (const SweepCell& cell : out.cells) {
    std::string status = cell.ok ? "ok" : "failed: " + cell.error;
    for (char& ch : status) {
      if (ch == ',' || ch == '\n') {
        ch = ';';
      }
    }
    index += cell.table_name + "," + format_alpha(cell.config.alpha) + "," +
             std::to_string(cell.config.relu_power) + "," +
             std::to_string(cell.config.grid_intervals) + "," + status + "\n";
    out.all_ok = out.all_ok && cell.ok;
  }
  out.index_path = (fs::path(out_dir) / "index.csv").string();
  atomic_write(out.index_path, index);
  return out;
}

}  // namespace fracgreedy
