#pragma once

#include <string>
#include <vector>

#include "fracgreedy/config.hpp"
#include "fracgreedy/metrics.hpp"

namespace fracgreedy {

struct ExperimentOutput {
  std::string table_path;
  std::string sidecar_path;
  std::vector<IterationRecord> records;  // after any norm weighting
};

// One greedy solve; writes the table plus its full-precision sidecar.
ExperimentOutput run_experiment(const ExperimentConfig& config);

struct SweepCell {
  ExperimentConfig config;
  std::string table_name;
  bool ok = false;
  std::string error;
};

struct SweepOutput {
  std::vector<SweepCell> cells;
  std::string index_path;
  bool all_ok = false;
};

// One table per cell under out_dir plus index.csv. Cells are independent;
// jobs > 1 runs them on a thread pool with output byte-identical to a
// sequential sweep. A failing cell is recorded in the index and the rest
// continue.
SweepOutput run_sweep(const SweepConfig& config, const std::string& out_dir, int jobs = 1);

}  // namespace fracgreedy
