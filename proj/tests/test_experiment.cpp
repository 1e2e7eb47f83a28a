#include <doctest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fracgreedy/experiment.hpp"
#include "fracgreedy/table_io.hpp"
#include "fracgreedy/verify.hpp"

using namespace fracgreedy;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fracgreedy-test-" +
            std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.alpha = 1.5;
  cfg.relu_power = 1;
  cfg.grid_intervals = 40;
  cfg.max_neurons = 8;
  cfg.bias_samples = 65;
  return cfg;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_sci3(0.2281) == "2.28e-01");
  CHECK(format_sci3(0.0) == "0.00e+00");
  CHECK(format_sci3(-1.304e-6) == "-1.30e-06");
  CHECK(format_full(0.5) == "0.5");
  // shortest round-trip form survives a parse
  CHECK(std::stod(format_full(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("sidecar naming") {
  CHECK(sidecar_path("out/table.csv") == "out/table.full.csv");
  CHECK(sidecar_path("table.md") == "table.full.csv");
}

TEST_CASE("run_experiment writes the table and full-precision sidecar") {
  TempDir tmp;
  ExperimentConfig cfg = tiny_config();
  cfg.output_path = (tmp.path / "table.csv").string();
  const ExperimentOutput out = run_experiment(cfg);

  const std::string table = slurp(out.table_path);
  const std::string header = "N,loss,loss_order,l2,l2_order,h1,h1_order,linf,linf_order\n";
  REQUIRE(table.rfind(header, 0) == 0);

  // one row per checkpoint: N = 2, 4, 8
  int rows = 0;
  for (char c : table) {
    rows += (c == '\n') ? 1 : 0;
  }
  CHECK(rows == 4);
  CHECK(table.find("\n2,") != std::string::npos);
  CHECK(table.find("\n4,") != std::string::npos);
  CHECK(table.find("\n8,") != std::string::npos);
  CHECK(table.find("\r") == std::string::npos);  // LF only

  const std::string sidecar = slurp(out.sidecar_path);
  CHECK(sidecar.rfind(header, 0) == 0);
  // sidecar reproduces the records at full precision
  REQUIRE(out.records.size() == 3);
  CHECK(sidecar.find(format_full(out.records[0].l2)) != std::string::npos);
  CHECK(fs::exists(tmp.path / "table.full.csv"));
}

TEST_CASE("markdown format") {
  TempDir tmp;
  ExperimentConfig cfg = tiny_config();
  cfg.output_format = OutputFormat::markdown;
  cfg.output_path = (tmp.path / "table.md").string();
  const ExperimentOutput out = run_experiment(cfg);
  const std::string table = slurp(out.table_path);
  CHECK(table.rfind("| N | loss |", 0) == 0);
  CHECK(table.find("| ---: |") != std::string::npos);
  // sidecar stays CSV
  CHECK(slurp(out.sidecar_path).rfind("N,loss", 0) == 0);
}

TEST_CASE("repeat runs are byte-identical") {
  TempDir tmp;
  ExperimentConfig cfg = tiny_config();
  cfg.output_path = (tmp.path / "a.csv").string();
  run_experiment(cfg);
  cfg.output_path = (tmp.path / "b.csv").string();
  run_experiment(cfg);
  CHECK(slurp(tmp.path / "a.csv") == slurp(tmp.path / "b.csv"));
  CHECK(slurp(tmp.path / "a.full.csv") == slurp(tmp.path / "b.full.csv"));
}

TEST_CASE("h-weighted norms rescale l2 and h1 only") {
  TempDir tmp;
  ExperimentConfig raw = tiny_config();
  raw.output_path = (tmp.path / "raw.csv").string();
  ExperimentConfig weighted = raw;
  weighted.norm_weighting = NormWeighting::h_weighted;
  weighted.output_path = (tmp.path / "weighted.csv").string();

  const ExperimentOutput raw_out = run_experiment(raw);
  const ExperimentOutput weighted_out = run_experiment(weighted);
  const double w = std::sqrt(1.0 / raw.grid_intervals);
  REQUIRE(raw_out.records.size() == weighted_out.records.size());
  for (std::size_t i = 0; i < raw_out.records.size(); ++i) {
    CHECK(weighted_out.records[i].l2 == raw_out.records[i].l2 * w);
    CHECK(weighted_out.records[i].h1 == raw_out.records[i].h1 * w);
    CHECK(weighted_out.records[i].linf == raw_out.records[i].linf);
    CHECK(weighted_out.records[i].loss == raw_out.records[i].loss);
    CHECK(weighted_out.records[i].l2_order == raw_out.records[i].l2_order);
  }
}

TEST_CASE("invalid config is rejected before any file is written") {
  TempDir tmp;
  ExperimentConfig cfg = tiny_config();
  cfg.alpha = 1.0;
  cfg.output_path = (tmp.path / "never.csv").string();
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  CHECK_FALSE(fs::exists(tmp.path / "never.csv"));
}

TEST_CASE("sweep") {
  TempDir tmp;
  SweepConfig sweep;
  sweep.alphas = {1.5, 2.0};
  sweep.relu_powers = {1};
  sweep.grid_intervals = {20, 40};
  sweep.max_neurons = 4;
  sweep.bias_samples = 65;

  SUBCASE("runs every cell and writes a deterministic index") {
    const SweepOutput out = run_sweep(sweep, (tmp.path / "out").string(), 1);
    CHECK(out.all_ok);
    REQUIRE(out.cells.size() == 4);
    CHECK(out.cells[0].table_name == "table_alpha1.5_k1_M20.csv");
    CHECK(out.cells[3].table_name == "table_alpha2_k1_M40.csv");
    const std::string index = slurp(out.index_path);
    CHECK(index.rfind("table,alpha,relu_power,grid_intervals,status\n", 0) == 0);
    CHECK(index.find("table_alpha1.5_k1_M20.csv,1.5,1,20,ok") != std::string::npos);
    CHECK(index.find("table_alpha2_k1_M40.csv,2,1,40,ok") != std::string::npos);
    for (const SweepCell& cell : out.cells) {
      CHECK(fs::exists(tmp.path / "out" / cell.table_name));
      CHECK(fs::exists(tmp.path / "out" / sidecar_path(cell.table_name)));
    }
  }

  SUBCASE("parallel output is byte-identical to sequential") {
    const SweepOutput seq = run_sweep(sweep, (tmp.path / "seq").string(), 1);
    const SweepOutput par = run_sweep(sweep, (tmp.path / "par").string(), 3);
    REQUIRE(seq.all_ok);
    REQUIRE(par.all_ok);
    CHECK(slurp(seq.index_path) == slurp(par.index_path));
    for (const SweepCell& cell : seq.cells) {
      CHECK(slurp(tmp.path / "seq" / cell.table_name) ==
            slurp(tmp.path / "par" / cell.table_name));
    }
  }

  SUBCASE("a one-cell sweep equals run_experiment byte-for-byte") {
    SweepConfig one = sweep;
    one.alphas = {1.5};
    one.grid_intervals = {40};
    const SweepOutput out = run_sweep(one, (tmp.path / "one").string(), 1);
    REQUIRE(out.cells.size() == 1);

    ExperimentConfig cfg;
    cfg.alpha = 1.5;
    cfg.relu_power = 1;
    cfg.grid_intervals = 40;
    cfg.max_neurons = 4;
    cfg.bias_samples = 65;
    cfg.output_path = (tmp.path / "single.csv").string();
    run_experiment(cfg);

    CHECK(slurp(tmp.path / "one" / out.cells[0].table_name) == slurp(tmp.path / "single.csv"));
  }

  SUBCASE("empty alpha list fails validation") {
    SweepConfig bad = sweep;
    bad.alphas.clear();
    CHECK_THROWS_AS(run_sweep(bad, (tmp.path / "bad").string(), 1), std::invalid_argument);
  }
}

TEST_CASE("verification harness") {
  SUBCASE("a single check is selectable by name") {
    const auto results = run_verification(VerifyOptions{"operator-alpha2-exactness", false});
    REQUIRE(results.size() == 1);
    CHECK(results[0].name == "operator-alpha2-exactness");
    CHECK(results[0].passed);
  }
  SUBCASE("unknown names are rejected") {
    CHECK_THROWS_AS(run_verification(VerifyOptions{"no-such-check", false}),
                    std::invalid_argument);
  }
  SUBCASE("corrupting the recursion fails the coefficient check") {
    const auto results = run_verification(VerifyOptions{"gl-closed-form", true});
    REQUIRE(results.size() == 1);
    CHECK_FALSE(results[0].passed);
    // and the honest run passes
    const auto clean = run_verification(VerifyOptions{"gl-closed-form", false});
    CHECK(clean[0].passed);
  }
}
