#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <string>

#include "fracgreedy/config.hpp"
#include "fracgreedy/errors.hpp"
#include "fracgreedy/experiment.hpp"
#include "fracgreedy/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerification = 3;

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& format) {
  fracgreedy::ExperimentConfig config = fracgreedy::load_experiment_config(config_path);
  if (!out_path.empty()) {
    config.output_path = out_path;
  }
  if (format == "csv") {
    config.output_format = fracgreedy::OutputFormat::csv;
  } else if (format == "md") {
    config.output_format = fracgreedy::OutputFormat::markdown;
  }
  const fracgreedy::ExperimentOutput out = fracgreedy::run_experiment(config);
  std::cout << "wrote " << out.table_path << "\n";
  std::cout << "wrote " << out.sidecar_path << " (full precision)\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, int jobs) {
  const fracgreedy::SweepConfig config = fracgreedy::load_sweep_config(config_path);
  const fracgreedy::SweepOutput out = fracgreedy::run_sweep(config, out_dir, jobs);
  for (const fracgreedy::SweepCell& cell : out.cells) {
    std::cout << (cell.ok ? "ok      " : "failed  ") << cell.table_name;
    if (!cell.ok) {
      std::cout << "  (" << cell.error << ")";
    }
    std::cout << "\n";
  }
  std::cout << "index: " << out.index_path << "\n";
  return out.all_ok ? kExitOk : kExitNumerical;
}

int cmd_verify(const std::string& only, bool list) {
  if (list) {
    for (const std::string& name : fracgreedy::verification_check_names()) {
      std::cout << name << "\n";
    }
    return kExitOk;
  }
  fracgreedy::VerifyOptions options;
  options.only = only;
  const std::vector<fracgreedy::CheckResult> results = fracgreedy::run_verification(options);
  fracgreedy::print_report(std::cout, results);
  return fracgreedy::all_passed(results) ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal-greedy shallow-network solver for the 1D fractional Poisson problem"};
  app.require_subcommand(1);

  std::string run_config, run_out, run_format;
  CLI::App* run_cmd = app.add_subcommand("run", "Run one experiment from a config file");
  run_cmd->add_option("--config", run_config, "Experiment config file")->required();
  run_cmd->add_option("--out", run_out, "Output table path (overrides the config)");
  run_cmd->add_option("--format", run_format, "Table format")
      ->check(CLI::IsMember({"csv", "md"}));

  std::string sweep_config, sweep_out_dir;
  int sweep_jobs = 1;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run every cell of a sweep config");
  sweep_cmd->add_option("--config", sweep_config, "Sweep config file")->required();
  sweep_cmd->add_option("--out-dir", sweep_out_dir, "Directory for tables and index.csv")
      ->required();
  sweep_cmd->add_option("--jobs", sweep_jobs, "Cells to run in parallel")
      ->check(CLI::PositiveNumber);

  std::string verify_only;
  bool verify_list = false;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the built-in verification suite");
  verify_cmd->add_option("--only", verify_only, "Run a single named check");
  verify_cmd->add_flag("--list", verify_list, "List check names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (run_cmd->parsed()) {
      return cmd_run(run_config, run_out, run_format);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_config, sweep_out_dir, sweep_jobs);
    }
    return cmd_verify(verify_only, verify_list);
  } catch (const fracgreedy::SingularOperatorError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const fracgreedy::DegenerateDictionaryError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
