#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "fracgreedy/dictionary.hpp"
#include "fracgreedy/fracop.hpp"
#include "fracgreedy/metrics.hpp"
#include "fracgreedy/problems.hpp"

namespace fracgreedy {

struct SolveConfig {
  FractionalOrder alpha;
  Grid grid;
  DictionaryGrid dict;                // carries the ReLU power
  int max_neurons = 64;
  std::vector<int> checkpoints;       // empty -> powers of two up to max_neurons
  double condition_threshold = 1e12;  // Gram condition estimate beyond this -> least squares

  // 2, 4, 8, ... up to max_neurons; {max_neurons} when that range is empty.
  static std::vector<int> default_checkpoints(int max_neurons);
  std::vector<int> effective_checkpoints() const;
  void validate() const;
};

// Greedy expansion after n steps: selected neurons g_1..g_n, Galerkin
// coefficients a_1..a_n, cached grid evaluations, cached operator images
// A g_i, and the Gram matrix G(m,k) = evals_m' A evals_k.
struct OgaState {
  std::vector<Neuron> neurons;
  Eigen::VectorXd coeffs;
  std::vector<Eigen::VectorXd> evals;
  std::vector<Eigen::VectorXd> op_evals;
  Eigen::VectorXd rhs;  // (f, g_i) entries of the Galerkin system
  Eigen::MatrixXd gram;
  int step_count = 0;
  bool stagnated = false;

  int size() const { return static_cast<int>(neurons.size()); }
  // sum_i a_i g_i at the interior nodes; zeros at n = 0.
  Eigen::VectorXd solution(int grid_size) const;
  // sum_i a_i g_i' at the interior nodes.
  Eigen::VectorXd solution_deriv(const Grid& grid) const;
};

// A u_n - f at the interior nodes; equals -f at n = 0. Reuses the cached
// operator images when present.
Eigen::VectorXd residual(const OgaState& state, const RieszOperator& op, const Eigen::VectorXd& f_grid);

// Solve the Galerkin system G a = rhs with a symmetric factorization; fall
// back to a minimum-norm least-squares solve when the factorization fails or
// the condition estimate exceeds condition_threshold (so a duplicated neuron
// stays harmless).
Eigen::VectorXd project_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs,
                             double condition_threshold = 1e12);
Eigen::VectorXd project(const std::vector<Eigen::VectorXd>& evals, const RieszOperator& op,
                        const Eigen::VectorXd& f_grid, double condition_threshold = 1e12);

// One greedy step: residual, argmax selection, append, full re-projection of
// every coefficient. Returns false and sets the stagnated flag when selection
// finds no candidate with a nonzero score.
bool step(OgaState& state, const RieszOperator& op, const Eigen::VectorXd& f_grid,
          const CandidateTable& table, double condition_threshold = 1e12);

// Invoked after every completed projection.
using StepObserver =
    std::function<void(const OgaState&, const RieszOperator&, const Eigen::VectorXd& f_grid)>;

struct RunResult {
  std::vector<IterationRecord> records;
  OgaState state;
};

// Full greedy run with per-checkpoint records. Once stagnated, the expansion
// freezes and the remaining checkpoints repeat its metrics, keeping the table
// rectangular. Deterministic: the same config yields bit-identical records.
RunResult run(const SolveConfig& config, const ManufacturedProblem& problem,
              const StepObserver& on_step = {});

// Same loop against an explicit forcing vector and reference samples.
RunResult run_on_grid(const SolveConfig& config, const Eigen::VectorXd& f_grid,
                      const Eigen::VectorXd& u_exact_grid, const Eigen::VectorXd& du_exact_grid,
                      const StepObserver& on_step = {});

}  // namespace fracgreedy
