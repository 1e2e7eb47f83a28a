#include "fracgreedy/oga.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "fracgreedy/errors.hpp"

namespace fracgreedy {

std::vector<int> SolveConfig::default_checkpoints(int max_neurons) {
  std::vector<int> cps;
  for (long long c = 2; c <= max_neurons; c *= 2) {
    cps.push_back(static_cast<int>(c));
  }
  if (cps.empty() && max_neurons >= 1) {
    cps.push_back(max_neurons);
  }
  return cps;
}

std::vector<int> SolveConfig::effective_checkpoints() const {
  return checkpoints.empty() ? default_checkpoints(max_neurons) : checkpoints;
}

void SolveConfig::validate() const {
  if (max_neurons < 1) {
    throw std::invalid_argument("max_neurons: must be >= 1, got " + std::to_string(max_neurons));
  }
  if (!(condition_threshold > 0.0)) {
    throw std::invalid_argument("condition_threshold: must be positive");
  }
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

Eigen::VectorXd OgaState::solution(int grid_size) const {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(grid_size);
  for (int i = 0; i < size(); ++i) {
    u += coeffs[i] * evals[i];
  }
  return u;
}

Eigen::VectorXd OgaState::solution_deriv(const Grid& grid) const {
  const std::vector<double>& x = grid.interior_points();
  Eigen::VectorXd du = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(x.size()));
  for (int i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      du[static_cast<Eigen::Index>(j)] += coeffs[i] * deriv(neurons[i], x[j]);
    }
  }
  return du;
}

Eigen::VectorXd residual(const OgaState& state, const RieszOperator& op,
                         const Eigen::VectorXd& f_grid) {
  if (f_grid.size() != op.size()) {
    throw std::invalid_argument("residual: forcing length does not match operator size");
  }
  if (state.size() == 0) {
    return -f_grid;
  }
  if (state.op_evals.size() == state.neurons.size()) {
    Eigen::VectorXd r = -f_grid;
    for (int i = 0; i < state.size(); ++i) {
      r += state.coeffs[i] * state.op_evals[i];
    }
    return r;
  }
  return op.apply(state.solution(op.size())) - f_grid;
}

Eigen::VectorXd project_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs,
                             double condition_threshold) {
  if (gram.rows() == 0) {
    return Eigen::VectorXd();
  }
  if (gram.rows() != gram.cols() || rhs.size() != gram.rows()) {
    throw std::invalid_argument("project: Gram matrix and right-hand side sizes disagree");
  }
  if (gram.cwiseAbs().maxCoeff() == 0.0) {
    throw DegenerateDictionaryError(
        "project: Galerkin matrix is identically zero; every selected neuron vanishes on the grid");
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() == Eigen::Success) {
    const double rcond = ldlt.rcond();
    if (rcond > 0.0 && 1.0 / rcond < condition_threshold) {
      Eigen::VectorXd a = ldlt.solve(rhs);
      // An indefinite Gram (alpha < 1) can defeat LDLT without tripping
      // info(); a bad back-substituted residual counts as a failed
      // factorization and falls through.
      const double rhs_norm = rhs.norm();
      const double rel = (gram * a - rhs).norm() / (rhs_norm > 0.0 ? rhs_norm : 1.0);
      if (a.allFinite() && rel <= 1e-6) {
        return a;
      }
    }
  }

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
  Eigen::VectorXd a = cod.solve(rhs);  // minimum-norm least squares
  if (!a.allFinite()) {
    throw SingularOperatorError("project: least-squares fallback produced non-finite coefficients");
  }
  return a;
}

Eigen::VectorXd project(const std::vector<Eigen::VectorXd>& evals, const RieszOperator& op,
                        const Eigen::VectorXd& f_grid, double condition_threshold) {
  const int n = static_cast<int>(evals.size());
  if (n == 0) {
    throw std::invalid_argument("project: need at least one neuron");
  }
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd rhs(n);
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd a_gk = op.apply(evals[k]);
    for (int i = 0; i <= k; ++i) {
      const double v = evals[i].dot(a_gk);
      gram(i, k) = v;
      gram(k, i) = v;
    }
    rhs[k] = f_grid.dot(evals[k]);
  }
  return project_gram(gram, rhs, condition_threshold);
}

bool step(OgaState& state, const RieszOperator& op, const Eigen::VectorXd& f_grid,
          const CandidateTable& table, double condition_threshold) {
  const Eigen::VectorXd r = residual(state, op, f_grid);
  const std::optional<Selection> sel = select(table, r);
  if (!sel) {
    state.stagnated = true;
    return false;
  }

  Eigen::VectorXd g = table.values().col(static_cast<Eigen::Index>(sel->index));
  Eigen::VectorXd a_g = op.apply(g);

  const int n = state.size();
  state.gram.conservativeResize(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    const double v = state.evals[i].dot(a_g);
    state.gram(i, n) = v;
    state.gram(n, i) = v;
  }
  state.gram(n, n) = g.dot(a_g);
  state.rhs.conservativeResize(n + 1);
  state.rhs[n] = f_grid.dot(g);

  state.neurons.push_back(sel->neuron);
  state.evals.push_back(std::move(g));
  state.op_evals.push_back(std::move(a_g));

  // Full re-projection: every coefficient is re-solved, none are frozen.
  state.coeffs = project_gram(state.gram, state.rhs, condition_threshold);
  ++state.step_count;
  return true;
}

namespace {

IterationRecord make_record(int n, const OgaState& state, const RieszOperator& op,
                            const Eigen::VectorXd& f_grid, const Eigen::VectorXd& u_exact,
                            const Eigen::VectorXd& du_exact, const Grid& grid,
                            const IterationRecord* prev) {
  IterationRecord rec;
  rec.n = n;

  const Eigen::VectorXd u = state.solution(op.size());
  const Eigen::VectorXd du = state.solution_deriv(grid);
  rec.l2 = raw_l2(u_exact - u);
  rec.h1 = h1_seminorm(du_exact - du);
  rec.linf = linf(u_exact - u);

  const Eigen::VectorXd r = residual(state, op, f_grid);
  double loss = 0.0;
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    loss += r[j] * r[j];
  }
  rec.loss = loss;

  if (prev != nullptr) {
    const auto set_order = [&rec](double prev_v, double cur_v, double& slot, unsigned flag) {
      if (const std::optional<double> o = order_log2(prev_v, cur_v)) {
        slot = *o;
      } else {
        slot = 0.0;
        rec.undefined_orders |= flag;
      }
    };
    set_order(prev->loss, rec.loss, rec.loss_order, IterationRecord::kLossOrderUndefined);
    set_order(prev->l2, rec.l2, rec.l2_order, IterationRecord::kL2OrderUndefined);
    set_order(prev->h1, rec.h1, rec.h1_order, IterationRecord::kH1OrderUndefined);
    set_order(prev->linf, rec.linf, rec.linf_order, IterationRecord::kLinfOrderUndefined);
  }
  return rec;
}

}  // namespace

RunResult run_on_grid(const SolveConfig& config, const Eigen::VectorXd& f_grid,
                      const Eigen::VectorXd& u_exact_grid, const Eigen::VectorXd& du_exact_grid,
                      const StepObserver& on_step) {
  config.validate();
  const int points = config.grid.interior_count();
  if (f_grid.size() != points || u_exact_grid.size() != points || du_exact_grid.size() != points) {
    throw std::invalid_argument("run: grid sample lengths do not match the grid");
  }

  const RieszOperator op(config.alpha, config.grid);
  const CandidateTable table(config.dict, config.grid);
  const std::vector<int> checkpoints = config.effective_checkpoints();

  RunResult out;
  out.records.reserve(checkpoints.size());

  std::size_t next_checkpoint = 0;
  for (int n = 1; n <= config.max_neurons; ++n) {
    if (!out.state.stagnated) {
      if (step(out.state, op, f_grid, table, config.condition_threshold) && on_step) {
        on_step(out.state, op, f_grid);
      }
    }
    if (next_checkpoint < checkpoints.size() && n == checkpoints[next_checkpoint]) {
      const IterationRecord* prev = out.records.empty() ? nullptr : &out.records.back();
      out.records.push_back(
          make_record(n, out.state, op, f_grid, u_exact_grid, du_exact_grid, config.grid, prev));
      ++next_checkpoint;
    }
  }
  return out;
}

RunResult run(const SolveConfig& config, const ManufacturedProblem& problem,
              const StepObserver& on_step) {
  if (problem.order().value() != config.alpha.value()) {
    throw std::invalid_argument("run: problem and config disagree on alpha");
  }
  return run_on_grid(config, problem.f_on(config.grid), problem.u_on(config.grid),
                     problem.du_on(config.grid), on_step);
}

}  // namespace fracgreedy
