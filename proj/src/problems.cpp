#include "fracgreedy/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracgreedy/errors.hpp"

namespace fracgreedy {

double gamma_fn(double z) {
  if (!(z > 0.0)) {
    throw std::domain_error("gamma_fn: argument must be positive, got " + std::to_string(z));
  }
  return std::tgamma(z);
}

double exact_u(double x) {
  const double w = 1.0 - x;
  return x * x * x * w * w * w;
}

double exact_du(double x) {
  const double w = 1.0 - x;
  return 3.0 * x * x * w * w * w - 3.0 * x * x * x * w * w;
}

double forcing(const FractionalOrder& order, double x) {
  const double alpha = order.value();
  const double pref = 1.0 / (2.0 * std::cos(std::numbers::pi * alpha / 2.0));
  const double y = 1.0 - x;

  const double p3 = std::pow(x, 3.0 - alpha) + std::pow(y, 3.0 - alpha);
  const double p4 = std::pow(x, 4.0 - alpha) + std::pow(y, 4.0 - alpha);
  const double p5 = std::pow(x, 5.0 - alpha) + std::pow(y, 5.0 - alpha);
  const double p6 = std::pow(x, 6.0 - alpha) + std::pow(y, 6.0 - alpha);

  return pref * (gamma_fn(4.0) / gamma_fn(4.0 - alpha) * p3 -
                 3.0 * gamma_fn(5.0) / gamma_fn(5.0 - alpha) * p4 +
                 3.0 * gamma_fn(6.0) / gamma_fn(6.0 - alpha) * p5 -
                 gamma_fn(7.0) / gamma_fn(7.0 - alpha) * p6);
}

namespace {

template <typename F>
Eigen::VectorXd sample_on(const Grid& grid, F&& f) {
  const std::vector<double>& x = grid.interior_points();
  Eigen::VectorXd out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[static_cast<Eigen::Index>(j)] = f(x[j]);
  }
  return out;
}

}  // namespace

Eigen::VectorXd ManufacturedProblem::u_on(const Grid& grid) const {
  return sample_on(grid, [](double x) { return exact_u(x); });
}

Eigen::VectorXd ManufacturedProblem::du_on(const Grid& grid) const {
  return sample_on(grid, [](double x) { return exact_du(x); });
}

Eigen::VectorXd ManufacturedProblem::f_on(const Grid& grid) const {
  return sample_on(grid, [this](double x) { return f(x); });
}

FdmSolution fdm_solve(const RieszOperator& op, const Eigen::VectorXd& f_grid) {
  if (f_grid.size() != op.size()) {
    throw std::invalid_argument("fdm_solve: forcing length " + std::to_string(f_grid.size()) +
                                " does not match operator size " + std::to_string(op.size()));
  }
  const Eigen::MatrixXd a = op.dense();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  Eigen::VectorXd u = lu.solve(f_grid);

  const double f_norm = f_grid.norm();
  const double rel = (a * u - f_grid).norm() / (f_norm > 0.0 ? f_norm : 1.0);
  if (!u.allFinite() || rel > 1e-10) {
    throw SingularOperatorError("fdm_solve: direct solve left relative residual " +
                                std::to_string(rel) + " (operator numerically singular?)");
  }
  return FdmSolution{std::move(u), rel};
}

}  // namespace fracgreedy
