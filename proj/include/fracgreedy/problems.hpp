#pragma once

#include <Eigen/Dense>

#include "fracgreedy/fracop.hpp"

namespace fracgreedy {

// Gamma(z) for z > 0. Nothing in the pipeline needs nonpositive arguments;
// they raise a domain error.
double gamma_fn(double z);

// Manufactured solution u(x) = x^3 (1-x)^3 and its derivative.
double exact_u(double x);
double exact_du(double x);

// Closed-form forcing of the fractional Poisson problem for the manufactured
// solution: four symmetric power terms weighted by gamma-function ratios,
// scaled by 1/(2 cos(pi*alpha/2)). Regular at alpha = 2, where it equals -u''.
double forcing(const FractionalOrder& order, double x);

class ManufacturedProblem {
 public:
  explicit ManufacturedProblem(FractionalOrder order) : order_(order) {}

  const FractionalOrder& order() const { return order_; }
  double u(double x) const { return exact_u(x); }
  double du(double x) const { return exact_du(x); }
  double f(double x) const { return forcing(order_, x); }

  Eigen::VectorXd u_on(const Grid& grid) const;
  Eigen::VectorXd du_on(const Grid& grid) const;
  Eigen::VectorXd f_on(const Grid& grid) const;

 private:
  FractionalOrder order_;
};

struct FdmSolution {
  Eigen::VectorXd values;          // solution at the interior nodes
  double relative_residual = 0.0;  // ||A u - f|| / ||f||
};

// Dense direct solve of A u = f. This is the baseline the greedy expansions
// converge toward, and the reference for energy-error diagnostics. Raises
// SingularOperatorError when the solve leaves a residual above 1e-10
// relative (possible for alpha < 1, where A is indefinite).
FdmSolution fdm_solve(const RieszOperator& op, const Eigen::VectorXd& f_grid);

}  // namespace fracgreedy
