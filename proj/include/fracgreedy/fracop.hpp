#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fracgreedy {

// Exponent of the fractional Laplacian (-d^2/dx^2)^{alpha/2}. Valid range is
// (0, 2] with alpha = 1 excluded: cos(pi*alpha/2) = 0 there, which makes the
// Riesz scale factor singular.
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

// Uniform grid on (0,1): M intervals, spacing h = 1/M, interior nodes
// x_j = j/M for j = 1..M-1. Boundary nodes carry the homogeneous Dirichlet
// data and are never stored.
class Grid {
 public:
  explicit Grid(int intervals);

  int intervals() const { return intervals_; }
  double spacing() const { return spacing_; }
  int interior_count() const { return intervals_ - 1; }
  const std::vector<double>& interior_points() const { return interior_; }

 private:
  int intervals_;
  double spacing_;
  std::vector<double> interior_;
};

// Signed binomial weights B_k = (-1)^k binom(alpha, k), generated by
// B_0 = 1, B_k = (1 - (alpha+1)/k) B_{k-1}.
struct GlCoefficients {
  double alpha = 0.0;
  std::vector<double> values;  // B_0..B_n
};

GlCoefficients gl_coefficients(const FractionalOrder& order, int n);

// Shifted Grunwald-Letnikov discretization of the fractional Laplacian on the
// interior nodes: a symmetric Toeplitz matrix with first row
//   c * [2 B_1, B_0 + B_2, B_3, ..., B_{M-1}],  c = 1 / (2 cos(pi*alpha/2) h^alpha).
// At alpha = 2 this collapses to h^{-2} tridiag(-1, 2, -1). For alpha < 1 the
// diagonal goes negative; the operator is still assembled and applied as-is.
class RieszOperator {
 public:
  RieszOperator(FractionalOrder order, Grid grid);

  const FractionalOrder& order() const { return order_; }
  const Grid& grid() const { return grid_; }
  double scale() const { return scale_; }
  int size() const { return grid_.interior_count(); }
  const std::vector<double>& toeplitz_row() const { return row_; }

  // Dense symmetric realization A(i,j) = t_{|i-j|}.
  Eigen::MatrixXd dense() const;

  // Toeplitz matvec. Each output entry is accumulated sequentially in j, so
  // the result does not depend on any internal chunking.
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

 private:
  FractionalOrder order_;
  Grid grid_;
  double scale_;
  std::vector<double> row_;  // t_0..t_{M-2}
};

struct PositivityReport {
  double min_rayleigh = 0.0;     // min of v'Av / v'v over the probe vectors
  bool factorization_ok = false; // Cholesky of the dense realization succeeded
};

// Diagnostic only; never throws past argument validation and never aborts the
// pipeline. Probe vectors come from a fixed-seed generator so reports are
// reproducible.
PositivityReport positivity_probe(const RieszOperator& op, int trials);

}  // namespace fracgreedy
