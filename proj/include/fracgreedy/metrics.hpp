#pragma once

#include <Eigen/Dense>
#include <optional>

namespace fracgreedy {

// Unweighted discrete norms over the interior samples: no sqrt(h) factor.
// This is the convention every table uses; the optional h-weighted view is a
// reporting-layer rescale.
double raw_l2(const Eigen::VectorXd& v);
double linf(const Eigen::VectorXd& v);

// Unweighted l2 of derivative-error samples; the H1 column is this seminorm
// alone, with no L2 part.
double h1_seminorm(const Eigen::VectorXd& err_deriv_samples);

// log2(prev/cur), the per-doubling convergence order. nullopt when either
// side is nonpositive (reported downstream as 0 with a flag).
std::optional<double> order_log2(double prev_err, double cur_err);

// One convergence-table row.
struct IterationRecord {
  int n = 0;
  double loss = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
  double linf = 0.0;
  double loss_order = 0.0;
  double l2_order = 0.0;
  double h1_order = 0.0;
  double linf_order = 0.0;
  // Bit set when the corresponding order had a nonpositive input and the 0
  // above is a sentinel rather than a measured value.
  unsigned undefined_orders = 0;

  static constexpr unsigned kLossOrderUndefined = 1u << 0;
  static constexpr unsigned kL2OrderUndefined = 1u << 1;
  static constexpr unsigned kH1OrderUndefined = 1u << 2;
  static constexpr unsigned kLinfOrderUndefined = 1u << 3;
};

}  // namespace fracgreedy
