#include "fracgreedy/fracop.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace fracgreedy {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !(alpha <= 2.0)) {
    throw std::invalid_argument("alpha: must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (alpha == 1.0) {
    throw std::invalid_argument(
        "alpha: 1 is excluded because the Riesz scale 1/(2 cos(pi*alpha/2)) is singular there");
  }
}

Grid::Grid(int intervals) : intervals_(intervals) {
  if (intervals < 3) {
    throw std::invalid_argument("grid_intervals: must be >= 3, got " + std::to_string(intervals));
  }
  spacing_ = 1.0 / intervals;
  interior_.resize(intervals - 1);
  for (int j = 1; j < intervals; ++j) {
    interior_[j - 1] = static_cast<double>(j) / intervals;
  }
}

GlCoefficients gl_coefficients(const FractionalOrder& order, int n) {
  if (n < 0) {
    throw std::invalid_argument("gl_coefficients: n must be >= 0");
  }
  const double alpha = order.value();
  GlCoefficients out;
  out.alpha = alpha;
  out.values.resize(n + 1);
  out.values[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    out.values[k] = (1.0 - (alpha + 1.0) / k) * out.values[k - 1];
  }
  return out;
}

RieszOperator::RieszOperator(FractionalOrder order, Grid grid)
    : order_(order), grid_(grid) {
  const double alpha = order_.value();
  const double h = grid_.spacing();
  scale_ = 1.0 / (2.0 * std::cos(std::numbers::pi * alpha / 2.0) * std::pow(h, alpha));

  const int m = grid_.intervals();
  const GlCoefficients gl = gl_coefficients(order_, m - 1);
  const std::vector<double>& b = gl.values;

  row_.resize(m - 1);
  row_[0] = scale_ * 2.0 * b[1];
  if (m - 1 > 1) {
    row_[1] = scale_ * (b[0] + b[2]);
  }
  for (int k = 2; k < m - 1; ++k) {
    row_[k] = scale_ * b[k + 1];
  }
}

Eigen::MatrixXd RieszOperator::dense() const {
  const int n = size();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = row_[std::abs(i - j)];
    }
  }
  return a;
}

Eigen::VectorXd RieszOperator::apply(const Eigen::VectorXd& v) const {
  const int n = size();
  if (v.size() != n) {
    throw std::invalid_argument("apply: vector length " + std::to_string(v.size()) +
                                " does not match operator size " + std::to_string(n));
  }
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      acc += row_[std::abs(i - j)] * v[j];
    }
    out[i] = acc;
  }
  return out;
}

namespace {

// [-1, 1) from the top 53 bits of the engine output; avoids the
// implementation-defined behavior of uniform_real_distribution.
double unit_symmetric(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

}  // namespace

PositivityReport positivity_probe(const RieszOperator& op, int trials) {
  if (trials < 1) {
    throw std::invalid_argument("positivity_probe: trials must be >= 1");
  }
  const Eigen::MatrixXd a = op.dense();

  PositivityReport report;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  report.factorization_ok = (llt.info() == Eigen::Success);

  std::mt19937_64 rng(0x2545f4914f6cdd1dULL);
  const int n = op.size();
  double min_q = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd v(n);
    for (int j = 0; j < n; ++j) {
      v[j] = unit_symmetric(rng);
    }
    const double denom = v.squaredNorm();
    if (denom == 0.0) {
      continue;  // astronomically unlikely; skip rather than divide by zero
    }
    const double q = v.dot(a * v) / denom;
    min_q = std::min(min_q, q);
  }
  report.min_rayleigh = min_q;
  return report;
}

}  // namespace fracgreedy
