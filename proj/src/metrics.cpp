#include "fracgreedy/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace fracgreedy {

double raw_l2(const Eigen::VectorXd& v) {
  if (v.size() == 0) {
    throw std::invalid_argument("raw_l2: empty vector");
  }
  double acc = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    acc += v[j] * v[j];
  }
  return std::sqrt(acc);
}

double linf(const Eigen::VectorXd& v) {
  if (v.size() == 0) {
    throw std::invalid_argument("linf: empty vector");
  }
  double m = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    m = std::max(m, std::fabs(v[j]));
  }
  return m;
}

double h1_seminorm(const Eigen::VectorXd& err_deriv_samples) {
  return raw_l2(err_deriv_samples);
}

std::optional<double> order_log2(double prev_err, double cur_err) {
  if (!(prev_err > 0.0) || !(cur_err > 0.0)) {
    return std::nullopt;
  }
  return std::log2(prev_err / cur_err);
}

}  // namespace fracgreedy
