#pragma once

// Test-side oracles, independent of the library code paths they check.

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace oracles {

// (-1)^k binom(alpha, k) via log-gamma with sign tracking; the reflection
// formula maps Gamma arguments <= 0 onto the positive axis.
inline double gl_closed_form(double alpha, int k) {
  if (k == 0) {
    return 1.0;
  }
  double sign = (k % 2 == 0) ? 1.0 : -1.0;
  double log_mag;
  const double z = alpha - k + 1.0;
  if (z > 0.0) {
    log_mag = std::lgamma(alpha + 1.0) - std::lgamma(k + 1.0) - std::lgamma(z);
  } else {
    const double s = std::sin(std::numbers::pi * z);
    log_mag = std::lgamma(alpha + 1.0) - std::lgamma(k + 1.0) + std::lgamma(1.0 - z) +
              std::log(std::fabs(s)) - std::log(std::numbers::pi);
    if (s < 0.0) {
      sign = -sign;
    }
  }
  return sign * std::exp(log_mag);
}

// Gamma at any non-pole argument: reflection onto z > 0.
inline double gamma_signed(double z) {
  if (z > 0.0) {
    return std::tgamma(z);
  }
  return std::numbers::pi / (std::sin(std::numbers::pi * z) * std::tgamma(1.0 - z));
}

// Brute-force dense product, no Toeplitz shortcuts.
inline Eigen::VectorXd dense_matvec(const Eigen::MatrixXd& a, const Eigen::VectorXd& v) {
  return a * v;
}

// Deterministic pseudo-random vector in [-1, 1)^n (fixed linear congruential
// stream, independent of the library's generator).
inline Eigen::VectorXd pseudo_random_vector(int n, std::uint64_t seed) {
  Eigen::VectorXd v(n);
  std::uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  for (int j = 0; j < n; ++j) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    v[j] = static_cast<double>(state >> 11) * 0x1.0p-52 - 1.0;
  }
  return v;
}

}  // namespace oracles
