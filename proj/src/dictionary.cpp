#include "fracgreedy/dictionary.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace fracgreedy {

double eval(const Neuron& g, double x) {
  const double z = g.omega * x + g.bias;
  if (z <= 0.0) {
    return 0.0;
  }
  switch (g.power) {
    case 1:
      return z;
    case 2:
      return z * z;
    default:
      return std::pow(z, g.power);
  }
}

double deriv(const Neuron& g, double x) {
  const double z = g.omega * x + g.bias;
  if (z <= 0.0) {
    return 0.0;
  }
  switch (g.power) {
    case 1:
      return static_cast<double>(g.omega);
    case 2:
      return 2.0 * g.omega * z;
    default:
      return g.power * g.omega * std::pow(z, g.power - 1);
  }
}

Eigen::VectorXd eval_on_grid(const Neuron& g, const Grid& grid) {
  const std::vector<double>& x = grid.interior_points();
  Eigen::VectorXd out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[static_cast<Eigen::Index>(j)] = eval(g, x[j]);
  }
  return out;
}

DictionaryGrid::DictionaryGrid(double bias_lo, double bias_hi, int bias_samples, int power)
    : bias_lo_(bias_lo), bias_hi_(bias_hi), bias_samples_(bias_samples), power_(power) {
  if (!(bias_lo < -1.0)) {
    throw std::invalid_argument("bias_range: lower bound must be < -1 so kinks cover (0,1), got " +
                                std::to_string(bias_lo));
  }
  if (!(bias_hi > 1.0)) {
    throw std::invalid_argument("bias_range: upper bound must be > 1 so kinks cover (0,1), got " +
                                std::to_string(bias_hi));
  }
  if (bias_samples < 2) {
    throw std::invalid_argument("bias_samples: must be >= 2, got " + std::to_string(bias_samples));
  }
  if (power != 1 && power != 2) {
    throw std::invalid_argument("relu_power: must be 1 or 2, got " + std::to_string(power));
  }
}

DictionaryGrid DictionaryGrid::with_defaults(int power) {
  return DictionaryGrid(-1.1, 1.1, 2049, power);
}

double DictionaryGrid::bias(int i) const {
  return bias_lo_ + i * (bias_hi_ - bias_lo_) / (bias_samples_ - 1);
}

Neuron DictionaryGrid::neuron(std::size_t index) const {
  if (index >= size()) {
    throw std::invalid_argument("candidate index out of range");
  }
  const std::size_t p = static_cast<std::size_t>(bias_samples_);
  if (index < p) {
    return Neuron{+1, bias(static_cast<int>(index)), power_};
  }
  return Neuron{-1, bias(static_cast<int>(index - p)), power_};
}

CandidateTable::CandidateTable(DictionaryGrid dict, const Grid& grid) : dict_(std::move(dict)) {
  const int n = grid.interior_count();
  const std::size_t count = dict_.size();
  values_.resize(n, static_cast<Eigen::Index>(count));
  for (std::size_t c = 0; c < count; ++c) {
    const Neuron g = dict_.neuron(c);
    for (int j = 0; j < n; ++j) {
      values_(j, static_cast<Eigen::Index>(c)) = eval(g, grid.interior_points()[j]);
    }
  }
}

namespace {

// Shared scoring kernel: plain sequential accumulation in j.
double score_column(const double* column, const double* residual, int n) {
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    acc += column[j] * residual[j];
  }
  return acc;
}

}  // namespace

std::vector<double> score_all(const CandidateTable& table, const Eigen::VectorXd& residual) {
  const Eigen::MatrixXd& values = table.values();
  if (residual.size() != values.rows()) {
    throw std::invalid_argument("score_all: residual length " + std::to_string(residual.size()) +
                                " does not match grid size " + std::to_string(values.rows()));
  }
  const int n = static_cast<int>(values.rows());
  std::vector<double> scores(static_cast<std::size_t>(values.cols()));
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    scores[static_cast<std::size_t>(c)] = score_column(values.col(c).data(), residual.data(), n);
  }
  return scores;
}

std::optional<Selection> select(const CandidateTable& table, const Eigen::VectorXd& residual) {
  if (table.dictionary().size() == 0) {
    throw std::invalid_argument("select: empty candidate set");
  }
  const std::vector<double> scores = score_all(table, residual);

  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    const double a = std::fabs(scores[c]);
    if (a > best_abs) {  // strict: ties keep the lower index
      best_abs = a;
      best = c;
    }
  }
  if (best_abs == 0.0) {
    return std::nullopt;  // every functional vanished: stagnation
  }
  return Selection{table.dictionary().neuron(best), best, scores[best]};
}

std::optional<Selection> select(const DictionaryGrid& dict, const Eigen::VectorXd& residual,
                                const Grid& grid) {
  return select(CandidateTable(dict, grid), residual);
}

}  // namespace fracgreedy
