#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <vector>

#include "fracgreedy/fracop.hpp"

namespace fracgreedy {

// One ReLU^k ridge function x -> max(0, omega*x + b)^k.
struct Neuron {
  int omega = 1;      // +1 or -1
  double bias = 0.0;
  int power = 1;      // k, 1 or 2
};

double eval(const Neuron& g, double x);

// Derivative of eval in x. At the kink omega*x + b = 0 the one-sided
// convention applies and 0 is returned.
double deriv(const Neuron& g, double x);

Eigen::VectorXd eval_on_grid(const Neuron& g, const Grid& grid);

// Finite candidate set: P uniformly spaced biases in [c1, c2], enumerated
// first for omega = +1 (biases ascending), then omega = -1. The enumeration
// rank is the candidate index used for tie-breaking. The bias range must
// strictly contain [-1, 1] so kinks can fall anywhere in the domain.
class DictionaryGrid {
 public:
  DictionaryGrid(double bias_lo, double bias_hi, int bias_samples, int power);

  // [-1.1, 1.1] with 2049 biases per sign.
  static DictionaryGrid with_defaults(int power);

  double bias_lo() const { return bias_lo_; }
  double bias_hi() const { return bias_hi_; }
  int bias_samples() const { return bias_samples_; }
  int power() const { return power_; }

  std::size_t size() const { return 2 * static_cast<std::size_t>(bias_samples_); }
  double bias(int i) const;
  Neuron neuron(std::size_t index) const;

 private:
  double bias_lo_;
  double bias_hi_;
  int bias_samples_;
  int power_;
};

// Grid evaluations of every candidate, built once per solve. Column c holds
// candidate c sampled at the interior nodes.
class CandidateTable {
 public:
  CandidateTable(DictionaryGrid dict, const Grid& grid);

  const DictionaryGrid& dictionary() const { return dict_; }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  DictionaryGrid dict_;
  Eigen::MatrixXd values_;
};

struct Selection {
  Neuron neuron;
  std::size_t index = 0;  // enumeration rank of the winner
  double score = 0.0;     // signed value of the winning functional
};

// Scores every candidate against the residual functional g -> sum_j r_j g(x_j).
// Per-candidate sums run sequentially over j, so scores are identical whether
// candidates are processed in one pass or in parallel chunks.
std::vector<double> score_all(const CandidateTable& table, const Eigen::VectorXd& residual);

// Exhaustive argmax of |score|, ties broken toward the lower candidate index.
// Returns nullopt when every score is exactly zero (greedy stagnation).
std::optional<Selection> select(const CandidateTable& table, const Eigen::VectorXd& residual);
std::optional<Selection> select(const DictionaryGrid& dict, const Eigen::VectorXd& residual, const Grid& grid);

}  // namespace fracgreedy
