#pragma once

#include <stdexcept>
#include <string>

namespace fracgreedy {

// A linear solve failed outright or left an unusable residual.
class SingularOperatorError : public std::runtime_error {
 public:
  explicit SingularOperatorError(const std::string& what) : std::runtime_error(what) {}
};

// Every selected neuron vanishes on the grid, so the Galerkin system is identically zero.
class DegenerateDictionaryError : public std::runtime_error {
 public:
  explicit DegenerateDictionaryError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracgreedy
