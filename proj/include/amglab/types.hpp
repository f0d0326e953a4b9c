#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace amglab {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;  // column-major
using Index = int;

inline constexpr const char* kVersion = "0.1.0";

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotSpdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Factorization detected a (numerically) singular matrix.
struct SingularError : std::runtime_error {
  double cond_estimate;
  SingularError(const std::string& what, double cond)
      : std::runtime_error(what), cond_estimate(cond) {}
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace amglab
