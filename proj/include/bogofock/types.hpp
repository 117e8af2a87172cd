#pragma once

#include <complex>

#include <Eigen/Dense>

namespace bogofock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kFormatVersion = 1;

/// Default absolute tolerance (max-norm) for the Bogoliubov relations.
inline constexpr double kRelationTol = 1e-10;

/// Hard cap on dense pointwise arrays of size modes^(N+L).
inline constexpr std::int64_t kPointwiseCap = 1'000'000;

inline Vector unit_vector(Eigen::Index dim, Eigen::Index j) {
  Vector e = Vector::Zero(dim);
  e(j) = Complex(1.0, 0.0);
  return e;
}

}  // namespace bogofock
