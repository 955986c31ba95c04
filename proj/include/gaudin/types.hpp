#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gaudin {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// A series or expansion was asked for a term beyond its declared truncation.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A function was evaluated on (or numerically at) one of its singularities.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two Calogero-Moser particles came closer than the collision threshold.
class CollisionError : public std::runtime_error {
 public:
  CollisionError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

/// Numerical procedure failed to meet its own residual contract.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Frobenius norm of [a, b].
inline double commutator_norm(const Operator& a, const Operator& b) {
  return (a * b - b * a).norm();
}

}  // namespace gaudin
