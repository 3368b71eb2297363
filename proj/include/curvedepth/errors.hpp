#pragma once

#include <stdexcept>
#include <string>

namespace curvedepth {

/// Adaptive quadrature ran out of panels before meeting its tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double value, double err_est)
      : std::runtime_error(what), value_(value), err_est_(err_est) {}

  double value() const noexcept { return value_; }
  double err_est() const noexcept { return err_est_; }

 private:
  double value_;
  double err_est_;
};

/// A covariance kernel produced values that contradict det(Sigma) >= 0.
class SingularEvaluation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampled curve could not be resolved topologically on the mesh.
class DegenerateSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace curvedepth
