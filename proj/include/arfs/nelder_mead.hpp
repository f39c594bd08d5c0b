#pragma once

#include <functional>

#include <Eigen/Dense>

namespace arfs {

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0;
  int iterations = 0;
};

/// Derivative-free local minimizer; used for the non-smooth max-of-norms
/// objectives. Stops when both the simplex diameter and the value spread
/// fall below the tolerances.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& fn, const Eigen::VectorXd& start,
                             double initial_step, double xtol, double ftol, int max_iterations);

}  // namespace arfs
