#pragma once

#include <functional>

namespace gup {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// estimate is below max(abs_tol, rel_tol |I|). Throws NumericalError if
/// max_intervals is reached first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol = 0.0,
                                    int max_intervals = 4000);

}  // namespace gup
