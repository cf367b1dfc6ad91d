#pragma once

#include <array>
#include <vector>

namespace gup {

/// One (x, y) observation with independent Gaussian errors on both axes.
struct MeasurementPoint {
  double x = 0.0;
  double sigma_x = 0.0;
  double y = 0.0;
  double sigma_y = 0.0;
};

struct MeasurementSeries {
  std::vector<MeasurementPoint> points;

  /// Throws InvalidArgument on non-positive or non-finite sigmas, non-finite
  /// values, or fewer than `min_points` points.
  void validate(std::size_t min_points = 3) const;
};

/// Straight-line fit y = intercept + slope x.
struct LinearFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  double intercept_stderr = 0.0;
  /// Parameter covariance, index 0 = intercept, 1 = slope. Not rescaled by
  /// the reduced chi^2: standard errors follow the supplied sigmas.
  std::array<std::array<double, 2>, 2> covariance{};
  double objective = 0.0;  // chi^2 at the solution
  double reduced_chi2 = 0.0;
  int dof = 0;
  int iterations = 0;
};

/// Orthogonal distance regression for a straight line. Minimises
///   sum_i (x_i - xi_i)^2 / sx_i^2 + (y_i - a - b xi_i)^2 / sy_i^2
/// over (a, b, xi). The latent xi_i are eliminated in closed form, leaving
///   S(a, b) = sum_i (y_i - a - b x_i)^2 / (sy_i^2 + b^2 sx_i^2),
/// and a is profiled out analytically, so only a 1-D search over the slope
/// remains (coarse angular scan for the global basin, then safeguarded
/// Newton). Covariance is 2 H^-1 with H the Hessian of S(a, b).
///
/// Requires >= 3 points. Throws InvalidArgument on degenerate x and
/// NumericalError if the slope search fails to converge.
LinearFit odr_fit(const MeasurementSeries& series);

/// Weighted least squares ignoring sigma_x (weights 1/sy^2), closed form.
LinearFit wls_fit(const MeasurementSeries& series);

/// The errors-in-variables objective S(a, b) with the latent x eliminated.
double odr_objective(const MeasurementSeries& series, double intercept, double slope);

enum class FitParameter { intercept, slope };

struct Interval {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double half_width() const { return 0.5 * (upper - lower); }
};

/// Student-t quantile: t with P(T_dof <= t) = p.
double student_t_quantile(int dof, double p);

/// estimate +- t_{dof, (1 + level)/2} * stderr. Throws InvalidArgument unless
/// 0 < level < 1 and dof >= 1.
Interval confidence_interval(const LinearFit& fit, FitParameter parameter, double level);

}  // namespace gup
