#include "gup/evfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/students_t.hpp>

#include "gup/errors.hpp"

namespace gup {

void MeasurementSeries::validate(std::size_t min_points) const {
  if (points.size() < min_points) {
    throw InvalidArgument("need at least " + std::to_string(min_points) + " points, got " +
                          std::to_string(points.size()));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    if (!std::isfinite(pt.x) || !std::isfinite(pt.y))
      throw InvalidArgument("point " + std::to_string(i) + " has a non-finite value");
    if (!(pt.sigma_x > 0.0) || !(pt.sigma_y > 0.0) || !std::isfinite(pt.sigma_x) ||
        !std::isfinite(pt.sigma_y))
      throw InvalidArgument("point " + std::to_string(i) + " has a non-positive sigma");
  }
}

namespace {

struct ProfileTerms {
  double intercept;    // a(b), the profiled intercept
  double objective;    // S(a(b), b)
  double grad_b;       // dS/db at a(b) (equals the profile derivative)
  double hess_aa, hess_ab, hess_bb;
};

ProfileTerms profile(const MeasurementSeries& series, double b) {
  double sw = 0.0, swr = 0.0;
  for (const auto& pt : series.points) {
    const double w = 1.0 / (pt.sigma_y * pt.sigma_y + b * b * pt.sigma_x * pt.sigma_x);
    sw += w;
    swr += w * (pt.y - b * pt.x);
  }
  const double a = swr / sw;
  ProfileTerms out{a, 0.0, 0.0, 0.0, 0.0, 0.0};
  for (const auto& pt : series.points) {
    const double sx2 = pt.sigma_x * pt.sigma_x;
    const double w = 1.0 / (pt.sigma_y * pt.sigma_y + b * b * sx2);
    const double w1 = -2.0 * b * sx2 * w * w;
    const double w2 = -2.0 * sx2 * w * w + 8.0 * b * b * sx2 * sx2 * w * w * w;
    const double r = pt.y - a - b * pt.x;
    out.objective += w * r * r;
    out.grad_b += -2.0 * w * r * pt.x + w1 * r * r;
    out.hess_aa += 2.0 * w;
    out.hess_ab += 2.0 * w * pt.x - 2.0 * w1 * r;
    out.hess_bb += 2.0 * w * pt.x * pt.x - 4.0 * w1 * r * pt.x + w2 * r * r;
  }
  return out;
}

double profile_curvature(const ProfileTerms& t) {
  return t.hess_bb - t.hess_ab * t.hess_ab / t.hess_aa;
}

void check_x_spread(const MeasurementSeries& series) {
  const double x0 = series.points.front().x;
  const bool all_equal = std::all_of(series.points.begin(), series.points.end(),
                                     [x0](const MeasurementPoint& p) { return p.x == x0; });
  if (all_equal) throw InvalidArgument("degenerate design: all x values are equal");
}

// Safeguarded Newton on dS/db = 0 starting from b0. Returns the slope and the
// iteration count, or NaN if the iteration left every bracket it found.
std::pair<double, int> newton_slope(const MeasurementSeries& series, double b0, double scale) {
  double b = b0;
  double lo = -INFINITY, hi = INFINITY;
  for (int iter = 1; iter <= 200; ++iter) {
    const auto t = profile(series, b);
    if (t.grad_b > 0.0) hi = std::min(hi, b);
    if (t.grad_b < 0.0) lo = std::max(lo, b);
    if (t.grad_b == 0.0) return {b, iter};
    const double curv = profile_curvature(t);
    double next;
    if (curv > 0.0) {
      next = b - t.grad_b / curv;
    } else {
      next = b - std::copysign(0.1 * scale, t.grad_b);
    }
    if (!(next > lo && next < hi)) {
      if (std::isfinite(lo) && std::isfinite(hi)) {
        next = 0.5 * (lo + hi);
      } else {
        next = b - std::copysign(scale, t.grad_b);
      }
    }
    if (std::abs(next - b) <= 1e-14 * std::max(std::abs(b), 1e-6 * scale))
      return {next, iter};
    b = next;
  }
  return {std::numeric_limits<double>::quiet_NaN(), 200};
}

double stddev(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

LinearFit finish(const MeasurementSeries& series, double a, double b, double objective,
                 double haa, double hab, double hbb, int iterations) {
  const double det = haa * hbb - hab * hab;
  if (!(det > 0.0)) throw NumericalError("fit Hessian is not positive definite");
  LinearFit fit;
  fit.intercept = a;
  fit.slope = b;
  // cov = 2 H^-1
  fit.covariance = {{{2.0 * hbb / det, -2.0 * hab / det}, {-2.0 * hab / det, 2.0 * haa / det}}};
  fit.intercept_stderr = std::sqrt(fit.covariance[0][0]);
  fit.slope_stderr = std::sqrt(fit.covariance[1][1]);
  fit.objective = objective;
  fit.dof = static_cast<int>(series.points.size()) - 2;
  fit.reduced_chi2 = fit.dof > 0 ? objective / fit.dof : 0.0;
  fit.iterations = iterations;
  return fit;
}

}  // namespace

double odr_objective(const MeasurementSeries& series, double intercept, double slope) {
  double s = 0.0;
  for (const auto& pt : series.points) {
    const double r = pt.y - intercept - slope * pt.x;
    s += r * r / (pt.sigma_y * pt.sigma_y + slope * slope * pt.sigma_x * pt.sigma_x);
  }
  return s;
}

LinearFit wls_fit(const MeasurementSeries& series) {
  series.validate(2);
  check_x_spread(series);
  double s = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& pt : series.points) {
    const double w = 1.0 / (pt.sigma_y * pt.sigma_y);
    s += w;
    sx += w * pt.x;
    sy += w * pt.y;
    sxx += w * pt.x * pt.x;
    sxy += w * pt.x * pt.y;
  }
  const double delta = s * sxx - sx * sx;
  if (!(delta > 0.0)) throw InvalidArgument("degenerate design in weighted least squares");
  const double b = (s * sxy - sx * sy) / delta;
  const double a = (sxx * sy - sx * sxy) / delta;
  double chi2 = 0.0;
  for (const auto& pt : series.points) {
    const double r = (pt.y - a - b * pt.x) / pt.sigma_y;
    chi2 += r * r;
  }
  // H of sum w r^2 is 2 [[s, sx], [sx, sxx]].
  return finish(series, a, b, chi2, 2.0 * s, 2.0 * sx, 2.0 * sxx, 0);
}

LinearFit odr_fit(const MeasurementSeries& series) {
  series.validate(3);
  check_x_spread(series);

  std::vector<double> xs, ys;
  double mean_sx = 0.0, mean_sy = 0.0;
  for (const auto& pt : series.points) {
    xs.push_back(pt.x);
    ys.push_back(pt.y);
    mean_sx += pt.sigma_x;
    mean_sy += pt.sigma_y;
  }
  const double spread_x = stddev(xs);
  const double spread_y = stddev(ys);
  const double scale = spread_y > 0.0 ? spread_y / spread_x : mean_sy / mean_sx;

  // The profile objective has at most two stationary points; scan the slope
  // angle for the global basin, then polish from both the scan minimum and
  // the WLS start and keep the lower objective.
  const double wls_slope = wls_fit(series).slope;
  constexpr int scan_points = 721;
  double best_scan = wls_slope;
  double best_obj = profile(series, wls_slope).objective;
  for (int i = 1; i < scan_points; ++i) {
    const double angle = -0.5 * std::numbers::pi + std::numbers::pi * i / scan_points;
    const double b = scale * std::tan(angle);
    const double obj = profile(series, b).objective;
    if (obj < best_obj) {
      best_obj = obj;
      best_scan = b;
    }
  }

  double best_b = std::numeric_limits<double>::quiet_NaN();
  double best_val = INFINITY;
  int iterations = 0;
  for (double start : {wls_slope, best_scan}) {
    const auto [b, iters] = newton_slope(series, start, scale);
    iterations += iters;
    if (!std::isfinite(b)) continue;
    const double val = profile(series, b).objective;
    if (val < best_val) {
      best_val = val;
      best_b = b;
    }
  }
  if (!std::isfinite(best_b)) throw NumericalError("orthogonal distance regression did not converge");

  const auto t = profile(series, best_b);
  return finish(series, t.intercept, best_b, t.objective, t.hess_aa, t.hess_ab, t.hess_bb,
                iterations);
}

double student_t_quantile(int dof, double p) {
  if (dof < 1) throw InvalidArgument("student_t_quantile: dof must be >= 1");
  if (!(p > 0.0) || !(p < 1.0)) throw InvalidArgument("student_t_quantile: p must be in (0, 1)");
  boost::math::students_t dist(static_cast<double>(dof));
  return boost::math::quantile(dist, p);
}

Interval confidence_interval(const LinearFit& fit, FitParameter parameter, double level) {
  if (!(level > 0.0) || !(level < 1.0))
    throw InvalidArgument("confidence level must be in (0, 1)");
  const double t = student_t_quantile(fit.dof, 0.5 * (1.0 + level));
  const bool slope = parameter == FitParameter::slope;
  const double est = slope ? fit.slope : fit.intercept;
  const double se = slope ? fit.slope_stderr : fit.intercept_stderr;
  return {est, est - t * se, est + t * se};
}

}  // namespace gup
