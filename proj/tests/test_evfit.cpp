#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "gup/errors.hpp"
#include "gup/evfit.hpp"
#include "oracles.hpp"

using namespace gup;

namespace {

MeasurementSeries noisy_line(double a, double b, double sx, double sy, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MeasurementSeries s;
  for (int i = 0; i < n; ++i) {
    const double xi = 0.5 * i;
    s.points.push_back({xi + sx * gauss(rng), sx, a + b * xi + sy * gauss(rng), sy});
  }
  return s;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  for (int i = 0; i < 200; ++i) {
    if (f(c) < f(d)) {
      hi = d;
    } else {
      lo = c;
    }
    c = hi - g * (hi - lo);
    d = lo + g * (hi - lo);
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("ODR matches a nested brute-force minimisation") {
  const auto s = noisy_line(1.0, 2.0, 0.2, 0.3, 15, 7);
  const auto fit = odr_fit(s);
  auto best_a = [&](double b) {
    return golden_min([&](double a) { return odr_objective(s, a, b); }, -20.0, 20.0);
  };
  const double b = golden_min([&](double bb) { return odr_objective(s, best_a(bb), bb); }, 0.0, 5.0);
  const double a = best_a(b);
  CHECK(fit.slope == doctest::Approx(b).epsilon(1e-6));
  CHECK(fit.intercept == doctest::Approx(a).epsilon(1e-6));
  CHECK(fit.objective <= odr_objective(s, a, b) + 1e-12);
  CHECK(fit.objective == doctest::Approx(odr_objective(s, fit.intercept, fit.slope)).epsilon(1e-14));
  CHECK(fit.dof == 13);
  CHECK(fit.reduced_chi2 == doctest::Approx(fit.objective / 13.0));
}

TEST_CASE("ODR covariance is twice the inverse finite-difference Hessian") {
  const auto s = noisy_line(-0.5, 0.8, 0.1, 0.2, 12, 3);
  const auto fit = odr_fit(s);
  const double ha = 1e-4, hb = 1e-5;
  auto S = [&](double a, double b) { return odr_objective(s, a, b); };
  const double a0 = fit.intercept, b0 = fit.slope;
  const double haa = (S(a0 + ha, b0) - 2 * S(a0, b0) + S(a0 - ha, b0)) / (ha * ha);
  const double hbb = (S(a0, b0 + hb) - 2 * S(a0, b0) + S(a0, b0 - hb)) / (hb * hb);
  const double hab = (S(a0 + ha, b0 + hb) - S(a0 + ha, b0 - hb) - S(a0 - ha, b0 + hb) +
                      S(a0 - ha, b0 - hb)) / (4 * ha * hb);
  const double det = haa * hbb - hab * hab;
  CHECK(fit.covariance[0][0] == doctest::Approx(2 * hbb / det).epsilon(1e-5));
  CHECK(fit.covariance[1][1] == doctest::Approx(2 * haa / det).epsilon(1e-5));
  CHECK(fit.covariance[0][1] == doctest::Approx(-2 * hab / det).epsilon(1e-5));
  CHECK(fit.covariance[0][1] == fit.covariance[1][0]);
  CHECK(fit.slope_stderr == doctest::Approx(std::sqrt(fit.covariance[1][1])));
  // The profiled gradient vanishes at the optimum.
  CHECK(std::abs(oracle::derivative([&](double b) { return S(a0, b); }, b0, 1e-6)) < 1e-6 * fit.objective + 1e-9);
}

TEST_CASE("ODR is symmetric under swapping the axes") {
  const auto s = noisy_line(2.0, 1.5, 0.3, 0.2, 20, 11);
  MeasurementSeries swapped;
  for (const auto& p : s.points) swapped.points.push_back({p.y, p.sigma_y, p.x, p.sigma_x});
  const auto f = odr_fit(s);
  const auto g = odr_fit(swapped);
  CHECK(g.slope == doctest::Approx(1.0 / f.slope).epsilon(1e-9));
  CHECK(g.intercept == doctest::Approx(-f.intercept / f.slope).epsilon(1e-9));
  CHECK(g.objective == doctest::Approx(f.objective).epsilon(1e-9));
}

TEST_CASE("ODR reduces to weighted least squares when x errors vanish") {
  auto s = noisy_line(1.0, -3.0, 1e-9, 0.5, 10, 5);
  const auto odr = odr_fit(s);
  const auto wls = wls_fit(s);
  CHECK(odr.slope == doctest::Approx(wls.slope).epsilon(1e-9));
  CHECK(odr.intercept == doctest::Approx(wls.intercept).epsilon(1e-9));
  CHECK(odr.slope_stderr == doctest::Approx(wls.slope_stderr).epsilon(1e-6));
}

TEST_CASE("exact data gives a zero objective") {
  MeasurementSeries s;
  for (int i = 0; i < 5; ++i) s.points.push_back({double(i), 0.1, 3.0 - 2.0 * i, 0.1});
  const auto f = odr_fit(s);
  CHECK(f.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.objective < 1e-20);
}

TEST_CASE("rescaling every sigma leaves the estimates unchanged") {
  const auto s = noisy_line(0.3, 0.7, 0.05, 0.1, 9, 2);
  auto scaled = s;
  for (auto& p : scaled.points) {
    p.sigma_x *= 3.0;
    p.sigma_y *= 3.0;
  }
  const auto f = odr_fit(s);
  const auto g = odr_fit(scaled);
  CHECK(g.slope == doctest::Approx(f.slope).epsilon(1e-10));
  CHECK(g.intercept == doctest::Approx(f.intercept).epsilon(1e-10));
  CHECK(g.objective == doctest::Approx(f.objective / 9.0).epsilon(1e-10));
  // Covariance is not rescaled by chi^2, so standard errors follow the sigmas.
  CHECK(g.slope_stderr == doctest::Approx(3.0 * f.slope_stderr).epsilon(1e-8));
}

TEST_CASE("degenerate inputs are rejected") {
  MeasurementSeries two{{{0, 1, 0, 1}, {1, 1, 1, 1}}};
  CHECK_THROWS_AS(odr_fit(two), InvalidArgument);
  CHECK_NOTHROW(wls_fit(two));
  MeasurementSeries same_x{{{1, 1, 0, 1}, {1, 1, 1, 1}, {1, 1, 2, 1}}};
  CHECK_THROWS_AS(odr_fit(same_x), InvalidArgument);
  MeasurementSeries bad_sigma{{{0, 1, 0, 1}, {1, 0, 1, 1}, {2, 1, 2, 1}}};
  CHECK_THROWS_AS(odr_fit(bad_sigma), InvalidArgument);
  MeasurementSeries nan_value{{{0, 1, 0, 1}, {1, 1, NAN, 1}, {2, 1, 2, 1}}};
  CHECK_THROWS_AS(odr_fit(nan_value), InvalidArgument);
}

TEST_CASE("Student t quantiles") {
  CHECK(student_t_quantile(1, 0.975) == doctest::Approx(12.706204736).epsilon(1e-9));
  CHECK(student_t_quantile(10, 0.95) == doctest::Approx(1.812461123).epsilon(1e-9));
  CHECK(student_t_quantile(19, 0.975) == doctest::Approx(2.093024054).epsilon(1e-9));
  CHECK(student_t_quantile(5, 0.5) == doctest::Approx(0.0));
  CHECK(student_t_quantile(7, 0.1) == doctest::Approx(-student_t_quantile(7, 0.9)));
  for (double p : {0.6, 0.9, 0.975, 0.999})
    CHECK(student_t_quantile(1000000, p) == doctest::Approx(oracle::normal_quantile(p)).epsilon(1e-5));
  CHECK_THROWS_AS(student_t_quantile(0, 0.9), InvalidArgument);
  CHECK_THROWS_AS(student_t_quantile(3, 1.0), InvalidArgument);
}

TEST_CASE("confidence intervals") {
  LinearFit f;
  f.slope = 2.0;
  f.slope_stderr = 0.5;
  f.intercept = -1.0;
  f.intercept_stderr = 0.25;
  f.dof = 19;
  const auto ci = confidence_interval(f, FitParameter::slope, 0.95);
  CHECK(ci.estimate == 2.0);
  CHECK(ci.half_width() == doctest::Approx(0.5 * 2.093024054).epsilon(1e-9));
  CHECK(ci.lower == doctest::Approx(2.0 - ci.half_width()));
  const auto ic = confidence_interval(f, FitParameter::intercept, 0.6827);
  CHECK(ic.upper - ic.estimate == doctest::Approx(ic.estimate - ic.lower));
  CHECK_THROWS_AS(confidence_interval(f, FitParameter::slope, 1.0), InvalidArgument);
  CHECK_THROWS_AS(confidence_interval(f, FitParameter::slope, 0.0), InvalidArgument);
}
