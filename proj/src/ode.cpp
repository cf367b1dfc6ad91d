#include "gup/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gup/errors.hpp"

namespace gup {
namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// 5th minus 4th order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

DormandPrince45::DormandPrince45(OdeRhs rhs, std::size_t dim, double rel_tol, double abs_tol)
    : rhs_(std::move(rhs)), dim_(dim), rel_tol_(rel_tol), abs_tol_(abs_tol),
      k1_(dim), k2_(dim), k3_(dim), k4_(dim), k5_(dim), k6_(dim), k7_(dim), ytmp_(dim), ynew_(dim) {}

void DormandPrince45::reset(double t, std::span<const double> y) { rhs_(t, y, k1_); }

void DormandPrince45::step(double& t, std::vector<double>& y, double& h, double h_max) {
  const double h_min = 1e-14 * std::max(1.0, std::abs(t));
  h = std::min(h, h_max);
  for (;;) {
    if (h < h_min) throw NumericalError("ODE step size underflow at t = " + std::to_string(t));
    for (std::size_t i = 0; i < dim_; ++i) ytmp_[i] = y[i] + h * a21 * k1_[i];
    rhs_(t + c2 * h, ytmp_, k2_);
    for (std::size_t i = 0; i < dim_; ++i) ytmp_[i] = y[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
    rhs_(t + c3 * h, ytmp_, k3_);
    for (std::size_t i = 0; i < dim_; ++i)
      ytmp_[i] = y[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
    rhs_(t + c4 * h, ytmp_, k4_);
    for (std::size_t i = 0; i < dim_; ++i)
      ytmp_[i] = y[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
    rhs_(t + c5 * h, ytmp_, k5_);
    for (std::size_t i = 0; i < dim_; ++i)
      ytmp_[i] = y[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] +
                             a65 * k5_[i]);
    rhs_(t + h, ytmp_, k6_);
    for (std::size_t i = 0; i < dim_; ++i)
      ynew_[i] = y[i] + h * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] +
                             a76 * k6_[i]);
    rhs_(t + h, ynew_, k7_);

    double err = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double ei = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] +
                             e6 * k6_[i] + e7 * k7_[i]);
      const double scale = abs_tol_ + rel_tol_ * std::max(std::abs(y[i]), std::abs(ynew_[i]));
      const double q = std::abs(ei) / scale;
      if (!(q <= err)) err = q;  // keeps NaN
    }
    if (!std::isfinite(err)) {
      h *= 0.25;
      continue;
    }
    if (err <= 1.0) {
      t += h;
      y = ynew_;
      std::swap(k1_, k7_);
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= fac;
      return;
    }
    h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
  }
}

}  // namespace gup
