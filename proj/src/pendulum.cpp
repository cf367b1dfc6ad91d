#include "gup/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gup/errors.hpp"
#include "gup/ode.hpp"
#include "gup/quadrature.hpp"

namespace gup {

void PendulumConfig::validate() const {
  if (!(mass > 0.0) || !(length > 0.0) || !(gravity > 0.0))
    throw InvalidArgument("pendulum mass, length and gravity must be positive");
}

double PendulumConfig::omega0() const { return std::sqrt(gravity / length); }

double PendulumConfig::harmonic_period() const {
  return 2.0 * std::numbers::pi * std::sqrt(length / gravity);
}

double period_first_order(const PendulumConfig& pend, double beta, double amplitude) {
  pend.validate();
  if (!(amplitude >= 0.0) || !(amplitude < pend.length))
    throw InvalidArgument("period_first_order: amplitude must satisfy 0 <= A < L");
  if (beta < 0.0) throw InvalidArgument("period_first_order: beta must be >= 0");
  const double a2 = amplitude * amplitude;
  const double L = pend.length;
  return pend.harmonic_period() *
         (1.0 + a2 / (16.0 * L * L) - beta * pend.mass * pend.mass * pend.gravity * a2 / (2.0 * L));
}

double period_first_order(const PendulumConfig& pend, const DeformationParams& params,
                          double amplitude) {
  return period_first_order(pend, effective_beta(params), amplitude);
}

double period_exact_quadrature(const PendulumConfig& pend, double beta, double angular_amplitude,
                               double rel_tol, PeriodIntegrand integrand) {
  pend.validate();
  const double phi = angular_amplitude;
  if (!(phi > 0.0) || !(phi < std::numbers::pi / 2))
    throw InvalidArgument("period_exact_quadrature: angular amplitude must be in (0, pi/2)");
  if (!(rel_tol > 1e-14) || !(rel_tol < 1e-3))
    throw InvalidArgument("period_exact_quadrature: rel_tol must be in (1e-14, 1e-3)");
  if (beta < 0.0) throw InvalidArgument("period_exact_quadrature: beta must be >= 0");

  // sin(theta/2) = k sin(u): cos(theta) - cos(phi) = 2 k^2 cos^2(u) and
  // d(theta) / sqrt(cos(theta) - cos(phi)) = sqrt(2) du / sqrt(1 - k^2 sin^2(u)).
  const double k = std::sin(0.5 * phi);
  const double k2 = k * k;
  const double kappa = 2.0 * pend.mass * pend.mass * pend.gravity * pend.length * beta;
  const double prefactor = 2.0 * std::sqrt(pend.length / pend.gravity);
  const double half_pi = 0.5 * std::numbers::pi;

  // Both integrands are even in u, so integrate [0, pi/2] and double.
  auto singular = [k2](double u) {
    const double s = std::sin(u);
    return 1.0 / std::sqrt(1.0 - k2 * s * s);
  };
  const auto sing = integrate_adaptive(singular, 0.0, half_pi, 0.5 * rel_tol);
  const double t_singular = 2.0 * prefactor * sing.value;
  if (kappa == 0.0) return t_singular;

  auto remainder = [=](double u) {
    const double s = std::sin(u);
    const double c = std::cos(u);
    const double cos_theta = 1.0 - 2.0 * k2 * s * s;
    const double f = 2.0 * k2 * c * c / (cos_theta * cos_theta);
    const double kf = kappa * f;
    const double denom = integrand == PeriodIntegrand::full ? (1.0 + kf) : 1.0;
    return kf / (denom * std::sqrt(1.0 - k2 * s * s));
  };
  const auto rem = integrate_adaptive(remainder, 0.0, half_pi, 0.5 * rel_tol,
                                      0.25 * rel_tol * sing.value);
  return t_singular - 2.0 * prefactor * rem.value;
}

double period_exact_quadrature(const PendulumConfig& pend, const DeformationParams& params,
                               double angular_amplitude, double rel_tol,
                               PeriodIntegrand integrand) {
  return period_exact_quadrature(pend, effective_beta(params), angular_amplitude, rel_tol,
                                 integrand);
}

namespace {

// Cubic Hermite interpolant on [t0, t1] used to seed event refinement.
double hermite(double t0, double y0, double d0, double t1, double y1, double d1, double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * h * d1;
}

double hermite_root(double t0, double y0, double d0, double t1, double y1, double d1) {
  double lo = t0, hi = t1;
  double flo = y0;
  for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = hermite(t0, y0, d0, t1, y1, d1, mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct EventPoint {
  double t;
  std::vector<double> y;
  std::vector<double> dy;
};

void advance_to(DormandPrince45& stepper, double& t, std::vector<double>& y, double target) {
  double h = target - t;
  while (target - t > 1e-15 * std::max(1.0, std::abs(target))) stepper.step(t, y, h, target - t);
}

// Locate y[idx] = 0 inside an accepted step [t0, t1] by Newton iteration on
// the integrated solution, seeded from the Hermite interpolant.
EventPoint refine_event(const DormandPrince45& proto, double t0, const std::vector<double>& y0,
                        const std::vector<double>& d0, double t1, const std::vector<double>& y1,
                        const std::vector<double>& d1, std::size_t idx) {
  double guess = hermite_root(t0, y0[idx], d0[idx], t1, y1[idx], d1[idx]);
  EventPoint ev{guess, y0, d0};
  for (int iter = 0; iter < 6; ++iter) {
    DormandPrince45 stepper = proto;
    double t = t0;
    std::vector<double> y = y0;
    stepper.reset(t, y);
    advance_to(stepper, t, y, guess);
    ev = {guess, y, stepper.derivative()};
    const double slope = ev.dy[idx];
    if (slope == 0.0) break;
    const double next = std::clamp(guess - y[idx] / slope, t0, t1);
    const bool done = std::abs(next - guess) <= 1e-15 * std::max(1.0, std::abs(guess));
    guess = next;
    if (done) break;
  }
  return ev;
}

}  // namespace

double Trajectory::period_from_crossings() const {
  if (zero_crossings.size() < 3)
    throw NumericalError("trajectory has fewer than three zero crossings");
  const std::size_t n = zero_crossings.size();
  return 2.0 * (zero_crossings[n - 1] - zero_crossings[0]) / static_cast<double>(n - 1);
}

Trajectory integrate_trajectory(const PendulumConfig& pend, double beta, double angular_amplitude,
                                double t_end, const TrajectoryOptions& options) {
  pend.validate();
  const double phi = angular_amplitude;
  const double window = options.turning_window;
  if (!(phi < std::numbers::pi / 2) || !(phi > 10.0 * window))
    throw InvalidArgument("integrate_trajectory: angular amplitude must be in (10 window, pi/2)");
  if (!(t_end > 0.0)) throw InvalidArgument("integrate_trajectory: t_end must be positive");
  if (beta < 0.0) throw InvalidArgument("integrate_trajectory: beta must be >= 0");

  const double w2 = pend.gravity / pend.length;
  const double kappa = 2.0 * pend.mass * pend.mass * pend.gravity * pend.length * beta;
  const double cos_phi = std::cos(phi);

  auto speed = [=](double theta) {
    const double c = std::cos(theta);
    const double d = std::max(c - cos_phi, 0.0);
    return std::sqrt(2.0 * w2 * d) * (1.0 + kappa * d / (c * c));
  };
  // theta'' = V'(theta) / 2 with V = theta'^2 = 2 (g/L) (cos - cos phi) (1 + kappa f)^2.
  auto accel = [=](double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double d = c - cos_phi;
    const double f = d / (c * c);
    const double fp = s * (c - 2.0 * cos_phi) / (c * c * c);
    const double q = 1.0 + kappa * f;
    return w2 * (-s * q * q + 2.0 * d * q * kappa * fp);
  };

  double sign = -1.0;
  DormandPrince45 first(
      [&sign, speed](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = sign * speed(y[0]);
      },
      1, options.rel_tol, options.abs_tol);
  DormandPrince45 second(
      [accel](double, std::span<const double> y, std::span<double> dy) {
        dy[0] = y[1];
        dy[1] = accel(y[0]);
      },
      2, options.rel_tol, options.abs_tol);

  Trajectory out;
  auto record = [&](double t, double theta, double theta_dot) {
    out.samples.push_back({t, theta, theta_dot, pend.length * std::sin(theta)});
  };

  double t = 0.0;
  double theta = phi;
  double theta_dot = 0.0;
  double h = 1e-3 * 2.0 * std::numbers::pi / pend.omega0();
  bool near_turn = true;
  record(t, theta, theta_dot);
  out.turning_times.push_back(0.0);
  out.turning_angles.push_back(phi);

  while (t_end - t > 1e-15 * t_end) {
    if (near_turn) {
      std::vector<double> y = {theta, theta_dot};
      second.reset(t, y);
      while (t_end - t > 1e-15 * t_end) {
        const double t0 = t;
        const std::vector<double> y0 = y;
        const std::vector<double> d0 = second.derivative();
        second.step(t, y, h, t_end - t);
        if (y0[1] * y[1] < 0.0) {
          const auto ev = refine_event(second, t0, y0, d0, t, y, second.derivative(), 1);
          out.turning_times.push_back(ev.t);
          out.turning_angles.push_back(ev.y[0]);
        }
        if (y0[0] * y[0] < 0.0) {
          out.zero_crossings.push_back(
              refine_event(second, t0, y0, d0, t, y, second.derivative(), 0).t);
        }
        record(t, y[0], y[1]);
        if (phi - std::abs(y[0]) >= window && y[0] * y[1] < 0.0) {
          sign = y[1] > 0.0 ? 1.0 : -1.0;
          near_turn = false;
          break;
        }
      }
      theta = y[0];
      theta_dot = y[1];
    } else {
      std::vector<double> y = {theta};
      first.reset(t, y);
      double h_cap = t_end - t;
      while (t_end - t > 1e-15 * t_end) {
        const double t0 = t;
        const std::vector<double> y0 = y;
        const std::vector<double> d0 = first.derivative();
        double t1 = t;
        std::vector<double> y1 = y;
        double h1 = h;
        first.step(t1, y1, h1, std::min(h_cap, t_end - t));
        if (std::abs(y1[0]) > phi) {
          // Overshot the turning band: retry the step shorter.
          h_cap = 0.5 * (t1 - t0);
          h = std::min(h, h_cap);
          first.reset(t0, y0);
          continue;
        }
        t = t1;
        y = y1;
        h = h1;
        h_cap = t_end - t;
        if (y0[0] * y[0] < 0.0) {
          out.zero_crossings.push_back(
              refine_event(first, t0, y0, d0, t, y, first.derivative(), 0).t);
        }
        record(t, y[0], sign * speed(y[0]));
        if (phi - std::abs(y[0]) < window) {
          near_turn = true;
          break;
        }
      }
      theta = y[0];
      theta_dot = sign * speed(theta);
    }
  }
  return out;
}

double deformed_energy(const PendulumConfig& pend, double beta, double angle,
                       double angular_velocity) {
  pend.validate();
  const double c = std::cos(angle);
  // Solve p (1 + beta p^2) = q for the kinetic momentum; the left side is monotone.
  const double q = pend.mass * pend.length * angular_velocity / c;
  double p = q;
  if (beta > 0.0 && q != 0.0) {
    double lo = q > 0 ? 0.0 : q, hi = q > 0 ? q : 0.0;
    p = std::abs(q) * std::sqrt(beta) < 1.0 ? q : std::cbrt(q / beta);
    for (int i = 0; i < 100; ++i) {
      const double g = p * (1.0 + beta * p * p) - q;
      if (g > 0) hi = p; else lo = p;
      double next = p - g / (1.0 + 3.0 * beta * p * p);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - p) <= 1e-16 * std::abs(p)) {
        p = next;
        break;
      }
      p = next;
    }
  }
  return p * p * c * c / (2.0 * pend.mass) - pend.mass * pend.gravity * pend.length * c;
}

double harmonic_frequency_shift(double mass, double omega, double amplitude, double beta) {
  return 0.5 * beta * mass * mass * omega * omega * omega * amplitude * amplitude;
}

double harmonic_frequency_shift(double mass, double omega, double amplitude,
                                const DeformationParams& params) {
  return harmonic_frequency_shift(mass, omega, amplitude, effective_beta(params));
}

std::vector<OscillatorSample> integrate_oscillator(double mass, double omega, double beta,
                                                   double amplitude, double t_end,
                                                   std::size_t n_samples, double rel_tol) {
  if (!(mass > 0.0) || !(omega > 0.0)) throw InvalidArgument("integrate_oscillator: mass and omega must be positive");
  if (!(t_end > 0.0) || n_samples < 2) throw InvalidArgument("integrate_oscillator: need t_end > 0 and >= 2 samples");
  if (beta < 0.0) throw InvalidArgument("integrate_oscillator: beta must be >= 0");
  const double m_omega2 = mass * omega * omega;
  const double p_scale = mass * omega * std::abs(amplitude);
  DormandPrince45 stepper(
      [=](double, std::span<const double> y, std::span<double> dy) {
        const double g = 1.0 + beta * y[1] * y[1];
        dy[0] = y[1] * g / mass;
        dy[1] = -m_omega2 * y[0] * g;
      },
      2, rel_tol, 1e-3 * rel_tol * std::max(std::abs(amplitude), p_scale));
  std::vector<double> y = {amplitude, 0.0};
  double t = 0.0;
  stepper.reset(t, y);
  std::vector<OscillatorSample> out;
  out.reserve(n_samples);
  out.push_back({0.0, y[0], y[1]});
  for (std::size_t i = 1; i < n_samples; ++i) {
    const double target = t_end * static_cast<double>(i) / static_cast<double>(n_samples - 1);
    advance_to(stepper, t, y, target);
    out.push_back({target, y[0], y[1]});
  }
  return out;
}

}  // namespace gup
