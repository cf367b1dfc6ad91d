#pragma once

#include <vector>

#include "gup/deformation.hpp"

namespace gup {

/// A physical pendulum: bob mass (kg), effective length (m), local gravity (m/s^2).
struct PendulumConfig {
  double mass = 1.0;
  double length = 1.0;
  double gravity = 9.81;

  void validate() const;
  /// Small-angle angular frequency sqrt(g/L).
  double omega0() const;
  /// Small-angle period 2 pi sqrt(L/g).
  double harmonic_period() const;
};

struct TrajectorySample {
  double time = 0.0;
  double angle = 0.0;             // rad
  double angular_velocity = 0.0;  // rad/s
  double displacement = 0.0;      // L sin(angle), m
};

/// Period to first order in beta and in A^2:
/// 2 pi sqrt(L/g) (1 + A^2/(16 L^2) - beta m^2 g A^2 / (2 L)).
/// Throws InvalidArgument unless 0 <= amplitude < length.
double period_first_order(const PendulumConfig& pend, const DeformationParams& params,
                          double amplitude);
double period_first_order(const PendulumConfig& pend, double beta, double amplitude);

enum class PeriodIntegrand {
  /// The unexpanded half-period integral, with the (1 + 2 m^2 g L f beta) factor kept exactly.
  full,
  /// The beta << 1 simplification: the deformation term enters linearly.
  linearized,
};

/// Period from the half-cycle integral of the deformed equation of motion.
///
/// The integrand is split into the beta-independent part, which carries the
/// (cos(theta) - cos(phi))^-1/2 endpoint singularity, and a bounded part
/// proportional to beta. Substituting sin(theta/2) = sin(phi/2) sin(u)
/// makes both smooth on u in [-pi/2, pi/2]; each is integrated adaptively.
///
/// Requires 0 < angular_amplitude < pi/2 and rel_tol in (1e-14, 1e-3).
/// Throws NumericalError if the quadrature does not converge.
double period_exact_quadrature(const PendulumConfig& pend, double beta, double angular_amplitude,
                               double rel_tol = 1e-10,
                               PeriodIntegrand integrand = PeriodIntegrand::full);
double period_exact_quadrature(const PendulumConfig& pend, const DeformationParams& params,
                               double angular_amplitude, double rel_tol = 1e-10,
                               PeriodIntegrand integrand = PeriodIntegrand::full);

struct TrajectoryOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  /// Half-width (rad) of the band below |theta| = phi where the second-order
  /// form is integrated instead of the first-order one.
  double turning_window = 1e-6;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::vector<double> zero_crossings;  // times where theta = 0
  std::vector<double> turning_times;   // times where theta' = 0
  std::vector<double> turning_angles;  // theta at those times

  /// Mean full period from zero crossings two apart. Throws NumericalError
  /// when fewer than three crossings were recorded.
  double period_from_crossings() const;
};

/// Integrates theta' = -cos(theta) sqrt(2 (g/L) f(theta)) (1 + 2 m^2 g L f(theta) beta),
/// f(theta) = (cos(theta) - cos(phi)) / cos^2(theta), from the turning point
/// theta(0) = phi. The sign of theta' flips at each turning point; inside the
/// turning window the differentiated (second-order) equation is used since the
/// first-order right-hand side is not Lipschitz at |theta| = phi.
Trajectory integrate_trajectory(const PendulumConfig& pend, double beta, double angular_amplitude,
                                double t_end, const TrajectoryOptions& options = {});

/// Hamiltonian p^2 cos^2(theta) / (2m) - m g L cos(theta) evaluated from
/// (theta, theta'), with p recovered from L cos(theta) theta' = cos^2(theta) p (1 + beta p^2) / m.
double deformed_energy(const PendulumConfig& pend, double beta, double angle,
                       double angular_velocity);

/// Frequency shift of a deformed harmonic oscillator, beta m^2 omega^3 A^2 / 2.
double harmonic_frequency_shift(double mass, double omega, double amplitude,
                                const DeformationParams& params);
double harmonic_frequency_shift(double mass, double omega, double amplitude, double beta);

struct OscillatorSample {
  double time = 0.0;
  double position = 0.0;
  double momentum = 0.0;
};

/// Classical harmonic oscillator under the deformed bracket {x, p} = 1 + beta p^2:
/// x' = p (1 + beta p^2) / m, p' = -m omega^2 x (1 + beta p^2), from rest at x = amplitude.
/// Returns samples at `n_samples` equally spaced times in [0, t_end].
std::vector<OscillatorSample> integrate_oscillator(double mass, double omega, double beta,
                                                   double amplitude, double t_end,
                                                   std::size_t n_samples, double rel_tol = 1e-12);

}  // namespace gup
