#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "gup/constants.hpp"
#include "gup/evfit.hpp"
#include "gup/pendulum.hpp"

namespace gup {

/// Admissible interval for the composite beta0 / N^alpha.
struct RatioBound {
  double lower = 0.0;
  double upper = 0.0;
};

struct LengthEstimate {
  double value = 0.0;  // m
  double sigma = 0.0;  // m
};

/// L = g (T0 / 2 pi)^2 with sigma_L = 2 L sigma_T0 / T0.
LengthEstimate derived_length(double t0, double gravity, double sigma_t0 = 0.0);

/// Period slope with respect to A^2 is classical - deformation * (beta0 / N^alpha).
struct SlopeCoefficients {
  double classical = 0.0;    // 2 pi sqrt(L/g) / (16 L^2), s/m^2
  double deformation = 0.0;  // 2 pi sqrt(L/g) m^2 g / (2 (M_p c)^2 L), s/m^2
};

SlopeCoefficients slope_coefficients(const PendulumConfig& pend,
                                     double planck_mass = constants::planck_mass,
                                     double light_speed = constants::light_speed);

double theoretical_slope(const PendulumConfig& pend, double ratio);

/// Ratio beta0 / N^alpha implied by a measured slope.
double ratio_from_slope(const PendulumConfig& pend, double slope);

/// Inverts the theoretical slope over the confidence interval of the fitted
/// slope. Throws InvalidArgument if the deformation coefficient is not positive.
RatioBound ratio_bound_from_fit(const LinearFit& fit, const PendulumConfig& pend,
                                double level = 0.95);

/// Mass over the atomic mass unit.
double nucleon_count(double mass);

/// Smallest admissible alpha at given beta0 for beta0 N^-alpha < upper:
/// (ln beta0 - ln upper) / ln N. Throws InvalidArgument for N <= 1 or
/// non-positive upper / beta0.
double alpha_bound(double upper, double n_particles, double beta0);

/// Rounds to one significant figure (0.0095 -> 0.01).
double round_one_significant(double value);

enum class ExcludedSide { below, above };

struct BoundaryPoint {
  double beta0 = 0.0;
  double alpha = 0.0;
};

/// The line beta0 N^-alpha = upper in the (beta0, alpha) plane. Parameters
/// below the line would have produced an observable signal.
struct ExclusionBoundary {
  std::vector<BoundaryPoint> points;
  ExcludedSide excluded_side = ExcludedSide::below;
};

/// n points log-spaced over [lo, hi] (n = 1 gives {lo}).
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// Throws InvalidArgument on an empty grid or invalid (upper, N).
ExclusionBoundary exclusion_boundary(double upper, double n_particles,
                                     std::span<const double> beta0_grid);

/// Same line, parametrised by its value at beta0 = 1:
/// alpha(beta0) = alpha_at_unit + ln beta0 / ln N. The point at beta0 = 1 is
/// alpha_at_unit exactly.
ExclusionBoundary exclusion_boundary_from_alpha(double alpha_at_unit, double n_particles,
                                                std::span<const double> beta0_grid);

/// Oscillation frequency of a diamagnetically levitated body in a uniform
/// field gradient, sqrt(chi_v / (rho mu_0)) dB/dx. Reported in the same
/// units the registry uses for omega (no 2 pi conversion).
double levitation_frequency(double density, double susceptibility, double gradient);

struct LevitationParams {
  double mass = 0.0;       // kg
  double omega = 0.0;      // as returned by levitation_frequency
  double amplitude = 0.0;  // m
  double damping = 0.0;    // gamma
  double n_measurements = 1.0;
  /// Replaces gamma / sqrt(N_m) when positive.
  double delta_omega_override = 0.0;
};

/// Resolvable frequency shift, gamma / sqrt(N_m) or the override.
double levitation_delta_omega_max(const LevitationParams& params);

/// Largest beta0 / N^alpha compatible with no observed shift:
/// delta_omega_max 2 (M_p c)^2 / (m^2 omega^3 A^2).
double levitation_ratio_bound(const LevitationParams& params);

/// Output light field after the optomechanical interaction,
/// xi exp(-i 2 lambda^2 N_p - i (4/3) beta hbar m omega lambda^4 N_p^3 + i beta lambda^2 N_p 2 <p>^2).
std::complex<double> optomech_field(std::complex<double> xi, double coupling, double n_photons,
                                    double beta, double mass, double omega, double p_mean,
                                    double hbar = constants::hbar);

/// Signed deformation part of the optical phase.
double optomech_qg_phase(double coupling, double n_photons, double beta, double mass,
                         double omega, double p_mean, double hbar = constants::hbar);

/// (4/3) beta hbar m omega lambda^4 N_p^3 + 2 beta lambda^2 N_p <p>^2, the
/// phase budget compared against the measurement resolution.
double optomech_qg_phase_magnitude(double coupling, double n_photons, double beta, double mass,
                                   double omega, double p_mean, double hbar = constants::hbar);

/// lambda = 4 F / lambda_L sqrt(hbar / (m omega)).
double optomech_coupling(double finesse, double wavelength, double mass, double omega,
                         double hbar = constants::hbar);

struct OptomechParams {
  double finesse = 0.0;
  double wavelength = 0.0;  // m
  double mass = 0.0;        // kg
  double omega = 0.0;       // rad/s
  double n_photons = 0.0;
  double p_mean = 0.0;      // kg m/s
  double hbar = constants::hbar;
};

/// Largest beta0 / N^alpha whose phase stays below `phase_resolution`.
/// A zero resolution gives 0, an infinite one gives +inf.
double optomech_ratio_bound(double phase_resolution, const OptomechParams& params);

struct OptomechScanPoint {
  double mass = 0.0;
  double ground_term = 0.0;    // (4/3) beta hbar m omega lambda^4 N_p^3
  double momentum_term = 0.0;  // 2 beta lambda^2 N_p <p>^2
};

/// How <p> changes when the oscillator mass is scanned.
enum class MomentumConvention {
  /// <p> stays at params.p_mean.
  fixed_momentum,
  /// <p> = m v with v = params.p_mean / params.mass.
  fixed_velocity,
};

/// The two deformation phase terms as the oscillator mass varies with every
/// other parameter held fixed, at the given beta. The coupling is recomputed
/// for each mass. The ground term scales as 1/m; the momentum term as 1/m
/// under fixed_momentum and as m under fixed_velocity.
std::vector<OptomechScanPoint> optomech_mass_scan(const OptomechParams& params, double beta,
                                                  std::span<const double> masses,
                                                  MomentumConvention convention =
                                                      MomentumConvention::fixed_momentum);

/// A literature bound on alpha at beta0 = 1 with the (B, N) pair that
/// reproduces it. `inferred` marks values not stated for the cited experiment.
struct LiteratureBound {
  std::string label;
  double alpha_min = 0.0;
  double ratio_upper = 0.0;
  double n_particles = 0.0;
  bool inferred = false;
};

std::vector<LiteratureBound> literature_bounds();

}  // namespace gup
