#include "gup/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gup/errors.hpp"
#include "gup/parallel.hpp"

namespace gup {

LengthEstimate derived_length(double t0, double gravity, double sigma_t0) {
  if (!(t0 > 0.0) || !(gravity > 0.0)) throw InvalidArgument("derived_length: T0 and g must be positive");
  const double r = t0 / (2.0 * std::numbers::pi);
  const double length = gravity * r * r;
  return {length, 2.0 * length * sigma_t0 / t0};
}

SlopeCoefficients slope_coefficients(const PendulumConfig& pend, double planck_mass,
                                     double light_speed) {
  pend.validate();
  const double t0 = pend.harmonic_period();
  const double L = pend.length;
  const double pc = planck_mass * light_speed;
  return {t0 / (16.0 * L * L), t0 * pend.mass * pend.mass * pend.gravity / (2.0 * pc * pc * L)};
}

double theoretical_slope(const PendulumConfig& pend, double ratio) {
  const auto c = slope_coefficients(pend);
  return c.classical - c.deformation * ratio;
}

double ratio_from_slope(const PendulumConfig& pend, double slope) {
  const auto c = slope_coefficients(pend);
  if (!(c.deformation > 0.0)) throw InvalidArgument("deformation slope coefficient must be positive");
  return (c.classical - slope) / c.deformation;
}

RatioBound ratio_bound_from_fit(const LinearFit& fit, const PendulumConfig& pend, double level) {
  const auto ci = confidence_interval(fit, FitParameter::slope, level);
  // The slope decreases with the ratio, so the interval ends swap.
  return {ratio_from_slope(pend, ci.upper), ratio_from_slope(pend, ci.lower)};
}

double nucleon_count(double mass) {
  if (!(mass > 0.0)) throw InvalidArgument("nucleon_count: mass must be positive");
  return mass / constants::atomic_mass_unit;
}

double alpha_bound(double upper, double n_particles, double beta0) {
  if (!(n_particles > 1.0)) throw InvalidArgument("alpha_bound: N must exceed 1");
  if (!(upper > 0.0) || !(beta0 > 0.0))
    throw InvalidArgument("alpha_bound: upper bound and beta0 must be positive");
  if (std::isinf(upper)) return -std::numeric_limits<double>::infinity();
  return (std::log(beta0) - std::log(upper)) / std::log(n_particles);
}

double round_one_significant(double value) {
  if (value == 0.0 || !std::isfinite(value)) return value;
  const double exponent = std::floor(std::log10(std::abs(value)));
  const double scale = std::pow(10.0, exponent);
  return std::round(value / scale) * scale;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (!(lo > 0.0) || !(hi >= lo)) throw InvalidArgument("log_grid: need 0 < lo <= hi");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double llo = std::log10(lo), lhi = std::log10(hi);
  const double span = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    // Weighted form keeps integer decades exact (10^0 is exactly 1).
    const double k = static_cast<double>(i);
    out[i] = std::pow(10.0, (llo * (span - k) + lhi * k) / span);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

ExclusionBoundary exclusion_boundary(double upper, double n_particles,
                                     std::span<const double> beta0_grid) {
  if (beta0_grid.empty()) throw InvalidArgument("exclusion_boundary: empty beta0 grid");
  const auto alphas = kernels::parallel::alpha_grid(upper, n_particles, beta0_grid);
  ExclusionBoundary out;
  out.points.reserve(beta0_grid.size());
  for (std::size_t i = 0; i < beta0_grid.size(); ++i) out.points.push_back({beta0_grid[i], alphas[i]});
  return out;
}

ExclusionBoundary exclusion_boundary_from_alpha(double alpha_at_unit, double n_particles,
                                                std::span<const double> beta0_grid) {
  if (beta0_grid.empty()) throw InvalidArgument("exclusion_boundary: empty beta0 grid");
  if (!(n_particles > 1.0)) throw InvalidArgument("exclusion_boundary: N must exceed 1");
  const double log_n = std::log(n_particles);
  ExclusionBoundary out;
  out.points.reserve(beta0_grid.size());
  for (double beta0 : beta0_grid) {
    if (!(beta0 > 0.0)) throw InvalidArgument("exclusion_boundary: beta0 must be positive");
    out.points.push_back({beta0, alpha_at_unit + std::log(beta0) / log_n});
  }
  return out;
}

double levitation_frequency(double density, double susceptibility, double gradient) {
  if (!(density > 0.0) || !(susceptibility >= 0.0) || !(gradient >= 0.0))
    throw InvalidArgument("levitation_frequency: invalid material or gradient");
  return std::sqrt(susceptibility / (density * constants::vacuum_permeability)) * gradient;
}

double levitation_delta_omega_max(const LevitationParams& params) {
  if (params.delta_omega_override > 0.0) return params.delta_omega_override;
  if (!(params.damping > 0.0) || !(params.n_measurements >= 1.0))
    throw InvalidArgument("levitation: damping must be positive and N_m >= 1");
  return params.damping / std::sqrt(params.n_measurements);
}

double levitation_ratio_bound(const LevitationParams& params) {
  if (!(params.mass > 0.0) || !(params.omega > 0.0) || !(params.amplitude > 0.0))
    throw InvalidArgument("levitation: mass, omega and amplitude must be positive");
  const double dw = levitation_delta_omega_max(params);
  if (std::isinf(dw)) return std::numeric_limits<double>::infinity();
  const double pc = constants::planck_mass * constants::light_speed;
  const double w3 = params.omega * params.omega * params.omega;
  return dw * 2.0 * pc * pc /
         (params.mass * params.mass * w3 * params.amplitude * params.amplitude);
}

double optomech_qg_phase(double coupling, double n_photons, double beta, double mass,
                         double omega, double p_mean, double hbar) {
  const double l2 = coupling * coupling;
  return -(4.0 / 3.0) * beta * hbar * mass * omega * l2 * l2 * n_photons * n_photons * n_photons +
         2.0 * beta * l2 * n_photons * p_mean * p_mean;
}

double optomech_qg_phase_magnitude(double coupling, double n_photons, double beta, double mass,
                                   double omega, double p_mean, double hbar) {
  const double l2 = coupling * coupling;
  return (4.0 / 3.0) * beta * hbar * mass * omega * l2 * l2 * n_photons * n_photons * n_photons +
         2.0 * beta * l2 * n_photons * p_mean * p_mean;
}

std::complex<double> optomech_field(std::complex<double> xi, double coupling, double n_photons,
                                    double beta, double mass, double omega, double p_mean,
                                    double hbar) {
  const double phase = -2.0 * coupling * coupling * n_photons +
                       optomech_qg_phase(coupling, n_photons, beta, mass, omega, p_mean, hbar);
  return xi * std::polar(1.0, phase);
}

double optomech_coupling(double finesse, double wavelength, double mass, double omega,
                         double hbar) {
  if (!(finesse > 0.0) || !(wavelength > 0.0) || !(mass > 0.0) || !(omega > 0.0))
    throw InvalidArgument("optomech_coupling: inputs must be positive");
  return 4.0 * finesse / wavelength * std::sqrt(hbar / (mass * omega));
}

double optomech_ratio_bound(double phase_resolution, const OptomechParams& params) {
  if (!(phase_resolution >= 0.0)) throw InvalidArgument("phase resolution must be >= 0");
  if (std::isinf(phase_resolution)) return std::numeric_limits<double>::infinity();
  const double lambda = optomech_coupling(params.finesse, params.wavelength, params.mass,
                                          params.omega, params.hbar);
  const double pc = constants::planck_mass * constants::light_speed;
  const double per_unit_ratio =
      optomech_qg_phase_magnitude(lambda, params.n_photons, 1.0 / (pc * pc), params.mass,
                                  params.omega, params.p_mean, params.hbar);
  if (!(per_unit_ratio > 0.0)) throw InvalidArgument("optomechanical scenario has no deformation phase");
  return phase_resolution / per_unit_ratio;
}

std::vector<OptomechScanPoint> optomech_mass_scan(const OptomechParams& params, double beta,
                                                  std::span<const double> masses,
                                                  MomentumConvention convention) {
  std::vector<OptomechScanPoint> out;
  out.reserve(masses.size());
  const double velocity = params.p_mean / params.mass;
  for (double m : masses) {
    const double lambda = optomech_coupling(params.finesse, params.wavelength, m, params.omega,
                                            params.hbar);
    const double p = convention == MomentumConvention::fixed_velocity ? m * velocity : params.p_mean;
    const double l2 = lambda * lambda;
    const double np = params.n_photons;
    out.push_back({m, (4.0 / 3.0) * beta * params.hbar * m * params.omega * l2 * l2 * np * np * np,
                   2.0 * beta * l2 * np * p * p});
  }
  return out;
}

std::vector<LiteratureBound> literature_bounds() {
  // The oscillator experiments state only alpha_min at beta0 = 1. Their
  // bounds turn positive only above beta0 ~ 1e6, so B = 1e6 is assumed and
  // N = B^(-1/alpha_min) follows.
  constexpr double oscillator_upper = 1e6;
  auto oscillator = [](std::string label, double alpha_min) {
    return LiteratureBound{std::move(label), alpha_min, oscillator_upper,
                           std::pow(oscillator_upper, -1.0 / alpha_min), true};
  };
  return {
      oscillator("Micro-oscillators (Bawaj 2015)", -0.33),
      oscillator("Macroscopic oscillator (Bushev 2019)", -0.25),
      {"Pendulum (conventional suspension)", 0.07, 1e-2, constants::pendulum_nucleons, false},
  };
}

}  // namespace gup
