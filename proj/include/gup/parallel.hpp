#pragma once

// Data-parallel kernels. Each kernel has a serial reference and an OpenMP
// version with the same signature; every output element is computed
// independently so both produce bit-identical results.

#include <span>
#include <vector>

#include "gup/pendulum.hpp"
#include "gup/quantum.hpp"

namespace gup::kernels {

namespace serial {

/// alpha_bound(upper, N, beta0) for each grid point.
std::vector<double> alpha_grid(double upper, double n_particles, std::span<const double> beta0s);

/// period_exact_quadrature for each angular amplitude.
std::vector<double> period_grid(const PendulumConfig& pend, double beta,
                                std::span<const double> angles, double rel_tol);

/// <J, gamma + omega t| x |J, gamma + omega t> for each time.
std::vector<double> gk_position_series(const TruncatedOperators& ops, const OscillatorModel& model,
                                       const GKState& state, std::span<const double> times);

}  // namespace serial

namespace parallel {

std::vector<double> alpha_grid(double upper, double n_particles, std::span<const double> beta0s);

std::vector<double> period_grid(const PendulumConfig& pend, double beta,
                                std::span<const double> angles, double rel_tol);

std::vector<double> gk_position_series(const TruncatedOperators& ops, const OscillatorModel& model,
                                       const GKState& state, std::span<const double> times);

}  // namespace parallel

/// Threads OpenMP will use for the parallel kernels.
int max_threads();

}  // namespace gup::kernels
