#include "gup/parallel.hpp"

#include <exception>

#include <omp.h>

#include "gup/bounds.hpp"

namespace gup::kernels {

namespace serial {

std::vector<double> alpha_grid(double upper, double n_particles, std::span<const double> beta0s) {
  std::vector<double> out(beta0s.size());
  for (std::size_t i = 0; i < beta0s.size(); ++i) out[i] = alpha_bound(upper, n_particles, beta0s[i]);
  return out;
}

std::vector<double> period_grid(const PendulumConfig& pend, double beta,
                                std::span<const double> angles, double rel_tol) {
  std::vector<double> out(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i)
    out[i] = period_exact_quadrature(pend, beta, angles[i], rel_tol);
  return out;
}

std::vector<double> gk_position_series(const TruncatedOperators& ops, const OscillatorModel& model,
                                       const GKState& state, std::span<const double> times) {
  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i)
    out[i] = expectation(evolve_gk(state, model, times[i]).amplitudes, ops.x);
  return out;
}

}  // namespace serial

namespace parallel {

namespace {

// Runs body(i) for i in [0, n) across OpenMP threads. The first exception
// thrown by any iteration is rethrown after the loop.
template <typename Body>
void parallel_for(std::size_t n, Body body) {
  std::exception_ptr error;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(gup_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<double> alpha_grid(double upper, double n_particles, std::span<const double> beta0s) {
  std::vector<double> out(beta0s.size());
  parallel_for(beta0s.size(),
               [&](std::size_t i) { out[i] = alpha_bound(upper, n_particles, beta0s[i]); });
  return out;
}

std::vector<double> period_grid(const PendulumConfig& pend, double beta,
                                std::span<const double> angles, double rel_tol) {
  std::vector<double> out(angles.size());
  parallel_for(angles.size(), [&](std::size_t i) {
    out[i] = period_exact_quadrature(pend, beta, angles[i], rel_tol);
  });
  return out;
}

std::vector<double> gk_position_series(const TruncatedOperators& ops, const OscillatorModel& model,
                                       const GKState& state, std::span<const double> times) {
  std::vector<double> out(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    out[i] = expectation(evolve_gk(state, model, times[i]).amplitudes, ops.x);
  });
  return out;
}

}  // namespace parallel

int max_threads() { return omp_get_max_threads(); }

}  // namespace gup::kernels
