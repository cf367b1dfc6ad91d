#include "gup/deformation.hpp"

#include <cmath>

#include "gup/errors.hpp"

namespace gup {

void DeformationParams::validate() const {
  if (!(n_particles >= 1.0)) throw InvalidArgument("n_particles must be >= 1");
  if (!(planck_mass > 0.0) || !(light_speed > 0.0))
    throw InvalidArgument("planck_mass and light_speed must be positive");
  if (!std::isfinite(beta0) || !std::isfinite(alpha))
    throw InvalidArgument("beta0 and alpha must be finite");
}

double planck_momentum_inv_sq(const DeformationParams& params) {
  const double pc = params.planck_mass * params.light_speed;
  return 1.0 / (pc * pc);
}

double effective_beta(const DeformationParams& params) {
  params.validate();
  if (params.beta0 == 0.0) return 0.0;
  return params.beta0 * std::pow(params.n_particles, -params.alpha) *
         planck_momentum_inv_sq(params);
}

double momentum_remap(double p, double beta) {
  if (beta < 0.0) throw InvalidArgument("momentum_remap: beta must be >= 0");
  if (beta == 0.0) return p;
  const double sb = std::sqrt(beta);
  return std::atan(sb * p) / sb;
}

double momentum_unmap(double p_tilde, double beta) {
  if (beta < 0.0) throw InvalidArgument("momentum_unmap: beta must be >= 0");
  if (beta == 0.0) return p_tilde;
  const double sb = std::sqrt(beta);
  return std::tan(sb * p_tilde) / sb;
}

}  // namespace gup
