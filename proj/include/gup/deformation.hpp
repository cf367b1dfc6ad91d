#pragma once

#include "gup/constants.hpp"

namespace gup {

/// Quantum-gravity deformation of the canonical commutator,
/// [x, p] = i hbar (1 + beta p^2), with beta suppressed by N^alpha for a
/// composite body of N constituents.
struct DeformationParams {
  double beta0 = 0.0;
  double alpha = 0.0;
  double n_particles = 1.0;
  double planck_mass = constants::planck_mass;
  double light_speed = constants::light_speed;

  /// Throws InvalidArgument if N < 1 or a constant is non-positive.
  void validate() const;
};

/// beta0 / (N^alpha (M_p c)^2), in s^2 kg^-2 m^-2.
double effective_beta(const DeformationParams& params);

/// (M_p c)^-2, the deformation scale for beta0 = 1 and no suppression.
double planck_momentum_inv_sq(const DeformationParams& params);

/// Canonical momentum with the undeformed bracket {x, p~} = 1:
/// arctan(sqrt(beta) p) / sqrt(beta). Returns p exactly at beta = 0.
double momentum_remap(double p, double beta);

/// Inverse of momentum_remap, tan(sqrt(beta) p~) / sqrt(beta).
double momentum_unmap(double p_tilde, double beta);

}  // namespace gup
