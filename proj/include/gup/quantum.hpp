#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gup/errors.hpp"

namespace gup {

using Complex = std::complex<double>;

/// Truncation too small for the requested state or operator accuracy.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Harmonic oscillator with the deformed commutator [x, p] = i hbar (1 + beta p^2).
/// hbar is a field so the classical limit can be taken; hbar = 0 is accepted
/// only by the closed-form trajectory.
class OscillatorModel {
 public:
  OscillatorModel(double mass, double omega, double hbar, double beta);

  double mass() const { return mass_; }
  double omega() const { return omega_; }
  double hbar() const { return hbar_; }
  double beta() const { return beta_; }

  /// nu = beta m hbar omega / 2.
  double nu() const { return 0.5 * beta_ * mass_ * hbar_ * omega_; }
  /// 1/r = (2 beta m hbar omega)^2.
  double inv_r() const;
  /// Gegenbauer index 1/2 + sqrt(1/4 + 1/(m hbar omega beta)^2); +inf at beta = 0.
  double lambda_g() const;
  /// Dimensionless level energy e_n = n (1 + nu + nu n); H|n> = hbar omega e_n |n>
  /// up to the constant zero-point shift.
  double level(std::size_t n) const;

 private:
  double mass_, omega_, hbar_, beta_;
};

/// Exact deformed spectrum
/// E_n = hbar omega (n + 1/2)(sqrt(1 + 1/(16 r)) + 1/(4 sqrt r)) + hbar omega n^2 / (4 sqrt r).
double energy_eigenvalue(std::size_t n, const OscillatorModel& model);

/// Gegenbauer polynomial C_n^lambda(s) by the three-term recurrence.
double gegenbauer(std::size_t n, double lambda, double s);
/// d/ds C_n^lambda(s) = 2 lambda C_{n-1}^{lambda+1}(s).
double gegenbauer_derivative(std::size_t n, double lambda, double s);

/// Momentum-space eigenfunction psi_n(p) = (-i)^n z_n (1 - s^2)^{lambda/2} C_n^lambda(s),
/// s = sqrt(beta) p / sqrt(1 + beta p^2). Normalised under dp / (1 + beta p^2).
/// Requires beta > 0.
Complex eigenfunction(std::size_t n, const OscillatorModel& model, double p);

/// Ladder, position, momentum, number and Hamiltonian matrices on the first
/// `dimension` Fock levels. Position and momentum contain cubic ladder terms,
/// so the last three rows and columns are incomplete.
struct TruncatedOperators {
  std::size_t dimension = 0;
  Eigen::MatrixXcd a, a_dagger, x, p, n_op, h;
};

/// Throws InvalidArgument for dimension < 8 or hbar <= 0.
TruncatedOperators build_truncated_operators(const OscillatorModel& model, std::size_t dimension);

/// Max |([x, p] - i hbar (1 + beta p^2))_{ij}| over i, j < dimension - interior_margin.
double commutator_residual(const TruncatedOperators& ops, const OscillatorModel& model,
                           std::size_t interior_margin = 4);

/// Gazeau-Klauder coherent state |J, gamma> in the Fock basis.
struct GKState {
  double j = 0.0;
  double gamma_phase = 0.0;
  Eigen::VectorXcd amplitudes;
  double norm_const = 1.0;      // N(J)
  std::vector<double> weights;  // rho_n = prod_{k<=n} e_k, rho_0 = 1
};

/// Tail mass allowed beyond the retained levels.
inline constexpr double gk_tail_tolerance = 1e-12;
/// Levels kept above the tail cut for the cubic ladder terms in x and p.
inline constexpr std::size_t gk_buffer_levels = 4;

/// Smallest dimension whose GK tail mass beyond dimension - 4 is below
/// gk_tail_tolerance (never less than 8).
std::size_t gk_dimension(const OscillatorModel& model, double j);

/// Throws TruncationError when the tail mass beyond dimension - 4 is not below
/// gk_tail_tolerance of the norm.
GKState gazeau_klauder_state(const OscillatorModel& model, double j, double gamma_phase,
                             std::size_t dimension);

/// e^{-iHt/hbar}|J, gamma>: amplitude_n picks up e^{-i omega t e_n}.
GKState evolve_gk(const GKState& state, const OscillatorModel& model, double t);

/// <psi| op |psi>, real part (op Hermitian).
double expectation(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& op);

/// First-order-in-beta <x> and <p> of |J, gamma>; valid while beta gamma << 1.
std::pair<double, double> expectation_xp_closed_form(const OscillatorModel& model, double j,
                                                     double gamma_phase);

/// <x(t)> for the state starting at rest at amplitude A (gamma = 0,
/// J = m omega A^2 / (2 hbar)); valid while beta omega t << 1. Accepts hbar = 0.
double trajectory_x_closed_form(const OscillatorModel& model, double amplitude, double t);

}  // namespace gup
