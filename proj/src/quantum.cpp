#include "gup/quantum.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace gup {

OscillatorModel::OscillatorModel(double mass, double omega, double hbar, double beta)
    : mass_(mass), omega_(omega), hbar_(hbar), beta_(beta) {
  if (!(mass > 0.0) || !(omega > 0.0)) throw InvalidArgument("oscillator mass and omega must be positive");
  if (!(hbar >= 0.0) || !(beta >= 0.0)) throw InvalidArgument("oscillator hbar and beta must be >= 0");
}

double OscillatorModel::inv_r() const {
  const double x = 2.0 * beta_ * mass_ * hbar_ * omega_;
  return x * x;
}

double OscillatorModel::lambda_g() const {
  const double x = mass_ * hbar_ * omega_ * beta_;
  if (x == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 + std::sqrt(0.25 + 1.0 / (x * x));
}

double OscillatorModel::level(std::size_t n) const {
  const double dn = static_cast<double>(n);
  const double v = nu();
  return dn * (1.0 + v + v * dn);
}

double energy_eigenvalue(std::size_t n, const OscillatorModel& model) {
  const double hw = model.hbar() * model.omega();
  const double dn = static_cast<double>(n);
  // 1/sqrt(r) = 2 beta m hbar omega, so this is exact at beta = 0 too.
  const double inv_sqrt_r = std::sqrt(model.inv_r());
  return hw * (dn + 0.5) * (std::sqrt(1.0 + model.inv_r() / 16.0) + 0.25 * inv_sqrt_r) +
         hw * dn * dn * 0.25 * inv_sqrt_r;
}

double gegenbauer(std::size_t n, double lambda, double s) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * lambda * s;
  for (std::size_t k = 1; k < n; ++k) {
    const double dk = static_cast<double>(k);
    const double next = (2.0 * (dk + lambda) * s * curr - (dk + 2.0 * lambda - 1.0) * prev) / (dk + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double gegenbauer_derivative(std::size_t n, double lambda, double s) {
  if (n == 0) return 0.0;
  return 2.0 * lambda * gegenbauer(n - 1, lambda + 1.0, s);
}

Complex eigenfunction(std::size_t n, const OscillatorModel& model, double p) {
  const double beta = model.beta();
  if (!(beta > 0.0)) throw InvalidArgument("eigenfunction requires beta > 0");
  const double lambda = model.lambda_g();
  const double dn = static_cast<double>(n);
  const double bp2 = beta * p * p;
  const double s = std::sqrt(beta) * p / std::sqrt(1.0 + bp2);
  // log of |z_n| (1 - s^2)^{lambda/2}; 1 - s^2 = 1 / (1 + beta p^2).
  const double log_mag = lambda * std::log(2.0) + std::lgamma(lambda) +
                         0.5 * (std::lgamma(dn + 1.0) + std::log(dn + lambda) + 0.5 * std::log(beta) -
                                std::log(2.0 * std::numbers::pi) - std::lgamma(dn + 2.0 * lambda)) -
                         0.5 * lambda * std::log1p(bp2);
  const double value = std::exp(log_mag) * gegenbauer(n, lambda, s);
  switch (n % 4) {
    case 0: return {value, 0.0};
    case 1: return {0.0, -value};
    case 2: return {-value, 0.0};
    default: return {0.0, value};
  }
}

TruncatedOperators build_truncated_operators(const OscillatorModel& model, std::size_t dimension) {
  if (dimension < 8) throw InvalidArgument("truncated operators need dimension >= 8");
  if (!(model.hbar() > 0.0)) throw InvalidArgument("truncated operators need hbar > 0");
  const auto d = static_cast<Eigen::Index>(dimension);
  const double m = model.mass(), w = model.omega(), hb = model.hbar(), beta = model.beta();
  const double nu = model.nu();

  TruncatedOperators ops;
  ops.dimension = dimension;
  ops.a = Eigen::MatrixXcd::Zero(d, d);
  ops.n_op = Eigen::MatrixXcd::Zero(d, d);
  ops.h = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    const double dn = static_cast<double>(n);
    if (n > 0) ops.a(n - 1, n) = std::sqrt(dn * (1.0 + nu + nu * dn));
    ops.n_op(n, n) = dn;
    ops.h(n, n) = hb * w * model.level(static_cast<std::size_t>(n));
  }
  ops.a_dagger = ops.a.adjoint();

  const Eigen::MatrixXcd& a = ops.a;
  const Eigen::MatrixXcd& ad = ops.a_dagger;
  // Normal-ordered products, kept in the order written; each is exact on the block.
  const Eigen::MatrixXcd ad_a_a = ad * (a * a);
  const Eigen::MatrixXcd ad_ad_a = (ad * ad) * a;
  const Eigen::MatrixXcd a3 = a * a * a;
  const Eigen::MatrixXcd ad3 = ad * ad * ad;

  const Complex i{0.0, 1.0};
  ops.x = std::sqrt(hb / (2.0 * m * w)) * (a + ad) +
          (beta / 4.0) * std::sqrt(hb * hb * hb * m * w / 2.0) * (ad_a_a + ad_ad_a - a3 - ad3);
  const double hmw = hb * m * w;
  ops.p = i * std::sqrt(hmw / 2.0) * (ad - a) +
          i * beta * std::pow(hmw, 1.5) / (4.0 * std::sqrt(2.0)) *
              (ad_a_a - ad_ad_a + a3 - ad3 + 2.0 * a - 2.0 * ad);
  return ops;
}

double commutator_residual(const TruncatedOperators& ops, const OscillatorModel& model,
                           std::size_t interior_margin) {
  if (interior_margin >= ops.dimension) throw InvalidArgument("interior margin exceeds dimension");
  const auto d = static_cast<Eigen::Index>(ops.dimension);
  const Eigen::MatrixXcd comm = ops.x * ops.p - ops.p * ops.x;
  const Eigen::MatrixXcd rhs =
      Complex{0.0, model.hbar()} *
      (Eigen::MatrixXcd::Identity(d, d) + model.beta() * ops.p * ops.p);
  const auto k = static_cast<Eigen::Index>(ops.dimension - interior_margin);
  return (comm - rhs).topLeftCorner(k, k).cwiseAbs().maxCoeff();
}

namespace {

// log(J^n / rho_n) for n = 0..count-1.
std::vector<double> gk_log_terms(const OscillatorModel& model, double j, std::size_t count) {
  std::vector<double> out(count);
  double log_rho = 0.0;
  const double log_j = j > 0.0 ? std::log(j) : -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < count; ++n) {
    if (n > 0) log_rho += std::log(model.level(n));
    out[n] = n == 0 ? 0.0 : static_cast<double>(n) * log_j - log_rho;
  }
  return out;
}

// Levels needed before the remaining terms of sum J^n / rho_n are negligible.
std::size_t gk_series_length(double j) {
  return static_cast<std::size_t>(j + 12.0 * std::sqrt(j + 1.0) + 60.0);
}

// Fraction of the series mass at levels >= cut.
double gk_tail_fraction(const std::vector<double>& log_terms, std::size_t cut) {
  double peak = log_terms[0];
  for (double v : log_terms) peak = std::max(peak, v);
  double total = 0.0, tail = 0.0;
  for (std::size_t n = 0; n < log_terms.size(); ++n) {
    const double t = std::exp(log_terms[n] - peak);
    total += t;
    if (n >= cut) tail += t;
  }
  return tail / total;
}

}  // namespace

std::size_t gk_dimension(const OscillatorModel& model, double j) {
  if (!(j >= 0.0)) throw InvalidArgument("GK action J must be >= 0");
  const auto terms = gk_log_terms(model, j, gk_series_length(j));
  std::size_t cut = 1;
  while (cut < terms.size() && gk_tail_fraction(terms, cut) >= gk_tail_tolerance) ++cut;
  return std::max<std::size_t>(8, cut + gk_buffer_levels);
}

GKState gazeau_klauder_state(const OscillatorModel& model, double j, double gamma_phase,
                             std::size_t dimension) {
  if (!(j >= 0.0)) throw InvalidArgument("GK action J must be >= 0");
  if (dimension <= gk_buffer_levels) throw TruncationError("GK dimension too small");
  const std::size_t series = std::max(dimension, gk_series_length(j));
  const auto log_terms = gk_log_terms(model, j, series);
  const double tail = gk_tail_fraction(log_terms, dimension - gk_buffer_levels);
  if (!(tail < gk_tail_tolerance)) {
    throw TruncationError("dimension " + std::to_string(dimension) + " too small for J = " +
                          std::to_string(j) + ": tail mass " + std::to_string(tail) +
                          " beyond level " + std::to_string(dimension - gk_buffer_levels));
  }
  double peak = log_terms[0];
  for (double v : log_terms) peak = std::max(peak, v);
  double norm_sq_scaled = 0.0;
  for (double v : log_terms) norm_sq_scaled += std::exp(v - peak);
  const double log_norm = 0.5 * (peak + std::log(norm_sq_scaled));

  GKState st;
  st.j = j;
  st.gamma_phase = gamma_phase;
  st.norm_const = std::exp(log_norm);
  st.amplitudes.resize(static_cast<Eigen::Index>(dimension));
  st.weights.resize(dimension);
  double rho = 1.0;
  for (std::size_t n = 0; n < dimension; ++n) {
    if (n > 0) rho *= model.level(n);
    st.weights[n] = rho;
    const double mag = std::exp(0.5 * log_terms[n] - log_norm);
    st.amplitudes(static_cast<Eigen::Index>(n)) = std::polar(mag, -gamma_phase * model.level(n));
  }
  return st;
}

GKState evolve_gk(const GKState& state, const OscillatorModel& model, double t) {
  GKState out = state;
  const double wt = model.omega() * t;
  for (Eigen::Index n = 0; n < out.amplitudes.size(); ++n)
    out.amplitudes(n) *= std::polar(1.0, -wt * model.level(static_cast<std::size_t>(n)));
  out.gamma_phase = state.gamma_phase + wt;
  return out;
}

double expectation(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& op) {
  return psi.dot(op * psi).real();
}

std::pair<double, double> expectation_xp_closed_form(const OscillatorModel& model, double j,
                                                     double g) {
  const double m = model.mass(), w = model.omega(), hb = model.hbar(), beta = model.beta();
  const double j32 = j * std::sqrt(j);
  const double sj = std::sqrt(j);
  const double x = std::sqrt(2.0 * hb * j / (m * w)) * std::cos(g) +
                   beta * std::sqrt(2.0 * hb * hb * hb * m * w) *
                       (0.25 * j32 * std::cos(g) - 0.25 * j32 * std::cos(3.0 * g) -
                        sj * (1.0 + j) * g * std::sin(g));
  const double hmw = hb * m * w;
  const double p = -std::sqrt(2.0 * hmw * j) * std::sin(g) +
                   beta * std::pow(hmw, 1.5) / (2.0 * std::sqrt(2.0)) *
                       (j32 * std::sin(g) + j32 * std::sin(3.0 * g) + 2.0 * sj * std::sin(g) -
                        4.0 * g * sj * (1.0 + j) * std::cos(g));
  return {x, p};
}

double trajectory_x_closed_form(const OscillatorModel& model, double amplitude, double t) {
  const double m = model.mass(), w = model.omega(), hb = model.hbar(), beta = model.beta();
  const double wt = w * t;
  const double a = amplitude;
  const double quantum = a == 0.0 ? 0.0 : 2.0 * hb / (m * w * a * a);
  return a * std::cos(wt) + beta * m * m * w * w * a * a * a / 2.0 * std::sin(wt) *
                                (std::cos(wt) * std::sin(wt) - wt * (1.0 + quantum));
}

}  // namespace gup
