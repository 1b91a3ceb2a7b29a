#pragma once

namespace dplab {

/// Exponents and growth constants of the double-phase equation
///   u_t - div(|Du|^{p-2}Du + a(z)|Du|^{q-2}Du) = f(z, Du),
/// with |f(z, xi)| <= C_f (1 + |xi|^beta1 + a(z)|xi|^beta2).
struct ExponentParams {
  double p = 2.0;
  double q = 2.0;
  double beta1 = 1.0;
  double beta2 = 1.0;
  double C_f = 0.0;

  /// Throws PreconditionError naming the first violated constraint.
  void validate() const;

  /// q <= p + 1.
  bool in_gap_range() const noexcept { return q <= p + 1.0; }

  /// Valid and strictly inside the gap q < p + 1. The borderline q = p + 1
  /// is accepted only when requested.
  bool admissible(bool borderline_ok = false) const;

  bool singular() const noexcept { return p < 2.0; }
};

struct MultiPhaseParams {
  double p = 2.0;
  double q = 2.0;
  double s = 2.0;
  double beta1 = 1.0;
  double beta2 = 1.0;
  double beta3 = 1.0;
  double C_f = 0.0;

  void validate() const;
  bool in_gap_range() const noexcept { return s <= p + 1.0; }
};

/// gamma = max(q - p, beta1 - p + 1, beta2 - q + 1) + 1.
double gamma_exponent(const ExponentParams& params);

/// gamma = max(s - p, beta1 - p + 1, beta2 - q + 1, beta3 - s + 1) + 1.
double gamma_multiphase(const MultiPhaseParams& params);

/// Time Hoelder exponent of bounded weak solutions: p/(p+q) for p < 2,
/// 1/2 otherwise.
double time_exponent_target(double p, double q);

/// Exponent of the Lipschitz profile s - kappa s^beta used to upgrade an
/// alpha-Hoelder modulus to a Lipschitz one. Requires
/// alpha/2 + (gamma-1)(1-alpha) < 1.
double lipschitz_profile_beta(double alpha, double gamma);

}  // namespace dplab
