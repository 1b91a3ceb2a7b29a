#pragma once

#include <Eigen/Dense>

#include "dplab/coefficient.hpp"
#include "dplab/params.hpp"

namespace dplab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// |xi|^e with the convention that |xi| < 1e-300 counts as zero. Only called
/// in products that vanish at xi = 0, so the singular range p < 2 stays
/// NaN-free.
double safe_power(double r, double e);

/// H(z, xi) = |xi|^p + a |xi|^q.
double hamiltonian_H(const ExponentParams& params, double a_val, const Vector& xi);

/// |xi|^{p-2} xi + a |xi|^{q-2} xi, zero at xi = 0.
Vector flux_A(const ExponentParams& params, double a_val, const Vector& xi);
double flux_A(const ExponentParams& params, double a_val, double xi);

/// (delta + |xi|^2)^{(p-2)/2} xi + a (delta + |xi|^2)^{(q-2)/2} xi.
Vector flux_regularized(const ExponentParams& params, double a_val,
                        const Vector& xi, double delta);
double flux_regularized(const ExponentParams& params, double a_val, double xi,
                        double delta);
/// d/dxi of the scalar regularized flux.
double flux_regularized_derivative(const ExponentParams& params, double a_val,
                                   double xi, double delta);

/// Non-divergence operator
///   |eta|^{p-2}(tr X + (p-2) eta'X eta/|eta|^2)
///     + a |eta|^{q-2}(tr X + (q-2) eta'X eta/|eta|^2).
/// Rejects eta = 0.
double operator_F(const ExponentParams& params, double a_val, const Vector& eta,
                  const Matrix& X);
double operator_F(const ExponentParams& params, const Coefficient& coeff,
                  Point x, double t, const Vector& eta, const Matrix& X);

/// ||Da||_inf |eta|^{q-1} + C_f (1 + |eta|^beta1 + a |eta|^beta2).
double bound_g(const ExponentParams& params, double lip_space, double a_val,
               const Vector& eta);
double bound_g(const ExponentParams& params, const Coefficient& coeff, Point x,
               double t, const Vector& eta);

/// C_f (1 + |xi|^beta1 + a |xi|^beta2).
double rhs_growth_bound(const ExponentParams& params, double a_val, const Vector& xi);
double rhs_growth_bound(const ExponentParams& params, double a_val, double xi);

/// |xi|^{p-2} xi + a |xi|^{q-2} xi + b |xi|^{s-2} xi.
Vector multiphase_flux(const MultiPhaseParams& params, double a_val, double b_val,
                       const Vector& xi);

/// |v|^{r-2} v, the single-phase building block of every flux above.
Vector power_vector(const Vector& v, double r);

/// Left- and right-hand sides of the monotonicity and continuity
/// inequalities for w -> |w|^{r-2} w. Each struct has lhs <= rhs or
/// lhs >= rhs as documented.
struct InequalitySides {
  double lhs;
  double rhs;
};

/// (|a|^{r-2}a - |b|^{r-2}b).(a-b) >= (r-1)|a-b|^2 (1+|a|^2+|b|^2)^{(r-2)/2},
/// valid for 1 < r < 2.
InequalitySides monotone_singular(const Vector& a, const Vector& b, double r);
/// (|a|^{r-2}a - |b|^{r-2}b).(a-b) >= 2^{2-r} |a-b|^r, valid for r >= 2.
InequalitySides monotone_degenerate(const Vector& a, const Vector& b, double r);
/// ||a|^{r-2}a - |b|^{r-2}b| <= 2^{2-r}|a-b|^{r-1} for r < 2 and
/// <= (r-1)(|a|^{r-2}+|b|^{r-2})|a-b| for r >= 2.
InequalitySides continuity_bound(const Vector& a, const Vector& b, double r);

}  // namespace dplab
