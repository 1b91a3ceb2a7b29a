#include "dplab/flux.hpp"

#include <cmath>

#include "dplab/error.hpp"

namespace dplab {

namespace {

constexpr double kZeroGuard = 1e-300;

// (delta + r^2)^{e}
double shifted_power(double r2, double delta, double e) {
  const double base = delta + r2;
  if (base < kZeroGuard) return 0.0;
  return std::exp(e * std::log(base));
}

double directional_term(double exponent, double norm, double trace, double quad) {
  // |eta|^{m-2}(tr X + (m-2) eta'X eta / |eta|^2)
  return safe_power(norm, exponent - 2.0) *
         (trace + (exponent - 2.0) * quad / (norm * norm));
}

}  // namespace

double safe_power(double r, double e) {
  if (r < kZeroGuard) return 0.0;
  return std::exp(e * std::log(r));
}

double hamiltonian_H(const ExponentParams& params, double a_val, const Vector& xi) {
  const double r = xi.norm();
  return safe_power(r, params.p) + a_val * safe_power(r, params.q);
}

Vector flux_A(const ExponentParams& params, double a_val, const Vector& xi) {
  const double r = xi.norm();
  const double scale =
      safe_power(r, params.p - 2.0) + a_val * safe_power(r, params.q - 2.0);
  return scale * xi;
}

double flux_A(const ExponentParams& params, double a_val, double xi) {
  const double r = std::abs(xi);
  return (safe_power(r, params.p - 2.0) + a_val * safe_power(r, params.q - 2.0)) *
         xi;
}

Vector flux_regularized(const ExponentParams& params, double a_val,
                        const Vector& xi, double delta) {
  const double r2 = xi.squaredNorm();
  const double scale = shifted_power(r2, delta, (params.p - 2.0) / 2.0) +
                       a_val * shifted_power(r2, delta, (params.q - 2.0) / 2.0);
  return scale * xi;
}

double flux_regularized(const ExponentParams& params, double a_val, double xi,
                        double delta) {
  const double r2 = xi * xi;
  return (shifted_power(r2, delta, (params.p - 2.0) / 2.0) +
          a_val * shifted_power(r2, delta, (params.q - 2.0) / 2.0)) *
         xi;
}

double flux_regularized_derivative(const ExponentParams& params, double a_val,
                                   double xi, double delta) {
  // d/dxi (delta + xi^2)^{(m-2)/2} xi = (delta + xi^2)^{(m-4)/2}(delta + (m-1) xi^2)
  const double r2 = xi * xi;
  auto term = [&](double m) {
    return shifted_power(r2, delta, (m - 4.0) / 2.0) * (delta + (m - 1.0) * r2);
  };
  return term(params.p) + a_val * term(params.q);
}

double operator_F(const ExponentParams& params, double a_val, const Vector& eta,
                  const Matrix& X) {
  const double norm = eta.norm();
  if (!(norm > 0.0)) throw PreconditionError("operator_F is undefined at eta = 0");
  if (X.rows() != eta.size() || X.cols() != eta.size()) {
    throw PreconditionError("operator_F: X must be N x N with N = dim(eta)");
  }
  const double trace = X.trace();
  const double quad = eta.dot(X * eta);
  return directional_term(params.p, norm, trace, quad) +
         a_val * directional_term(params.q, norm, trace, quad);
}

double operator_F(const ExponentParams& params, const Coefficient& coeff, Point x,
                  double t, const Vector& eta, const Matrix& X) {
  return operator_F(params, coeff(x, t), eta, X);
}

double bound_g(const ExponentParams& params, double lip_space, double a_val,
               const Vector& eta) {
  const double r = eta.norm();
  return lip_space * safe_power(r, params.q - 1.0) +
         rhs_growth_bound(params, a_val, eta);
}

double bound_g(const ExponentParams& params, const Coefficient& coeff, Point x,
               double t, const Vector& eta) {
  return bound_g(params, coeff.lip_space(), coeff(x, t), eta);
}

double rhs_growth_bound(const ExponentParams& params, double a_val, const Vector& xi) {
  return rhs_growth_bound(params, a_val, xi.norm());
}

double rhs_growth_bound(const ExponentParams& params, double a_val, double xi) {
  const double r = std::abs(xi);
  return params.C_f *
         (1.0 + safe_power(r, params.beta1) + a_val * safe_power(r, params.beta2));
}

Vector multiphase_flux(const MultiPhaseParams& params, double a_val, double b_val,
                       const Vector& xi) {
  const double r = xi.norm();
  const double scale = safe_power(r, params.p - 2.0) +
                       a_val * safe_power(r, params.q - 2.0) +
                       b_val * safe_power(r, params.s - 2.0);
  return scale * xi;
}

Vector power_vector(const Vector& v, double r) {
  return safe_power(v.norm(), r - 2.0) * v;
}

InequalitySides monotone_singular(const Vector& a, const Vector& b, double r) {
  const Vector diff = a - b;
  const double lhs = (power_vector(a, r) - power_vector(b, r)).dot(diff);
  const double rhs = (r - 1.0) * diff.squaredNorm() *
                     std::pow(1.0 + a.squaredNorm() + b.squaredNorm(), (r - 2.0) / 2.0);
  return {lhs, rhs};
}

InequalitySides monotone_degenerate(const Vector& a, const Vector& b, double r) {
  const Vector diff = a - b;
  const double lhs = (power_vector(a, r) - power_vector(b, r)).dot(diff);
  const double rhs = std::pow(2.0, 2.0 - r) * safe_power(diff.norm(), r);
  return {lhs, rhs};
}

InequalitySides continuity_bound(const Vector& a, const Vector& b, double r) {
  const double lhs = (power_vector(a, r) - power_vector(b, r)).norm();
  const double dist = (a - b).norm();
  const double rhs =
      r < 2.0 ? std::pow(2.0, 2.0 - r) * safe_power(dist, r - 1.0)
              : (r - 1.0) *
                    (safe_power(a.norm(), r - 2.0) + safe_power(b.norm(), r - 2.0)) *
                    dist;
  return {lhs, rhs};
}

}  // namespace dplab
