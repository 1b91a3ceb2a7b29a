#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dplab/coefficient.hpp"
#include "dplab/grid.hpp"
#include "dplab/params.hpp"
#include "dplab/solver.hpp"

namespace dplab {

/// Concave profile phi used in the doubling functional.
///   holder:    phi(s) = s^alpha, alpha in (0, 1)
///   lipschitz: phi(s) = s - kappa s^beta, beta in (1, 2), kappa = 2^{-beta-1}/beta
struct PhiProfile {
  enum class Kind { holder, lipschitz };
  Kind kind = Kind::holder;
  double alpha = 0.5;
  double beta = 1.5;
  double kappa = 0.0;

  static PhiProfile holder(double alpha);
  static PhiProfile lipschitz(double beta);

  /// min phi' on (0, 2].
  double c_phi() const;
};

double phi_eval(const PhiProfile& profile, double s);
double phi_d1(const PhiProfile& profile, double s);
double phi_d2(const PhiProfile& profile, double s);

/// Anchor (x0, y0, t0) of the quadratic penalties.
struct PsiAnchor {
  double x0 = 0.0;
  double y0 = 0.0;
  double t0 = 0.0;
};

/// Default penalty weight 8 osc u.
double doubling_K(const GridField& u);

/// Psi(x,y,t) = u(x,t) - u(y,t) - L phi(|x-y|)
///              - K/2 (|x-x0|^2 + |y-y0|^2 + |t-t0|^2).
/// x, y, t must be grid coordinates (within 1e-9 of a node).
double doubling_psi(const GridField& u, double x, double y, double t, double L,
                    const PhiProfile& profile, const PsiAnchor& anchor, double K);

struct PsiScan {
  double max_value = 0.0;
  double arg_x = 0.0;
  double arg_y = 0.0;
  double arg_t = 0.0;
  std::size_t arg_anchor = 0;
  std::vector<double> per_anchor;
};

/// Exhaustive max of Psi over all node pairs, all levels and all anchors.
/// K <= 0 selects doubling_K(u).
PsiScan psi_max_scan(const GridField& u, double L, const PhiProfile& profile,
                     const std::vector<PsiAnchor>& anchors, double K = 0.0);

/// Nodes of the central half of the grid (middle half in x, upper half in
/// t), `per_axis` per direction, used as anchors (x0 = y0).
std::vector<PsiAnchor> default_anchors(const Grid1D& grid, std::size_t per_axis);

struct PsiThreshold {
  double L_star = 0.0;  // smallest L (to rel_tol) with max Psi <= 0, certified
  double L_upper = 0.0; // starting upper bound 10 osc / phi(hx)
  int iterations = 0;
};

/// Bisection on L using monotonicity of max Psi in L.
PsiThreshold psi_threshold_search(const GridField& u, const PhiProfile& profile,
                                  const std::vector<PsiAnchor>& anchors, double K = 0.0,
                                  double rel_tol = 1e-6);

struct DerivativeBound {
  double phi_prime = 0.0;  // phi'(|x-y|) at the scan argmax
  double bound = 0.0;      // omega(|x-y|) / (L |x-y|)
  bool applicable = false; // positive max with x != y
  bool ok = true;
};

/// phi'(|z|) <= omega(|z|)/(L|z|) at the argmax of a scan, omega the spatial
/// modulus of u measured over all levels.
DerivativeBound derivative_bound_check(const GridField& u, const PsiScan& scan, double L,
                                       const PhiProfile& profile);

enum class BarrierRegime { singular, degenerate };

/// phi(x,t) = u0 + A + Theta (t - t0) + K |x|^beta on B_rho x [t0, s0] in
/// dimension N.
struct BarrierSpec {
  BarrierRegime regime = BarrierRegime::degenerate;
  ExponentParams params;
  std::size_t N = 1;
  double t0 = -1.0;
  double s0 = 0.0;
  double u0 = 0.0;
  double osc_u = 0.0;
  double L = 0.0;
  double A = 0.0;
  double C0 = 0.0;
  double K = 0.0;
  double beta = 2.0;
  double rho = 1.0;
  double Theta = 0.0;

  double operator()(Point x, double t) const;
  double operator()(double x, double t) const { return (*this)(Point(&x, 1), t); }
  /// Exponent e in Theta = C1 K^e: q/beta (singular) or 1 (degenerate).
  double theta_exponent() const;
};

/// Constants of the two barriers:
///   singular   beta = p/(p-1), A = (s0-t0)^{p/(p+q)}, C0 = 2(osc+1)(L+1)^beta beta,
///              K = C0 A^{1-beta}, rho = A^{(beta-1)/beta}
///   degenerate beta = 2, A = (s0-t0)^{1/2}, C0 = 4(osc+1)(L+1)^2, K = C0/A, rho = 1
/// Singular needs 1 < p < 2, degenerate p >= 2; t0 < s0 <= 0. Theta is left 0.
BarrierSpec barrier_make(BarrierRegime regime, const ExponentParams& params, double t0,
                         double s0, double osc_u, double L, double u0 = 0.0,
                         std::size_t N = 1);

/// Sample points in B_rho x [t0, s0].
struct BarrierSamples {
  std::size_t N = 1;
  std::vector<std::vector<double>> x;
  std::vector<double> t;
};

/// Lattice with nx points per space axis on [-rho, rho] (dropping |x| < h_x)
/// and nt levels on [t0, s0].
BarrierSamples barrier_samples(const BarrierSpec& spec, std::size_t nx, std::size_t nt);

/// min over samples of d_t phi - div A(x,t,D phi) - f(x,t,D phi), with exact
/// radial derivatives including the Da . D phi term. The source sees the
/// first coordinate, the time and the signed gradient for N = 1, |D phi|
/// otherwise.
double barrier_residual(const BarrierSpec& spec, const Coefficient& coeff, const Source& rhs,
                        const BarrierSamples& samples);

struct ThetaSearch {
  double Theta = 0.0;
  double C1 = 0.0;            // Theta / K^{theta_exponent}
  double residual_min = 0.0;  // certificate at Theta
  int doublings = 0;
};

/// Doubling from 1 until the residual is nonnegative, then bisection to
/// relative 1e-12 keeping the certified upper end. Throws ConvergenceError
/// past theta_cap.
ThetaSearch barrier_theta_search(const BarrierSpec& spec, const Coefficient& coeff,
                                 const Source& rhs, const BarrierSamples& samples,
                                 double theta_cap = 1e15);

struct BarrierOrdering {
  double max_gap = 0.0;        // max (u - phi) over nodes in B_rho x [t0, s0]
  double boundary_gap = 0.0;   // same over the parabolic boundary nodes
  std::size_t nodes = 0;
};

/// Compares a solved field (N = 1) against the barrier on the grid nodes of
/// B_rho x [t0, s0].
BarrierOrdering barrier_ordering_check(const GridField& u, const BarrierSpec& spec);

struct ModulusReport {
  double lip_space_est = 0.0;
  double time_alpha_est = 0.0;  // nan when alpha_defined is false
  double fit_r2 = 0.0;
  bool alpha_defined = false;
  std::size_t space_samples = 0;
  std::size_t time_lags = 0;
};

/// Largest adjacent-node difference quotient in space, and the log-log slope
/// of sup_x |u(x,t+l) - u(x,t)| against dyadic lags l >= 2 ht inside the
/// inner cylinder. The inner cylinder must lie strictly inside the grid in x
/// and above its bottom in t.
ModulusReport modulus_estimate(const GridField& u, const Cylinder& inner);

}  // namespace dplab
