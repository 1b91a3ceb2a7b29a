#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "dplab/coefficient.hpp"
#include "dplab/grid.hpp"
#include "dplab/params.hpp"

namespace dplab {

enum class SteklovSide { left, right };

/// Trapezoid-rule time average over the trailing (left) or leading (right)
/// window of length h. h must be a positive multiple of the time step; the
/// result lives on a grid shortened by h (left drops the first h, right the
/// last h).
GridField steklov_left(const GridField& field, double h);
GridField steklov_right(const GridField& field, double h);
GridField steklov(const GridField& field, double h, SteklovSide side);

/// Modular sum  hx ht sum |d|^p + a |d|^q  over cells, with d the gradient
/// difference of two fields on the same grid and a taken at cell midpoints.
double gradient_modular(const GridField& u, const GridField& v, const Coefficient& coeff,
                        const ExponentParams& params);

/// Convergence table of a modular distance along a refinement sequence.
struct ModularConvergence {
  std::vector<double> steps;    // h or delta
  std::vector<double> modular;  // distance per step
  double slope = 0.0;           // log-log slope of modular vs step (nan if undefined)
  bool monotone = true;         // nonincreasing up to the tail allowance
  bool below_tol = false;       // finest entry below tol
  bool hypothesis_ok = true;    // almost-monotonicity direction matched the side
  bool pass = false;
};

struct ConvergenceOptions {
  double tol = 1e-6;
  double tail_slack = 0.05;  // allowed relative increase between steps
};

/// Distance between D[u]_h and Du for each h, all measured on the levels
/// where the coarsest average exists. The side follows the coefficient:
/// left when a is almost decreasing, right when almost increasing; the
/// report records whether that hypothesis held.
ModularConvergence steklov_wh_convergence(const GridField& field, const Coefficient& coeff,
                                          const ExponentParams& params,
                                          const std::vector<double>& h_sequence,
                                          SteklovSide side,
                                          const ConvergenceOptions& options = {});

struct CounterexampleReport {
  std::vector<std::size_t> cells;
  std::vector<double> weighted_integral;  // a |D[u]_h|^q over B x (-h, -h/2)
  std::vector<double> p_integral;         // |D[u]_h|^p over the same set
  double slope = 0.0;                     // log-log slope of weighted_integral vs cells
  double reference_slope = 0.0;           // q/p - eps - 1
  double p_relative_change = 0.0;         // between the two finest grids
};

/// u = |x|^{1 - 1/p + eps/q} max(t, 0), a = max(-t, 0) on (-1, 1): the right
/// Steklov average has a-weighted gradient integrand ~ |x|^{-q/p + eps}.
/// Midpoint rule in x offset half a cell from 0; exact in time.
CounterexampleReport counterexample_divergence(double p, double q, double small_eps, double h,
                                               const std::vector<std::size_t>& grid_sequence);

/// Discrete convolution with the bump exp(-1/(1 - (y/delta)^2)) normalized
/// to unit mass on the grid. Unless `relax_support`, the field must vanish
/// within delta of the lateral boundary; relaxed mode renormalizes the
/// truncated kernel.
GridField mollify_space(const GridField& field, double delta, bool relax_support = false);

/// Modular distance between Du and D u_delta for each delta.
ModularConvergence mollify_convergence(const GridField& field, const Coefficient& coeff,
                                       const ExponentParams& params,
                                       const std::vector<double>& delta_sequence,
                                       const ConvergenceOptions& options = {});

/// Generalized inverse inf{s >= 0 : omega(s) >= y} by bisection to 1e-12.
/// Throws PreconditionError when y exceeds omega on [0, s_max].
double omega_inverse(const Coefficient::Modulus& omega, double y, double s_max = 1e6);

/// (omega^{-1}(eps^{q(ell-1)}))^2 / (2 osc_u).
double delta_eps(const Coefficient::Modulus& omega, double eps, double q, double ell,
                 double osc_u);
double delta_eps(const Coefficient& coeff, double eps, double q, double ell, double osc_u);

struct InfConvParams {
  double eps = 0.1;
  double ell = 4.0;
  double delta_eps = 1.0;
  double r_eps = 0.0;
  double osc_u = 0.0;

  /// max((ell eps^{ell-1} osc)^{1/ell}, (2 delta_eps osc)^{1/2}).
  static double radius(double eps, double ell, double delta_eps, double osc_u);
  /// Fills delta_eps and r_eps from the modulus.
  static InfConvParams make(double p, double q, double eps, double ell,
                            const Coefficient::Modulus& omega, double osc_u);
  void validate(double p) const;
};

struct InfConvResult {
  GridField value;
  GridField argmin_x;
  GridField argmin_t;
};

/// Brute-force minimization of u(y,s) + |x-y|^ell/(ell eps^{ell-1}) +
/// |t-s|^2/(2 delta_eps) over every node. `cutoff` restricts the search to
/// |x-y|, |t-s| <= 2 r_eps.
InfConvResult inf_convolution(const GridField& field, const InfConvParams& icp,
                              bool cutoff = false);

struct InfConvReport {
  double max_above = 0.0;          // max(u_eps - u), must be <= 0
  double max_shift_x = 0.0;        // max |x - x_eps|
  double max_shift_t = 0.0;        // max |t - t_eps|
  double time_shift_bound = 0.0;   // omega^{-1}(eps^{q(ell-1)})
  double semiconcavity_margin = 0.0;  // max second difference of the corrected field
  double semiconcavity_C = 0.0;
  double derivative_defect = 0.0;  // relative, see infconv_derivative_defect
  bool pass = false;
};

/// max over interior lines of the second differences of
/// u_eps - C x^2 - t^2/delta_eps with C = (ell-1) r^{ell-2} / eps^{ell-1}.
double semiconcavity_margin(const GridField& value, const InfConvParams& icp);

/// Largest gap between centered differences of u_eps and the argmin
/// identities (x - x_eps)|x - x_eps|^{ell-2}/eps^{ell-1}, (t - t_eps)/delta_eps,
/// over nodes whose neighbours share the same argmin branch (argmins within
/// one cell). Scaled by 1 + |identity|.
double infconv_derivative_defect(const InfConvResult& result, const InfConvParams& icp);

/// All inf-convolution properties on one field; `omega` gives the time
/// modulus and q the exponent entering eps^{q(ell-1)}.
InfConvReport infconv_check(const GridField& field, const InfConvParams& icp,
                            const InfConvResult& result, const Coefficient::Modulus& omega,
                            double q);

}  // namespace dplab
