#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dplab/coefficient.hpp"
#include "dplab/grid.hpp"
#include "dplab/params.hpp"

namespace dplab {

/// Right-hand side f(x, t, Du) of the equation (one space dimension).
struct Source {
  std::string name = "zero";
  std::function<double(double, double, double)> eval;

  double operator()(double x, double t, double xi) const {
    return eval ? eval(x, t, xi) : 0.0;
  }
  /// f + c.
  Source shifted(double c) const;
};

/// Names accepted by builtin_source().
std::vector<std::string> builtin_source_names();

/// Source families:
///   zero      f = 0
///   constant  f = c
///   growth    f = sign * C_f (1 + |xi|^beta1 + a(x,t) |xi|^beta2), sign=+1
///             (saturates the growth bound)
Source builtin_source(std::string_view name, const ExponentParams& params,
                      const Coefficient& coeff, const ParamMap& extra = {});

enum class BoundaryKind { dirichlet, zero_flux };

/// Initial-boundary value problem on a Grid1D. `data` supplies the initial
/// values at t_lo and, for Dirichlet problems, the lateral values at every
/// level.
struct Problem {
  ExponentParams params;
  Coefficient coeff;
  Source rhs;
  Grid1D grid;
  std::function<double(double, double)> data;
  BoundaryKind boundary = BoundaryKind::dirichlet;
  double reg_delta = 0.0;  // <= 0 selects the default for p

  /// reg_delta, or 1e-8 for p >= 2 and 1e-6 for p < 2 when unset.
  double delta() const;
  void validate() const;
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 60;
  int max_halvings = 30;
  int picard_iter = 400;
};

/// One backward-Euler step from u_now (at t_next - ht) to t_next:
///   (u_next - u_now)/ht = div_h F_delta(D u_next) + f(x, t_next, D u_next)
/// with face fluxes from flux_regularized. Solved by damped Newton with a
/// lagged-diffusivity fixed-point fallback. Throws ConvergenceError.
std::vector<double> step_implicit(const Problem& problem, std::span<const double> u_now,
                                  double t_next, const NewtonOptions& options = {});

/// Iterates step_implicit over the time grid.
GridField solve(const Problem& problem, const NewtonOptions& options = {});

/// Discrete weak-form residual
///   sum  -u d_t phi + A(x,t,Du).D phi - phi f(x,t,Du)
/// with midpoint rule in time, trapezoid in space for nodal terms and cell
/// midpoints for the flux pairing. phi must vanish on the parabolic boundary
/// and at the final time.
double residual_weak(const GridField& u, const Problem& problem, const GridField& phi);

struct SubSuperPair {
  GridField sub;
  GridField super;
  double rhs_shift = 0.0;  // eps / (4 T^2)
};

/// Strict sub/supersolution pair around the problem's solution: solves with
/// f - d and f + d (d = eps/(4T^2)) and applies -/+ eps/(T - tau/2), tau the
/// elapsed time.
SubSuperPair make_sub_super_pair(const Problem& problem, double eps,
                                 const NewtonOptions& options = {});

}  // namespace dplab
