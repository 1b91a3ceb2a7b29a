#include "dplab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "dplab/error.hpp"
#include "dplab/flux.hpp"

namespace dplab {

namespace {

double param_or(const ParamMap& params, std::string_view key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

// Solves a tridiagonal system in place (Thomas algorithm). lower[0] and
// upper[n-1] are ignored.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
  }
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Discrete operator of one backward-Euler step. Nodes 0 and nx are either
// pinned (Dirichlet) or carry half control volumes (zero flux).
class StepOperator {
 public:
  StepOperator(const Problem& problem, std::span<const double> u_now, double t_next)
      : problem_(problem),
        u_now_(u_now),
        t_(t_next),
        hx_(problem.grid.hx()),
        ht_(problem.grid.ht()),
        delta_(problem.delta()),
        n_(problem.grid.nodes()),
        face_a_(n_ - 1) {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      face_a_[i] = problem.coeff(problem.grid.x(i) + 0.5 * hx_, t_);
    }
    if (dirichlet()) {
      left_ = problem.data(problem.grid.x_lo, t_);
      right_ = problem.data(problem.grid.x_hi, t_);
    }
  }

  bool dirichlet() const { return problem_.boundary == BoundaryKind::dirichlet; }
  std::size_t size() const { return n_; }

  void impose_boundary(std::vector<double>& u) const {
    if (!dirichlet()) return;
    u.front() = left_;
    u.back() = right_;
  }

  double face_flux(std::span<const double> u, std::size_t face) const {
    const double xi = (u[face + 1] - u[face]) / hx_;
    return flux_regularized(problem_.params, face_a_[face], xi, delta_);
  }

  double node_gradient(std::span<const double> u, std::size_t i) const {
    if (i == 0) return (u[1] - u[0]) / hx_;
    if (i + 1 == n_) return (u[n_ - 1] - u[n_ - 2]) / hx_;
    return (u[i + 1] - u[i - 1]) / (2.0 * hx_);
  }

  double source(std::span<const double> u, std::size_t i) const {
    return problem_.rhs(problem_.grid.x(i), t_, node_gradient(u, i));
  }

  double source_slope(std::span<const double> u, std::size_t i) const {
    const double xi = node_gradient(u, i);
    const double h = 1e-7 * std::max(1.0, std::abs(xi));
    const double x = problem_.grid.x(i);
    return (problem_.rhs(x, t_, xi + h) - problem_.rhs(x, t_, xi - h)) / (2.0 * h);
  }

  std::vector<double> residual(std::span<const double> u) const {
    std::vector<double> r(n_, 0.0);
    std::vector<double> flux(n_ - 1);
    for (std::size_t f = 0; f + 1 < n_; ++f) flux[f] = face_flux(u, f);
    for (std::size_t i = 1; i + 1 < n_; ++i) {
      r[i] = u[i] - u_now_[i] -
             ht_ * ((flux[i] - flux[i - 1]) / hx_ + source(u, i));
    }
    if (dirichlet()) {
      r.front() = u.front() - left_;
      r.back() = u.back() - right_;
    } else {
      const double half = 0.5 * hx_;
      r.front() = u[0] - u_now_[0] - ht_ * (flux.front() / half + source(u, 0));
      r.back() = u[n_ - 1] - u_now_[n_ - 1] -
                 ht_ * (-flux.back() / half + source(u, n_ - 1));
    }
    return r;
  }

  // Newton direction: solves J d = -r for the tridiagonal Jacobian.
  std::vector<double> newton_direction(std::span<const double> u,
                                       std::vector<double> r) const {
    std::vector<double> lower(n_, 0.0), diag(n_, 1.0), upper(n_, 0.0);
    std::vector<double> slope(n_ - 1);
    for (std::size_t f = 0; f + 1 < n_; ++f) {
      const double xi = (u[f + 1] - u[f]) / hx_;
      slope[f] = flux_regularized_derivative(problem_.params, face_a_[f], xi, delta_);
    }
    const double c = ht_ / (hx_ * hx_);
    for (std::size_t i = 1; i + 1 < n_; ++i) {
      const double fs = ht_ * source_slope(u, i) / (2.0 * hx_);
      lower[i] = -c * slope[i - 1] + fs;
      upper[i] = -c * slope[i] - fs;
      diag[i] = 1.0 + c * (slope[i - 1] + slope[i]);
    }
    if (!dirichlet()) {
      const double c2 = 2.0 * c;
      const double fs0 = ht_ * source_slope(u, 0) / hx_;
      diag[0] = 1.0 + c2 * slope.front() + fs0;
      upper[0] = -c2 * slope.front() - fs0;
      const double fsn = ht_ * source_slope(u, n_ - 1) / hx_;
      diag[n_ - 1] = 1.0 + c2 * slope.back() - fsn;
      lower[n_ - 1] = -c2 * slope.back() + fsn;
    }
    for (double& v : r) v = -v;
    solve_tridiagonal(lower, diag, upper, r);
    return r;
  }

  // One lagged-diffusivity iteration: the flux is frozen as k(xi_old) xi and
  // the source is evaluated at the old iterate.
  std::vector<double> picard_update(std::span<const double> u) const {
    std::vector<double> lower(n_, 0.0), diag(n_, 1.0), upper(n_, 0.0), rhs(n_);
    std::vector<double> k(n_ - 1);
    for (std::size_t f = 0; f + 1 < n_; ++f) {
      const double xi = (u[f + 1] - u[f]) / hx_;
      const double r2 = xi * xi + delta_;
      const auto& prm = problem_.params;
      k[f] = std::pow(r2, (prm.p - 2.0) / 2.0) +
             face_a_[f] * std::pow(r2, (prm.q - 2.0) / 2.0);
    }
    const double c = ht_ / (hx_ * hx_);
    for (std::size_t i = 1; i + 1 < n_; ++i) {
      lower[i] = -c * k[i - 1];
      upper[i] = -c * k[i];
      diag[i] = 1.0 + c * (k[i - 1] + k[i]);
      rhs[i] = u_now_[i] + ht_ * source(u, i);
    }
    if (dirichlet()) {
      rhs.front() = left_;
      rhs.back() = right_;
    } else {
      const double c2 = 2.0 * c;
      diag[0] = 1.0 + c2 * k.front();
      upper[0] = -c2 * k.front();
      rhs[0] = u_now_[0] + ht_ * source(u, 0);
      diag[n_ - 1] = 1.0 + c2 * k.back();
      lower[n_ - 1] = -c2 * k.back();
      rhs[n_ - 1] = u_now_[n_ - 1] + ht_ * source(u, n_ - 1);
    }
    solve_tridiagonal(lower, diag, upper, rhs);
    return rhs;
  }

 private:
  const Problem& problem_;
  std::span<const double> u_now_;
  double t_;
  double hx_;
  double ht_;
  double delta_;
  std::size_t n_;
  std::vector<double> face_a_;
  double left_ = 0.0;
  double right_ = 0.0;
};

}  // namespace

Source Source::shifted(double c) const {
  if (c == 0.0) return *this;
  Source out;
  out.name = fmt::format("{}{:+g}", name, c);
  out.eval = [base = *this, c](double x, double t, double xi) {
    return base(x, t, xi) + c;
  };
  return out;
}

std::vector<std::string> builtin_source_names() { return {"zero", "constant", "growth"}; }

Source builtin_source(std::string_view name, const ExponentParams& params,
                      const Coefficient& coeff, const ParamMap& extra) {
  if (name == "zero") return Source{"zero", {}};
  if (name == "constant") {
    const double c = param_or(extra, "c", 0.0);
    return Source{"constant", [c](double, double, double) { return c; }};
  }
  if (name == "growth") {
    const double sign = param_or(extra, "sign", 1.0) >= 0.0 ? 1.0 : -1.0;
    return Source{"growth", [params, coeff, sign](double x, double t, double xi) {
                    return sign * rhs_growth_bound(params, coeff(x, t), xi);
                  }};
  }
  throw PreconditionError(fmt::format("unknown source '{}'", name));
}

double Problem::delta() const {
  if (reg_delta > 0.0) return reg_delta;
  return params.p >= 2.0 ? 1e-8 : 1e-6;
}

void Problem::validate() const {
  params.validate();
  grid.validate();
  if (!data) throw PreconditionError("problem needs initial/boundary data");
  if (!(delta() > 0.0)) throw PreconditionError("reg_delta must be > 0");
}

std::vector<double> step_implicit(const Problem& problem, std::span<const double> u_now,
                                  double t_next, const NewtonOptions& options) {
  if (u_now.size() != problem.grid.nodes()) {
    throw PreconditionError("step_implicit: slice size does not match the grid");
  }
  const StepOperator op(problem, u_now, t_next);
  const double tol = options.tol * std::max(1.0, max_abs(u_now));

  std::vector<double> u(u_now.begin(), u_now.end());
  op.impose_boundary(u);
  std::vector<double> r = op.residual(u);
  double norm = max_abs(r);

  for (int it = 0; it < options.max_iter && norm > tol; ++it) {
    const std::vector<double> d = op.newton_direction(u, r);
    double lambda = 1.0;
    std::vector<double> trial(u.size());
    std::vector<double> r_trial;
    double trial_norm = 0.0;
    bool decreased = false;
    for (int h = 0; h <= options.max_halvings; ++h) {
      for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] + lambda * d[i];
      r_trial = op.residual(trial);
      trial_norm = max_abs(r_trial);
      if (std::isfinite(trial_norm) && trial_norm < norm) {
        decreased = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!decreased) break;
    u.swap(trial);
    r.swap(r_trial);
    norm = trial_norm;
  }

  if (norm > tol) {
    // Fixed-point fallback, then a final Newton polish from its iterate.
    for (int it = 0; it < options.picard_iter && norm > tol; ++it) {
      std::vector<double> next = op.picard_update(u);
      std::vector<double> r_next = op.residual(next);
      const double next_norm = max_abs(r_next);
      if (!std::isfinite(next_norm)) break;
      u.swap(next);
      r.swap(r_next);
      norm = next_norm;
    }
  }
  if (!(norm <= tol)) {
    throw ConvergenceError(
        fmt::format("step_implicit: no convergence at t = {} (residual {:.3e})",
                    t_next, norm),
        norm);
  }
  return u;
}

GridField solve(const Problem& problem, const NewtonOptions& options) {
  problem.validate();
  const Grid1D& g = problem.grid;
  GridField field(g);
  auto level0 = field.level(0);
  for (std::size_t i = 0; i < g.nodes(); ++i) level0[i] = problem.data(g.x(i), g.t_lo);
  for (std::size_t n = 1; n < g.levels(); ++n) {
    const std::vector<double> next =
        step_implicit(problem, field.level(n - 1), g.t(n), options);
    std::copy(next.begin(), next.end(), field.level(n).begin());
  }
  return field;
}

double residual_weak(const GridField& u, const Problem& problem, const GridField& phi) {
  const Grid1D& g = u.grid();
  if (!same_grid(g, phi.grid())) throw PreconditionError("residual_weak: grid mismatch");
  const double scale = std::max(1.0, phi.sup_abs());
  const double trace_tol = 1e-12 * scale;
  for (std::size_t n = 0; n < g.levels(); ++n) {
    if (std::abs(phi(n, 0)) > trace_tol || std::abs(phi(n, g.nx)) > trace_tol) {
      throw PreconditionError("residual_weak: test field has a lateral trace");
    }
  }
  for (std::size_t i = 0; i < g.nodes(); ++i) {
    if (std::abs(phi(0, i)) > trace_tol || std::abs(phi(g.nt, i)) > trace_tol) {
      throw PreconditionError("residual_weak: test field is nonzero at t_lo or t_hi");
    }
  }

  const double hx = g.hx();
  const double ht = g.ht();
  double total = 0.0;
  for (std::size_t n = 0; n < g.nt; ++n) {
    const double tm = g.t(n) + 0.5 * ht;
    double nodal = 0.0;
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      const double w = (i == 0 || i == g.nx) ? 0.5 * hx : hx;
      const double um = 0.5 * (u(n, i) + u(n + 1, i));
      const double pm = 0.5 * (phi(n, i) + phi(n + 1, i));
      const double dphi_dt = (phi(n + 1, i) - phi(n, i)) / ht;
      double du = 0.0;
      if (i == 0) {
        du = 0.5 * (u.cell_gradient(n, 0) + u.cell_gradient(n + 1, 0));
      } else if (i == g.nx) {
        du = 0.5 * (u.cell_gradient(n, g.nx - 1) + u.cell_gradient(n + 1, g.nx - 1));
      } else {
        du = 0.25 * (u.cell_gradient(n, i - 1) + u.cell_gradient(n, i) +
                     u.cell_gradient(n + 1, i - 1) + u.cell_gradient(n + 1, i));
      }
      nodal += w * (-um * dphi_dt - pm * problem.rhs(g.x(i), tm, du));
    }
    double cells = 0.0;
    for (std::size_t c = 0; c < g.nx; ++c) {
      const double du = 0.5 * (u.cell_gradient(n, c) + u.cell_gradient(n + 1, c));
      const double dphi = 0.5 * (phi.cell_gradient(n, c) + phi.cell_gradient(n + 1, c));
      const double a = problem.coeff(g.x(c) + 0.5 * hx, tm);
      cells += hx * flux_A(problem.params, a, du) * dphi;
    }
    total += ht * (nodal + cells);
  }
  return total;
}

SubSuperPair make_sub_super_pair(const Problem& problem, double eps,
                                 const NewtonOptions& options) {
  if (eps < 0.0) throw PreconditionError("make_sub_super_pair: eps must be >= 0");
  const Grid1D& g = problem.grid;
  const double T = g.t_hi - g.t_lo;
  const double shift = eps / (4.0 * T * T);

  Problem lower = problem;
  lower.rhs = problem.rhs.shifted(-shift);
  Problem upper = problem;
  upper.rhs = problem.rhs.shifted(shift);

  SubSuperPair pair{solve(lower, options), solve(upper, options), shift};
  if (eps == 0.0) return pair;
  for (std::size_t n = 0; n < g.levels(); ++n) {
    const double tau = g.t(n) - g.t_lo;
    const double bump = eps / (T - tau / 2.0);
    for (double& v : pair.sub.level(n)) v -= bump;
    for (double& v : pair.super.level(n)) v += bump;
  }
  return pair;
}

}  // namespace dplab
