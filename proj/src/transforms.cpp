#include "dplab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dplab/error.hpp"
#include "dplab/fit.hpp"

namespace dplab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t window_steps(const Grid1D& g, double h) {
  if (!(h > 0.0)) throw PreconditionError("Steklov window h must be positive");
  const double ratio = h / g.ht();
  const auto k = static_cast<std::size_t>(std::llround(ratio));
  if (k == 0 || std::abs(ratio - double(k)) > 1e-9 * ratio) {
    throw PreconditionError(fmt::format("h = {} is not a multiple of ht = {}", h, g.ht()));
  }
  if (k >= g.nt) {
    throw PreconditionError(
        fmt::format("h = {} leaves no time levels on [{}, {}]", h, g.t_lo, g.t_hi));
  }
  return k;
}

// Modular over the cells of `levels` consecutive levels, u starting at level
// u0 and v at v0 (both fields share the spatial grid).
double modular_levels(const GridField& u, std::size_t u0, const GridField& v, std::size_t v0,
                      std::size_t levels, const Coefficient& coeff, const ExponentParams& prm) {
  const Grid1D& g = u.grid();
  const double hx = g.hx(), ht = g.ht();
  double sum = 0.0;
  for (std::size_t k = 0; k < levels; ++k) {
    const double t = g.t(u0 + k);
    for (std::size_t c = 0; c < g.nx; ++c) {
      const double d = std::abs(u.cell_gradient(u0 + k, c) - v.cell_gradient(v0 + k, c));
      if (d == 0.0) continue;
      const double a = coeff(g.x(c) + 0.5 * hx, t);
      sum += std::pow(d, prm.p) + (a > 0.0 ? a * std::pow(d, prm.q) : 0.0);
    }
  }
  return sum * hx * ht;
}

void finish(ModularConvergence& report, const ConvergenceOptions& options) {
  const auto& m = report.modular;
  for (std::size_t k = 1; k < m.size(); ++k) {
    if (m[k] > m[k - 1] * (1.0 + options.tail_slack)) report.monotone = false;
  }
  report.below_tol = !m.empty() && m.back() < options.tol;
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] > 0.0) {
      xs.push_back(report.steps[k]);
      ys.push_back(m[k]);
    }
  }
  report.slope = xs.size() >= 2 ? fit_loglog(xs, ys).slope : kNaN;
  report.pass = report.monotone && report.below_tol;
}

// Riemann sum (1/n) sum_{i<n} ((i+1/2)/n)^e, the midpoint rule on (0, 1).
double midpoint_power_sum(std::size_t n, double e) {
  double s = 0.0;
  const double inv = 1.0 / double(n);
  for (std::size_t i = 0; i < n; ++i) s += std::pow((double(i) + 0.5) * inv, e);
  return s * inv;
}

double bump(double y) { return y * y < 1.0 ? std::exp(-1.0 / (1.0 - y * y)) : 0.0; }

}  // namespace

GridField steklov(const GridField& field, double h, SteklovSide side) {
  const Grid1D& g = field.grid();
  const std::size_t k = window_steps(g, h);
  Grid1D out_grid = g;
  out_grid.nt = g.nt - k;
  if (side == SteklovSide::left) {
    out_grid.t_lo = g.t(k);
  } else {
    out_grid.t_hi = g.t(g.nt - k);
  }
  // Both averages integrate source levels [m, m+k]; they differ only in the
  // time label of the result.
  GridField out(out_grid);
  for (std::size_t m = 0; m < out_grid.levels(); ++m) {
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      double s = 0.5 * (field(m, i) + field(m + k, i));
      for (std::size_t n = m + 1; n < m + k; ++n) s += field(n, i);
      out(m, i) = s / double(k);
    }
  }
  return out;
}

GridField steklov_left(const GridField& field, double h) {
  return steklov(field, h, SteklovSide::left);
}

GridField steklov_right(const GridField& field, double h) {
  return steklov(field, h, SteklovSide::right);
}

double gradient_modular(const GridField& u, const GridField& v, const Coefficient& coeff,
                        const ExponentParams& params) {
  if (!same_grid(u.grid(), v.grid())) throw PreconditionError("fields live on different grids");
  return modular_levels(u, 0, v, 0, u.grid().levels(), coeff, params);
}

ModularConvergence steklov_wh_convergence(const GridField& field, const Coefficient& coeff,
                                          const ExponentParams& params,
                                          const std::vector<double>& h_sequence,
                                          SteklovSide side, const ConvergenceOptions& options) {
  if (h_sequence.empty()) throw PreconditionError("empty h sequence");
  const Grid1D& g = field.grid();
  std::size_t k_max = 0;
  for (double h : h_sequence) k_max = std::max(k_max, window_steps(g, h));

  ModularConvergence report;
  const auto direction =
      side == SteklovSide::left ? AlmostMonotone::decreasing : AlmostMonotone::increasing;
  report.hypothesis_ok = check_almost_increasing(coeff, g.cylinder(), 17, direction).ok;

  const std::size_t levels = g.levels() - k_max;
  for (double h : h_sequence) {
    const std::size_t k = window_steps(g, h);
    const GridField avg = steklov(field, h, side);
    // Common window: source levels [k_max, nt] (left) or [0, nt - k_max] (right).
    const std::size_t u0 = side == SteklovSide::left ? k_max : 0;
    const std::size_t v0 = side == SteklovSide::left ? k_max - k : 0;
    report.steps.push_back(h);
    report.modular.push_back(modular_levels(field, u0, avg, v0, levels, coeff, params));
  }
  finish(report, options);
  return report;
}

CounterexampleReport counterexample_divergence(double p, double q, double small_eps, double h,
                                               const std::vector<std::size_t>& grid_sequence) {
  if (!(p >= 1.0 && q > p)) throw PreconditionError("counter-example requires 1 <= p < q");
  if (!(small_eps > 0.0) || !(q / p - small_eps > 1.0)) {
    throw PreconditionError(fmt::format(
        "q/p - eps = {} must exceed 1 for the weighted integral to diverge", q / p - small_eps));
  }
  if (!(h > 0.0)) throw PreconditionError("h must be positive");
  if (grid_sequence.size() < 2) throw PreconditionError("need at least two grids");

  const double kappa = 1.0 - 1.0 / p + small_eps / q;
  // On (-h, -h/2): D[u]_h = kappa |x|^{kappa-1} sgn(x) (t+h)^2/(2h), a = -t.
  // Time factors integrated in closed form with tau = t + h in (0, h/2).
  const double half = 0.5 * h;
  const double time_q = std::pow(2.0 * h, -q) *
                        (h * std::pow(half, 2 * q + 1) / (2 * q + 1) -
                         std::pow(half, 2 * q + 2) / (2 * q + 2));
  const double time_p = std::pow(2.0 * h, -p) * std::pow(half, 2 * p + 1) / (2 * p + 1);

  CounterexampleReport report;
  report.reference_slope = q / p - small_eps - 1.0;
  std::vector<double> ns;
  for (std::size_t n : grid_sequence) {
    if (n == 0) throw PreconditionError("cell count must be positive");
    // Symmetric in x: twice the integral over (0, 1).
    const double wq = 2.0 * std::pow(kappa, q) * midpoint_power_sum(n, q * (kappa - 1.0));
    const double wp = 2.0 * std::pow(kappa, p) * midpoint_power_sum(n, p * (kappa - 1.0));
    report.cells.push_back(n);
    report.weighted_integral.push_back(wq * time_q);
    report.p_integral.push_back(wp * time_p);
    ns.push_back(double(n));
  }
  report.slope = fit_loglog(ns, report.weighted_integral).slope;
  const auto& pi = report.p_integral;
  report.p_relative_change = std::abs(pi.back() - pi[pi.size() - 2]) / std::abs(pi.back());
  return report;
}

GridField mollify_space(const GridField& field, double delta, bool relax_support) {
  if (!(delta > 0.0)) throw PreconditionError("mollifier radius must be positive");
  const Grid1D& g = field.grid();
  const double hx = g.hx();
  const auto m = static_cast<std::size_t>(std::ceil(delta / hx));
  std::vector<double> w;
  for (std::size_t j = 0; j <= m; ++j) w.push_back(bump(double(j) * hx / delta));

  if (!relax_support) {
    const double floor = 1e-14 * std::max(1.0, field.sup_abs());
    for (std::size_t n = 0; n < g.levels(); ++n) {
      for (std::size_t i = 0; i < g.nodes(); ++i) {
        if (std::abs(field(n, i)) <= floor) continue;
        const double dist = std::min(g.x(i) - g.x_lo, g.x_hi - g.x(i));
        if (!(dist > delta)) {
          throw PreconditionError(fmt::format(
              "delta = {} exceeds the distance {} from the support to the boundary", delta,
              dist));
        }
      }
    }
  }

  double full_mass = w[0];
  for (std::size_t j = 1; j < w.size(); ++j) full_mass += 2.0 * w[j];

  GridField out(g);
  const auto nodes = static_cast<std::ptrdiff_t>(g.nodes());
  for (std::size_t n = 0; n < g.levels(); ++n) {
    for (std::ptrdiff_t i = 0; i < nodes; ++i) {
      double s = 0.0, mass = 0.0;
      for (std::ptrdiff_t j = -std::ptrdiff_t(m); j <= std::ptrdiff_t(m); ++j) {
        const std::ptrdiff_t k = i - j;
        if (k < 0 || k >= nodes) continue;
        const double wj = w[std::size_t(std::abs(j))];
        s += wj * field(n, std::size_t(k));
        mass += wj;
      }
      out(n, std::size_t(i)) = s / (relax_support ? mass : full_mass);
    }
  }
  return out;
}

ModularConvergence mollify_convergence(const GridField& field, const Coefficient& coeff,
                                       const ExponentParams& params,
                                       const std::vector<double>& delta_sequence,
                                       const ConvergenceOptions& options) {
  if (delta_sequence.empty()) throw PreconditionError("empty delta sequence");
  ModularConvergence report;
  for (double delta : delta_sequence) {
    report.steps.push_back(delta);
    report.modular.push_back(
        gradient_modular(field, mollify_space(field, delta), coeff, params));
  }
  finish(report, options);
  return report;
}

double omega_inverse(const Coefficient::Modulus& omega, double y, double s_max) {
  if (!omega) throw PreconditionError("missing modulus");
  if (!(y > 0.0)) return 0.0;
  double hi = std::min(1.0, s_max);
  while (omega(hi) < y) {
    if (hi >= s_max) {
      throw PreconditionError(fmt::format(
          "{} lies above the range of the time modulus on [0, {}]", y, s_max));
    }
    hi = std::min(2.0 * hi, s_max);
  }
  double lo = 0.0;
  for (int it = 0; it < 4000 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (omega(mid) >= y ? hi : lo) = mid;
  }
  return hi;
}

double delta_eps(const Coefficient::Modulus& omega, double eps, double q, double ell,
                 double osc_u) {
  if (!(eps > 0.0) || !(q >= 1.0) || !(ell > 1.0)) {
    throw PreconditionError("delta_eps needs eps > 0, q >= 1, ell > 1");
  }
  if (!(osc_u > 0.0)) throw PreconditionError("delta_eps needs osc_u > 0");
  const double s = omega_inverse(omega, std::pow(eps, q * (ell - 1.0)));
  return s * s / (2.0 * osc_u);
}

double delta_eps(const Coefficient& coeff, double eps, double q, double ell, double osc_u) {
  return delta_eps(coeff.modulus(), eps, q, ell, osc_u);
}

double InfConvParams::radius(double eps, double ell, double delta_eps, double osc_u) {
  return std::max(std::pow(ell * std::pow(eps, ell - 1.0) * osc_u, 1.0 / ell),
                  std::sqrt(2.0 * delta_eps * osc_u));
}

InfConvParams InfConvParams::make(double p, double q, double eps, double ell,
                                  const Coefficient::Modulus& omega, double osc_u) {
  InfConvParams icp;
  icp.eps = eps;
  icp.ell = ell;
  icp.osc_u = osc_u;
  icp.delta_eps = dplab::delta_eps(omega, eps, q, ell, osc_u);
  icp.r_eps = radius(eps, ell, icp.delta_eps, osc_u);
  icp.validate(p);
  return icp;
}

void InfConvParams::validate(double p) const {
  if (!(eps > 0.0)) throw PreconditionError("eps > 0 violated");
  const double floor = std::max(3.0, p / (p - 1.0));
  if (!(ell > floor)) {
    throw PreconditionError(fmt::format("ell > max(3, p/(p-1)) = {} violated", floor));
  }
  if (!(delta_eps > 0.0)) throw PreconditionError("delta_eps > 0 violated");
  if (!(r_eps >= 0.0) || !(osc_u >= 0.0)) throw PreconditionError("r_eps, osc_u must be >= 0");
}

InfConvResult inf_convolution(const GridField& field, const InfConvParams& icp, bool cutoff) {
  const Grid1D& g = field.grid();
  const std::size_t nx = g.nodes(), nt = g.levels();
  std::vector<double> pen_x(nx), pen_t(nt);
  const double cx = icp.ell * std::pow(icp.eps, icp.ell - 1.0);
  for (std::size_t d = 0; d < nx; ++d) pen_x[d] = std::pow(double(d) * g.hx(), icp.ell) / cx;
  for (std::size_t d = 0; d < nt; ++d) {
    const double s = double(d) * g.ht();
    pen_t[d] = s * s / (2.0 * icp.delta_eps);
  }
  const double reach = 2.0 * icp.r_eps * (1.0 + 1e-12);
  const std::size_t dx_max =
      cutoff ? std::min(nx - 1, std::size_t(std::floor(reach / g.hx()))) : nx - 1;
  const std::size_t dt_max =
      cutoff ? std::min(nt - 1, std::size_t(std::floor(reach / g.ht()))) : nt - 1;

  InfConvResult out{GridField(g), GridField(g), GridField(g)};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t n = 0; n < nt; ++n) {
    const std::size_t m_lo = n > dt_max ? n - dt_max : 0;
    const std::size_t m_hi = std::min(nt - 1, n + dt_max);
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t j_lo = i > dx_max ? i - dx_max : 0;
      const std::size_t j_hi = std::min(nx - 1, i + dx_max);
      double best = field(n, i);
      std::size_t bm = n, bj = i;
      for (std::size_t m = m_lo; m <= m_hi; ++m) {
        const double pt = pen_t[m > n ? m - n : n - m];
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
          const double v = field(m, j) + pen_x[j > i ? j - i : i - j] + pt;
          if (v < best) {
            best = v;
            bm = m;
            bj = j;
          }
        }
      }
      out.value(n, i) = best;
      out.argmin_x(n, i) = g.x(bj);
      out.argmin_t(n, i) = g.t(bm);
    }
  }
  return out;
}

double semiconcavity_margin(const GridField& value, const InfConvParams& icp) {
  const Grid1D& g = value.grid();
  const double C = (icp.ell - 1.0) * std::pow(icp.r_eps, icp.ell - 2.0) /
                   std::pow(icp.eps, icp.ell - 1.0);
  // Second differences of the quadratic corrections are exact constants;
  // subtracting them separately avoids cancellation against t^2/delta.
  const double corr_x = 2.0 * C * g.hx() * g.hx();
  const double corr_t = 2.0 * g.ht() * g.ht() / icp.delta_eps;
  double margin = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < g.levels(); ++n) {
    for (std::size_t i = 1; i + 1 < g.nodes(); ++i) {
      const double d2 = value(n, i + 1) + value(n, i - 1) - 2.0 * value(n, i);
      margin = std::max(margin, d2 - corr_x);
    }
  }
  for (std::size_t n = 1; n + 1 < g.levels(); ++n) {
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      const double d2 = value(n + 1, i) + value(n - 1, i) - 2.0 * value(n, i);
      margin = std::max(margin, d2 - corr_t);
    }
  }
  return margin;
}

double infconv_derivative_defect(const InfConvResult& result, const InfConvParams& icp) {
  const GridField& u = result.value;
  const Grid1D& g = u.grid();
  const double hx = g.hx(), ht = g.ht();
  const double scale = std::pow(icp.eps, icp.ell - 1.0);
  // The time identity is only visible when the time shift spans grid steps.
  const bool time_resolved = std::sqrt(2.0 * icp.delta_eps * icp.osc_u) >= 2.0 * ht;
  auto same_branch = [&](std::size_t n, std::size_t i, std::size_t m, std::size_t j) {
    return std::abs(result.argmin_x(n, i) - result.argmin_x(m, j)) <= 1.5 * hx &&
           std::abs(result.argmin_t(n, i) - result.argmin_t(m, j)) <= 1.5 * ht;
  };
  double defect = 0.0;
  for (std::size_t n = 1; n + 1 < g.levels(); ++n) {
    for (std::size_t i = 1; i + 1 < g.nodes(); ++i) {
      if (!same_branch(n, i, n, i - 1) || !same_branch(n, i, n, i + 1)) continue;
      const double d = g.x(i) - result.argmin_x(n, i);
      const double gx = d * std::pow(std::abs(d), icp.ell - 2.0) / scale;
      const double cd = (u(n, i + 1) - u(n, i - 1)) / (2.0 * hx);
      defect = std::max(defect, std::abs(cd - gx) / (1.0 + std::abs(gx)));
      if (time_resolved && same_branch(n, i, n - 1, i) && same_branch(n, i, n + 1, i)) {
        const double gt = (g.t(n) - result.argmin_t(n, i)) / icp.delta_eps;
        const double ct = (u(n + 1, i) - u(n - 1, i)) / (2.0 * ht);
        defect = std::max(defect, std::abs(ct - gt) / (1.0 + std::abs(gt)));
      }
    }
  }
  return defect;
}

InfConvReport infconv_check(const GridField& field, const InfConvParams& icp,
                            const InfConvResult& result, const Coefficient::Modulus& omega,
                            double q) {
  const Grid1D& g = field.grid();
  InfConvReport rep;
  rep.max_above = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < g.levels(); ++n) {
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      rep.max_above = std::max(rep.max_above, result.value(n, i) - field(n, i));
      rep.max_shift_x = std::max(rep.max_shift_x, std::abs(g.x(i) - result.argmin_x(n, i)));
      rep.max_shift_t = std::max(rep.max_shift_t, std::abs(g.t(n) - result.argmin_t(n, i)));
    }
  }
  rep.time_shift_bound = omega_inverse(omega, std::pow(icp.eps, q * (icp.ell - 1.0)));
  rep.semiconcavity_C = (icp.ell - 1.0) * std::pow(icp.r_eps, icp.ell - 2.0) /
                        std::pow(icp.eps, icp.ell - 1.0);
  rep.semiconcavity_margin = semiconcavity_margin(result.value, icp);
  rep.derivative_defect = infconv_derivative_defect(result, icp);
  const double slack = 1.0 + 1e-12;
  rep.pass = rep.max_above <= 0.0 && rep.max_shift_x <= icp.r_eps * slack &&
             rep.max_shift_t <= icp.r_eps * slack &&
             rep.max_shift_t <= rep.time_shift_bound * slack && rep.semiconcavity_margin <= 1e-9;
  return rep;
}

}  // namespace dplab
