#include "dplab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "dplab/error.hpp"
#include "dplab/flux.hpp"

namespace dplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double gradient_sup(const GridField& u) {
  const Grid1D& g = u.grid();
  double s = 0.0;
  for (std::size_t n = 0; n < g.levels(); ++n) {
    for (std::size_t c = 0; c < g.nx; ++c) s = std::max(s, std::abs(u.cell_gradient(n, c)));
  }
  return s;
}

double time_weight(const Grid1D& g, std::size_t n) {
  return (n == 0 || n == g.nt) ? 0.5 * g.ht() : g.ht();
}

double bump1(double y) { return y * y < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - y * y)) : 0.0; }

double bump1_d(double y) {
  if (!(y * y < 1.0)) return 0.0;
  const double w = 1.0 - y * y;
  return bump1(y) * (-2.0 * y / (w * w));
}

}  // namespace

CheckReport comparison_check(const GridField& u, const GridField& v, double tol) {
  if (!same_grid(u.grid(), v.grid())) throw PreconditionError("fields live on different grids");
  const Grid1D& g = u.grid();
  CheckReport rep;
  rep.name = "comparison";
  rep.tolerance = tol;
  double boundary = -kInf;
  double bx = 0.0, bt = 0.0;
  rep.worst_value = -kInf;
  for (std::size_t n = 0; n < g.levels(); ++n) {
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      const double d = u(n, i) - v(n, i);
      const bool on_boundary = n == 0 || i == 0 || i == g.nx;
      if (on_boundary) {
        if (d > boundary) {
          boundary = d;
          bx = g.x(i);
          bt = g.t(n);
        }
      } else if (d > rep.worst_value) {
        rep.worst_value = d;
        rep.worst_x = g.x(i);
        rep.worst_t = g.t(n);
      }
    }
  }
  if (boundary > tol) {
    throw HypothesisViolated(fmt::format(
        "hypothesis violated: u - v = {} > {} on the parabolic boundary at (x, t) = ({}, {})",
        boundary, tol, bx, bt));
  }
  rep.pass = rep.worst_value <= tol;
  rep.metadata["boundary_max"] = boundary;
  rep.metadata["grad_sup_u"] = gradient_sup(u);
  rep.metadata["grad_sup_v"] = gradient_sup(v);
  return rep;
}

double default_eta_min(const GridField& u) {
  return 5.0 * std::sqrt(u.grid().hx()) * u.osc();
}

CheckReport class_S_check(const GridField& u, const ExponentParams& params,
                          const Coefficient& coeff, double eta_min, double tol) {
  const Grid1D& g = u.grid();
  const double hx = g.hx(), ht = g.ht();
  CheckReport rep;
  rep.name = "class_S";
  rep.tolerance = tol;
  rep.worst_value = -kInf;
  std::size_t checked = 0, skipped = 0;
  Vector eta(1);
  Matrix X(1, 1);
  for (std::size_t n = 1; n + 1 < g.levels(); ++n) {
    const double t = g.t(n);
    for (std::size_t i = 1; i < g.nx; ++i) {
      eta[0] = (u(n, i + 1) - u(n, i - 1)) / (2.0 * hx);
      if (!(std::abs(eta[0]) >= eta_min) || eta[0] == 0.0) {
        ++skipped;
        continue;
      }
      ++checked;
      const double x = g.x(i);
      const double theta = (u(n + 1, i) - u(n - 1, i)) / (2.0 * ht);
      X(0, 0) = (u(n, i + 1) - 2.0 * u(n, i) + u(n, i - 1)) / (hx * hx);
      const double a = coeff(x, t);
      const double F = operator_F(params, a, eta, X);
      const double gb = bound_g(params, coeff.lip_space(), a, eta);
      const double margin = std::max(-(theta - F + gb), theta - F - gb);
      if (margin > rep.worst_value) {
        rep.worst_value = margin;
        rep.worst_x = x;
        rep.worst_t = t;
      }
    }
  }
  if (checked == 0) rep.worst_value = 0.0;
  rep.pass = rep.worst_value <= tol;
  const double scale = (hx + ht) * u.osc();
  rep.metadata["checked"] = double(checked);
  rep.metadata["skipped"] = double(skipped);
  rep.metadata["eta_min"] = eta_min;
  rep.metadata["c_observed"] = scale > 0.0 ? std::max(0.0, rep.worst_value) / scale : 0.0;
  return rep;
}

double TensorBump::operator()(double x, double t) const {
  return bump1((x - xc) / rx) * bump1((t - tc) / rt);
}

double TensorBump::dx(double x, double t) const {
  return bump1_d((x - xc) / rx) / rx * bump1((t - tc) / rt);
}

double TensorBump::dt(double x, double t) const {
  return bump1((x - xc) / rx) * bump1_d((t - tc) / rt) / rt;
}

CaccioppoliResult caccioppoli_check(const GridField& u, const TensorBump& cutoff,
                                    const Coefficient& coeff, const ExponentParams& params,
                                    std::optional<double> M, double cap) {
  const Grid1D& g = u.grid();
  const double p = params.p, q = params.q, hx = g.hx();
  if (!(cutoff.rx > 0.0) || !(cutoff.rt > 0.0)) throw PreconditionError("cutoff radii must be positive");

  double sup_spt = 0.0;
  for (std::size_t n = 0; n < g.levels(); ++n) {
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      const bool in_x = std::abs(g.x(i) - cutoff.xc) < cutoff.rx + hx;
      const bool in_t = std::abs(g.t(n) - cutoff.tc) < cutoff.rt;
      if (in_x && in_t) sup_spt = std::max(sup_spt, std::abs(u(n, i)));
    }
  }
  const double m = M.value_or(sup_spt);
  if (m < sup_spt * (1.0 - 1e-14)) {
    throw PreconditionError(fmt::format("M = {} is below sup |u| = {} on the support", m, sup_spt));
  }
  const double e1 = p / (p - params.beta1);
  const double e2 = params.beta2 < p ? p / (p - params.beta2) : q / (q - params.beta2);
  const double zero_order = std::pow(m, e1) + std::pow(m, e2) + m;
  const double mpq = std::max(std::pow(m, p), std::pow(m, q));

  CaccioppoliResult res;
  res.M = m;
  for (std::size_t n = 0; n < g.levels(); ++n) {
    const double t = g.t(n), wt = time_weight(g, n);
    for (std::size_t c = 0; c < g.nx; ++c) {
      const double x = g.x(c) + 0.5 * hx;
      const double xi = cutoff(x, t);
      if (xi == 0.0) continue;
      const double a = coeff(x, t);
      const double xq = std::pow(xi, q);
      const double du = std::abs(u.cell_gradient(n, c));
      const double dxi = std::abs(cutoff.dx(x, t));
      const double dtxq = q * std::pow(xi, q - 1.0) * std::abs(cutoff.dt(x, t));
      res.lhs += wt * hx * xq * (std::pow(du, p) + a * std::pow(du, q));
      res.rhs += wt * hx *
                 (m * m * dtxq + mpq * (std::pow(dxi, p) + a * std::pow(dxi, q)) + zero_order * xq);
    }
  }
  res.ratio = res.rhs > 0.0 ? res.lhs / res.rhs : (res.lhs > 0.0 ? kInf : 0.0);
  res.pass = res.ratio <= cap;
  return res;
}

double lr_modular(const GridField& u1, const GridField& u2, double r1, double r2,
                  const Coefficient& coeff, const ExponentParams& params) {
  if (!(r1 > 1.0 && r1 < params.p) || !(r2 > 1.0 && r2 < params.q)) {
    throw PreconditionError(fmt::format(
        "need 1 < r1 < p and 1 < r2 < q (r1 = {}, r2 = {}, p = {}, q = {})", r1, r2, params.p,
        params.q));
  }
  if (!same_grid(u1.grid(), u2.grid())) throw PreconditionError("fields live on different grids");
  const Grid1D& g = u1.grid();
  double sum = 0.0;
  for (std::size_t n = 0; n < g.levels(); ++n) {
    const double t = g.t(n), wt = time_weight(g, n);
    for (std::size_t c = 0; c < g.nx; ++c) {
      const double d = std::abs(u1.cell_gradient(n, c) - u2.cell_gradient(n, c));
      if (d == 0.0) continue;
      const double a = coeff(g.x(c) + 0.5 * g.hx(), t);
      sum += wt * g.hx() * (std::pow(d, r1) + a * std::pow(d, r2));
    }
  }
  return sum;
}

InequalitySweep vector_inequality_sweep(double r, std::size_t pairs, std::uint64_t seed,
                                        double slack) {
  if (!(r > 1.0)) throw PreconditionError("inequality exponent must exceed 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> decade(-3.0, 2.0);
  InequalitySweep out;
  out.r = r;
  out.pairs = pairs;
  Vector a, b;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto dim = static_cast<Eigen::Index>(1 + k % 3);
    a.resize(dim);
    b.resize(dim);
    const double sa = std::pow(10.0, decade(rng)), sb = std::pow(10.0, decade(rng));
    for (Eigen::Index d = 0; d < dim; ++d) {
      a[d] = sa * n01(rng);
      b[d] = sb * n01(rng);
    }
    const auto mono = r < 2.0 ? monotone_singular(a, b, r) : monotone_degenerate(a, b, r);
    if (mono.rhs > 0.0) {
      const double shortfall = (mono.rhs - mono.lhs) / mono.rhs;
      out.worst_monotone = std::max(out.worst_monotone, shortfall);
      if (shortfall > slack) ++out.monotone_violations;
    }
    const auto cont = continuity_bound(a, b, r);
    if (cont.rhs > 0.0) {
      const double excess = (cont.lhs - cont.rhs) / cont.rhs;
      out.worst_continuity = std::max(out.worst_continuity, excess);
      if (excess > slack) ++out.continuity_violations;
    } else if (cont.lhs > 0.0) {
      ++out.continuity_violations;
    }
  }
  return out;
}

}  // namespace dplab
