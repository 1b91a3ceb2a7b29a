#include "dplab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "dplab/error.hpp"
#include "dplab/fit.hpp"
#include "dplab/flux.hpp"

namespace dplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t node_index(double v, double lo, double h, std::size_t count, const char* axis) {
  const double r = (v - lo) / h;
  const auto k = std::llround(r);
  if (k < 0 || std::size_t(k) >= count || std::abs(r - double(k)) > 1e-9) {
    throw PreconditionError(fmt::format("{} = {} is not a grid coordinate", axis, v));
  }
  return std::size_t(k);
}

// max over levels and pairs with |x - y| <= r of |u(x,t) - u(y,t)|.
double spatial_modulus(const GridField& u, double r) {
  const Grid1D& g = u.grid();
  const auto span = static_cast<std::size_t>(std::floor(r / g.hx() + 1e-9));
  double w = 0.0;
  for (std::size_t n = 0; n < g.levels(); ++n) {
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      for (std::size_t j = i + 1; j <= std::min(g.nx, i + span); ++j) {
        w = std::max(w, std::abs(u(n, i) - u(n, j)));
      }
    }
  }
  return w;
}

}  // namespace

PhiProfile PhiProfile::holder(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw PreconditionError("holder profile needs alpha in (0, 1)");
  PhiProfile p;
  p.kind = Kind::holder;
  p.alpha = alpha;
  return p;
}

PhiProfile PhiProfile::lipschitz(double beta) {
  if (!(beta > 1.0 && beta < 2.0)) {
    throw PreconditionError("lipschitz profile needs beta in (1, 2)");
  }
  PhiProfile p;
  p.kind = Kind::lipschitz;
  p.beta = beta;
  p.kappa = std::pow(2.0, -beta - 1.0) / beta;
  return p;
}

double PhiProfile::c_phi() const {
  return kind == Kind::holder ? alpha * std::pow(2.0, alpha - 1.0) : 0.75;
}

double phi_eval(const PhiProfile& pr, double s) {
  if (s < 0.0) throw PreconditionError("phi is defined for s >= 0");
  if (pr.kind == PhiProfile::Kind::holder) return s == 0.0 ? 0.0 : std::pow(s, pr.alpha);
  return s - pr.kappa * std::pow(s, pr.beta);
}

double phi_d1(const PhiProfile& pr, double s) {
  if (pr.kind == PhiProfile::Kind::holder) {
    if (!(s > 0.0)) throw PreconditionError("phi' of the holder profile needs s > 0");
    return pr.alpha * std::pow(s, pr.alpha - 1.0);
  }
  if (s < 0.0) throw PreconditionError("phi is defined for s >= 0");
  return 1.0 - pr.kappa * pr.beta * std::pow(s, pr.beta - 1.0);
}

double phi_d2(const PhiProfile& pr, double s) {
  if (!(s > 0.0)) throw PreconditionError("phi'' needs s > 0");
  if (pr.kind == PhiProfile::Kind::holder) {
    return pr.alpha * (pr.alpha - 1.0) * std::pow(s, pr.alpha - 2.0);
  }
  return -pr.kappa * pr.beta * (pr.beta - 1.0) * std::pow(s, pr.beta - 2.0);
}

double doubling_K(const GridField& u) { return 8.0 * u.osc(); }

double doubling_psi(const GridField& u, double x, double y, double t, double L,
                    const PhiProfile& profile, const PsiAnchor& anchor, double K) {
  const Grid1D& g = u.grid();
  const std::size_t i = node_index(x, g.x_lo, g.hx(), g.nodes(), "x");
  const std::size_t j = node_index(y, g.x_lo, g.hx(), g.nodes(), "y");
  const std::size_t n = node_index(t, g.t_lo, g.ht(), g.levels(), "t");
  const double dx = x - anchor.x0, dy = y - anchor.y0, dt = t - anchor.t0;
  return u(n, i) - u(n, j) - L * phi_eval(profile, std::abs(x - y)) -
         0.5 * K * (dx * dx + dy * dy + dt * dt);
}

PsiScan psi_max_scan(const GridField& u, double L, const PhiProfile& profile,
                     const std::vector<PsiAnchor>& anchors, double K) {
  if (anchors.empty()) throw PreconditionError("psi scan needs at least one anchor");
  if (K <= 0.0) K = doubling_K(u);
  const Grid1D& g = u.grid();
  const std::size_t nodes = g.nodes();
  std::vector<double> lphi(nodes);
  for (std::size_t d = 0; d < nodes; ++d) lphi[d] = L * phi_eval(profile, double(d) * g.hx());

  PsiScan scan;
  scan.max_value = -kInf;
  std::vector<double> px(nodes);
  for (std::size_t a = 0; a < anchors.size(); ++a) {
    const PsiAnchor& an = anchors[a];
    double best = -kInf;
    std::size_t bi = 0, bj = 0, bn = 0;
    for (std::size_t i = 0; i < nodes; ++i) {
      const double d = g.x(i) - an.x0;
      px[i] = 0.5 * K * d * d;
    }
    for (std::size_t n = 0; n < g.levels(); ++n) {
      const double dt = g.t(n) - an.t0;
      const double pt = 0.5 * K * dt * dt;
      const auto row = u.level(n);
      for (std::size_t i = 0; i < nodes; ++i) {
        const double xi = row[i] - px[i] - pt;
        for (std::size_t j = 0; j < nodes; ++j) {
          const double dy = g.x(j) - an.y0;
          const double v = xi - row[j] - lphi[i > j ? i - j : j - i] - 0.5 * K * dy * dy;
          if (v > best) {
            best = v;
            bi = i;
            bj = j;
            bn = n;
          }
        }
      }
    }
    scan.per_anchor.push_back(best);
    if (best > scan.max_value) {
      scan.max_value = best;
      scan.arg_x = g.x(bi);
      scan.arg_y = g.x(bj);
      scan.arg_t = g.t(bn);
      scan.arg_anchor = a;
    }
  }
  return scan;
}

std::vector<PsiAnchor> default_anchors(const Grid1D& g, std::size_t per_axis) {
  if (per_axis == 0) throw PreconditionError("need at least one anchor per axis");
  const double xc = 0.5 * (g.x_lo + g.x_hi), xw = 0.25 * (g.x_hi - g.x_lo);
  const double tw = 0.5 * (g.t_hi - g.t_lo);
  std::vector<PsiAnchor> out;
  auto snap_x = [&](double v) { return g.x(std::size_t(std::llround((v - g.x_lo) / g.hx()))); };
  auto snap_t = [&](double v) { return g.t(std::size_t(std::llround((v - g.t_lo) / g.ht()))); };
  for (std::size_t a = 0; a < per_axis; ++a) {
    const double fx = per_axis == 1 ? 0.5 : double(a) / double(per_axis - 1);
    for (std::size_t b = 0; b < per_axis; ++b) {
      const double ft = per_axis == 1 ? 1.0 : double(b) / double(per_axis - 1);
      const double x0 = snap_x(xc - xw + 2.0 * xw * fx);
      out.push_back({x0, x0, snap_t(g.t_hi - tw + tw * ft)});
    }
  }
  return out;
}

PsiThreshold psi_threshold_search(const GridField& u, const PhiProfile& profile,
                                  const std::vector<PsiAnchor>& anchors, double K,
                                  double rel_tol) {
  if (K <= 0.0) K = doubling_K(u);
  PsiThreshold res;
  const double osc = u.osc();
  res.L_upper = 10.0 * osc / phi_eval(profile, u.grid().hx());
  auto nonpositive = [&](double L) { return psi_max_scan(u, L, profile, anchors, K).max_value <= 0.0; };
  if (osc == 0.0 || nonpositive(0.0)) return res;
  double lo = 0.0, hi = res.L_upper;
  if (!nonpositive(hi)) {
    throw ConvergenceError("psi stays positive at the upper bound for L", hi);
  }
  while (hi - lo > rel_tol * hi && res.iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    (nonpositive(mid) ? hi : lo) = mid;
    ++res.iterations;
  }
  res.L_star = hi;
  return res;
}

DerivativeBound derivative_bound_check(const GridField& u, const PsiScan& scan, double L,
                                       const PhiProfile& profile) {
  DerivativeBound out;
  const double z = std::abs(scan.arg_x - scan.arg_y);
  if (!(scan.max_value > 0.0) || z == 0.0 || !(L > 0.0)) return out;
  out.applicable = true;
  out.phi_prime = phi_d1(profile, z);
  out.bound = spatial_modulus(u, z) / (L * z);
  out.ok = out.phi_prime <= out.bound;
  return out;
}

double BarrierSpec::operator()(Point x, double t) const {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return u0 + A + Theta * (t - t0) + K * std::pow(std::sqrt(r2), beta);
}

double BarrierSpec::theta_exponent() const {
  return regime == BarrierRegime::singular ? params.q / beta : 1.0;
}

BarrierSpec barrier_make(BarrierRegime regime, const ExponentParams& params, double t0,
                         double s0, double osc_u, double L, double u0, std::size_t N) {
  params.validate();
  if (!(t0 < s0 && s0 <= 0.0)) throw PreconditionError("barrier needs t0 < s0 <= 0");
  if (!(s0 - t0 <= 1.0)) throw PreconditionError("barrier needs s0 - t0 <= 1");
  if (!(osc_u >= 0.0) || !(L >= 0.0)) throw PreconditionError("osc_u and L must be >= 0");
  if (N == 0) throw PreconditionError("dimension must be positive");
  BarrierSpec s;
  s.regime = regime;
  s.params = params;
  s.N = N;
  s.t0 = t0;
  s.s0 = s0;
  s.u0 = u0;
  s.osc_u = osc_u;
  s.L = L;
  const double p = params.p, q = params.q;
  if (regime == BarrierRegime::singular) {
    if (!(p < 2.0)) throw PreconditionError("singular barrier needs p < 2");
    s.beta = p / (p - 1.0);
    if (!((s.beta - 1.0) * (q - 1.0) >= 1.0)) {
      throw PreconditionError("(beta-1)(q-1) >= 1 violated");
    }
    s.A = std::pow(s0 - t0, p / (p + q));
    s.C0 = 2.0 * (osc_u + 1.0) * std::pow(L + 1.0, s.beta) * s.beta;
    s.K = s.C0 * std::pow(s.A, 1.0 - s.beta);
    s.rho = std::pow(s.A, (s.beta - 1.0) / s.beta);
  } else {
    if (!(p >= 2.0)) throw PreconditionError("degenerate barrier needs p >= 2");
    s.beta = 2.0;
    s.A = std::sqrt(s0 - t0);
    s.C0 = 4.0 * (osc_u + 1.0) * (L + 1.0) * (L + 1.0);
    s.K = s.C0 / s.A;
    s.rho = 1.0;
  }
  return s;
}

BarrierSamples barrier_samples(const BarrierSpec& spec, std::size_t nx, std::size_t nt) {
  if (nx < 2 || nt < 1) throw PreconditionError("need nx >= 2 and nt >= 1 samples");
  if (spec.N > 3) throw PreconditionError("sample lattices are limited to N <= 3");
  BarrierSamples out;
  out.N = spec.N;
  const double hx = 2.0 * spec.rho / double(nx - 1);
  std::vector<std::size_t> idx(spec.N, 0);
  std::size_t total = 1;
  for (std::size_t d = 0; d < spec.N; ++d) total *= nx;
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    std::vector<double> x(spec.N);
    double r2 = 0.0;
    for (std::size_t d = 0; d < spec.N; ++d) {
      x[d] = -spec.rho + double(rem % nx) * hx;
      rem /= nx;
      r2 += x[d] * x[d];
    }
    if (std::sqrt(r2) < hx || std::sqrt(r2) > spec.rho * (1.0 + 1e-12)) continue;
    out.x.push_back(std::move(x));
  }
  for (std::size_t n = 0; n < nt; ++n) {
    out.t.push_back(nt == 1 ? spec.s0 : spec.t0 + (spec.s0 - spec.t0) * double(n) / double(nt - 1));
  }
  return out;
}

double barrier_residual(const BarrierSpec& spec, const Coefficient& coeff, const Source& rhs,
                        const BarrierSamples& samples) {
  const double p = spec.params.p, q = spec.params.q, b = spec.beta;
  const double kb = spec.K * b;
  const double Nm1 = double(samples.N) - 1.0;
  // Radial flux F_m(r) = (K beta)^m r^{m(beta-1)} with |D phi| = K beta r^{beta-1}.
  auto F = [&](double m, double r) { return std::pow(kb, m) * std::pow(r, m * (b - 1.0)); };
  auto dF = [&](double m, double r) {
    return m * (b - 1.0) * std::pow(kb, m) * std::pow(r, m * (b - 1.0) - 1.0);
  };
  double worst = kInf;
  for (const auto& x : samples.x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    const double r = std::sqrt(r2);
    if (r == 0.0) continue;
    const double grad = kb * std::pow(r, b - 1.0);
    const double div_p = dF(p - 1.0, r) + Nm1 * F(p - 1.0, r) / r;
    const double div_q = dF(q - 1.0, r) + Nm1 * F(q - 1.0, r) / r;
    for (double t : samples.t) {
      const double a = coeff(Point(x), t);
      double da_dot = 0.0;
      for (std::size_t d = 0; d < x.size(); ++d) da_dot += coeff.partial_x(Point(x), t, d) * x[d] / r;
      const double div = div_p + a * div_q + da_dot * F(q - 1.0, r);
      const double xi = samples.N == 1 ? (x[0] > 0 ? grad : -grad) : grad;
      const double res = spec.Theta - div - rhs(x[0], t, xi);
      worst = std::min(worst, res);
    }
  }
  return worst;
}

ThetaSearch barrier_theta_search(const BarrierSpec& spec, const Coefficient& coeff,
                                 const Source& rhs, const BarrierSamples& samples,
                                 double theta_cap) {
  BarrierSpec s = spec;
  auto residual = [&](double theta) {
    s.Theta = theta;
    return barrier_residual(s, coeff, rhs, samples);
  };
  ThetaSearch out;
  double hi = 0.0, lo = 0.0;
  if (residual(0.0) < 0.0) {
    hi = 1.0;
    double last = residual(hi);
    while (last < 0.0) {
      lo = hi;
      hi *= 2.0;
      ++out.doublings;
      if (hi > theta_cap) throw ConvergenceError("Theta search exceeded its cap", last);
      last = residual(hi);
    }
    if (out.doublings == 0) lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (residual(mid) >= 0.0 ? hi : lo) = mid;
    }
  }
  out.Theta = hi;
  out.residual_min = residual(hi);
  out.C1 = hi / std::pow(spec.K, spec.theta_exponent());
  return out;
}

BarrierOrdering barrier_ordering_check(const GridField& u, const BarrierSpec& spec) {
  const Grid1D& g = u.grid();
  BarrierOrdering out;
  out.max_gap = -kInf;
  out.boundary_gap = -kInf;
  const double tol = 1e-12 * std::max(1.0, spec.rho);
  for (std::size_t n = 0; n < g.levels(); ++n) {
    const double t = g.t(n);
    if (t < spec.t0 - 1e-12 || t > spec.s0 + 1e-12) continue;
    const bool bottom = std::abs(t - spec.t0) <= 1e-12;
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      const double x = g.x(i);
      if (std::abs(x) > spec.rho + tol) continue;
      const double gap = u(n, i) - spec(x, t);
      out.max_gap = std::max(out.max_gap, gap);
      ++out.nodes;
      const bool lateral = std::abs(x) + g.hx() > spec.rho + tol;
      if (bottom || lateral) out.boundary_gap = std::max(out.boundary_gap, gap);
    }
  }
  if (out.nodes == 0) throw PreconditionError("barrier cylinder contains no grid nodes");
  return out;
}

ModulusReport modulus_estimate(const GridField& u, const Cylinder& inner) {
  const Grid1D& g = u.grid();
  if (!(inner.x_lo > g.x_lo && inner.x_hi < g.x_hi && inner.t_lo > g.t_lo &&
        inner.t_hi <= g.t_hi + 1e-12 && inner.x_lo < inner.x_hi && inner.t_lo < inner.t_hi)) {
    throw PreconditionError("inner cylinder must lie strictly inside the grid");
  }
  const auto i_lo = std::size_t(std::ceil((inner.x_lo - g.x_lo) / g.hx() - 1e-9));
  const auto i_hi = std::size_t(std::floor((inner.x_hi - g.x_lo) / g.hx() + 1e-9));
  const auto n_lo = std::size_t(std::ceil((inner.t_lo - g.t_lo) / g.ht() - 1e-9));
  const auto n_hi = std::min(g.nt, std::size_t(std::floor((inner.t_hi - g.t_lo) / g.ht() + 1e-9)));

  ModulusReport rep;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    for (std::size_t i = i_lo; i < i_hi; ++i) {
      rep.lip_space_est = std::max(rep.lip_space_est, std::abs(u(n, i + 1) - u(n, i)) / g.hx());
      ++rep.space_samples;
    }
  }

  std::vector<double> lags, sups;
  for (std::size_t k = 2; n_lo + k <= n_hi && 2 * k <= n_hi - n_lo; k *= 2) {
    double sup = 0.0;
    for (std::size_t n = n_lo; n + k <= n_hi; ++n) {
      for (std::size_t i = i_lo; i <= i_hi; ++i) sup = std::max(sup, std::abs(u(n + k, i) - u(n, i)));
    }
    lags.push_back(double(k) * g.ht());
    sups.push_back(sup);
  }
  rep.time_lags = lags.size();
  const bool positive = std::all_of(sups.begin(), sups.end(), [](double s) { return s > 0.0; });
  if (lags.size() >= 2 && positive) {
    const LineFit fit = fit_loglog(lags, sups);
    rep.time_alpha_est = fit.slope;
    rep.fit_r2 = std::clamp(fit.r2, 0.0, 1.0);
    rep.alpha_defined = true;
  } else {
    rep.time_alpha_est = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace dplab
