#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "dplab/coefficient.hpp"
#include "dplab/grid.hpp"
#include "dplab/params.hpp"
#include "dplab/solver.hpp"

namespace dplab {

struct CheckReport {
  std::string name;
  bool pass = true;
  double worst_value = 0.0;
  double worst_x = 0.0;
  double worst_t = 0.0;
  double tolerance = 0.0;
  std::map<std::string, double> metadata;
};

/// Interior comparison of u against v. Throws HypothesisViolated when
/// u > v + tol somewhere on the parabolic boundary (bottom level and lateral
/// nodes); otherwise pass iff max interior (u - v) <= tol. Metadata carries
/// the gradient sup-norms of both fields.
CheckReport comparison_check(const GridField& u, const GridField& v, double tol);

/// 5 hx^{1/2} osc u.
double default_eta_min(const GridField& u);

/// Discrete jets at interior nodes: centered time difference, centered
/// gradient, second difference. Where |eta| >= eta_min checks
///   theta - F + g >= -tol  and  theta - F - g <= tol.
/// Metadata: checked, skipped, and the margin constant
/// c = worst / ((hx + ht) osc).
CheckReport class_S_check(const GridField& u, const ExponentParams& params,
                          const Coefficient& coeff, double eta_min, double tol);

/// Closed-form cutoff b((x-xc)/rx) b((t-tc)/rt), b(y) = exp(1 - 1/(1-y^2)).
struct TensorBump {
  double xc = 0.0;
  double rx = 0.5;
  double tc = 0.0;
  double rt = 0.5;

  double operator()(double x, double t) const;
  double dx(double x, double t) const;
  double dt(double x, double t) const;
};

struct CaccioppoliResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double M = 0.0;
  bool pass = true;
};

/// lhs = sum xi^q (|Du|^p + a|Du|^q), rhs = sum M^2 |d_t xi^q|
///   + max(M^p, M^q)(|D xi|^p + a|D xi|^q) + (M^{p/(p-b1)} + M^{e2} + M) xi^q,
/// e2 = p/(p-b2) when b2 < p and q/(q-b2) otherwise; cell midpoints in x,
/// trapezoid in t. M defaults to sup |u| on the support of xi and must not
/// be smaller. pass iff ratio <= cap.
CaccioppoliResult caccioppoli_check(const GridField& u, const TensorBump& cutoff,
                                    const Coefficient& coeff, const ExponentParams& params,
                                    std::optional<double> M = std::nullopt, double cap = 100.0);

/// sum |Du1 - Du2|^r1 + a |Du1 - Du2|^r2 over cells, trapezoid in time.
/// Requires 1 < r1 < p and 1 < r2 < q.
double lr_modular(const GridField& u1, const GridField& u2, double r1, double r2,
                  const Coefficient& coeff, const ExponentParams& params);

struct InequalitySweep {
  double r = 2.0;
  std::size_t pairs = 0;
  std::size_t monotone_violations = 0;
  std::size_t continuity_violations = 0;
  double worst_monotone = 0.0;    // max relative shortfall of lhs below rhs
  double worst_continuity = 0.0;  // max relative excess of lhs over rhs
};

/// Random vector pairs (dimension 1 to 3, magnitudes over five decades)
/// against the monotonicity inequality of the regime of r and the
/// continuity bound, with relative slack `slack`.
InequalitySweep vector_inequality_sweep(double r, std::size_t pairs, std::uint64_t seed,
                                        double slack = 1e-12);

}  // namespace dplab
