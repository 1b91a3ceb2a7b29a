#include "dplab/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "dplab/error.hpp"

namespace dplab {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

bool finite_all(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

void ExponentParams::validate() const {
  require(finite_all({p, q, beta1, beta2, C_f}), "exponents must be finite");
  require(p > 1.0, fmt::format("p > 1 violated (p = {})", p));
  require(q >= p, fmt::format("q >= p violated (p = {}, q = {})", p, q));
  require(beta1 >= 1.0 && beta1 < p,
          fmt::format("1 <= beta1 < p violated (beta1 = {}, p = {})", beta1, p));
  require(beta2 >= 1.0 && beta2 < q,
          fmt::format("1 <= beta2 < q violated (beta2 = {}, q = {})", beta2, q));
  require(C_f >= 0.0, fmt::format("C_f >= 0 violated (C_f = {})", C_f));
}

bool ExponentParams::admissible(bool borderline_ok) const {
  validate();
  if (q < p + 1.0) return true;
  return borderline_ok && q == p + 1.0;
}

void MultiPhaseParams::validate() const {
  require(finite_all({p, q, s, beta1, beta2, beta3, C_f}),
          "exponents must be finite");
  require(p > 1.0, fmt::format("p > 1 violated (p = {})", p));
  require(p <= q && q <= s,
          fmt::format("p <= q <= s violated (p = {}, q = {}, s = {})", p, q, s));
  require(beta1 >= 1.0 && beta1 < p, "1 <= beta1 < p violated");
  require(beta2 >= 1.0 && beta2 < q, "1 <= beta2 < q violated");
  require(beta3 >= 1.0 && beta3 < s, "1 <= beta3 < s violated");
  require(C_f >= 0.0, "C_f >= 0 violated");
}

double gamma_exponent(const ExponentParams& params) {
  const auto& [p, q, b1, b2, cf] = params;
  return std::max({q - p, b1 - p + 1.0, b2 - q + 1.0}) + 1.0;
}

double gamma_multiphase(const MultiPhaseParams& params) {
  const auto& m = params;
  return std::max({m.s - m.p, m.beta1 - m.p + 1.0, m.beta2 - m.q + 1.0,
                   m.beta3 - m.s + 1.0}) +
         1.0;
}

double time_exponent_target(double p, double q) {
  require(p > 1.0 && q >= p, "time_exponent_target requires 1 < p <= q");
  return p < 2.0 ? p / (p + q) : 0.5;
}

double lipschitz_profile_beta(double alpha, double gamma) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  const double m = alpha / 2.0 + (gamma - 1.0) * (1.0 - alpha);
  if (!(m < 1.0)) {
    throw PreconditionError(fmt::format(
        "alpha/2 + (gamma-1)(1-alpha) = {} >= 1: Lipschitz upgrade inapplicable",
        m));
  }
  return std::min(alpha / 2.0 + 1.0, (1.0 + (2.0 - m)) / 2.0);
}

}  // namespace dplab
