#include "dplab/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <fmt/format.h>

#include "dplab/error.hpp"

namespace dplab {

namespace {

double param_or(const ParamMap& params, std::string_view key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double identity_modulus(double s) { return std::abs(s); }
double zero_modulus(double) { return 0.0; }

}  // namespace

Coefficient::Coefficient()
    : Coefficient(
          "constant", [](Point, double) { return 0.0; }, 0.0, zero_modulus,
          [](Point, double, std::size_t) { return 0.0; }) {}

Coefficient::Coefficient(std::string name, Eval eval, double lip_space,
                         Modulus omega_time, Partial partial,
                         std::optional<double> C_a)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      lip_space_(lip_space),
      omega_(std::move(omega_time)),
      partial_(std::move(partial)),
      C_a_(C_a) {
  if (!eval_) throw PreconditionError("coefficient needs an evaluator");
  if (!omega_) omega_ = zero_modulus;
  if (!(lip_space_ >= 0.0)) throw PreconditionError("lip_space must be >= 0");
  if (C_a_ && *C_a_ < 1.0) throw PreconditionError("C_a must be >= 1");
}

double Coefficient::partial_x(Point x, double t, std::size_t axis) const {
  if (partial_) return partial_(x, t, axis);
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> xm(x.begin(), x.end());
  const double h = 1e-6 * std::max(1.0, std::abs(x[axis]));
  xp[axis] += h;
  xm[axis] -= h;
  return (eval_(xp, t) - eval_(xm, t)) / (2.0 * h);
}

std::vector<std::string> builtin_coefficient_names() {
  return {"constant",      "neg_time_ramp", "line_ramp",
          "pos_time_ramp", "smooth_bump",   "power_space"};
}

Coefficient builtin_coefficient(std::string_view name, const ParamMap& params) {
  if (name == "constant") {
    const double c = param_or(params, "c", 1.0);
    if (c < 0.0) throw PreconditionError("constant coefficient must be >= 0");
    return Coefficient(
        "constant", [c](Point, double) { return c; }, 0.0, zero_modulus,
        [](Point, double, std::size_t) { return 0.0; },
        c > 0.0 ? std::optional<double>(1.0) : std::nullopt);
  }
  if (name == "neg_time_ramp") {
    return Coefficient(
        "neg_time_ramp", [](Point, double t) { return std::max(-t, 0.0); }, 0.0,
        identity_modulus, [](Point, double, std::size_t) { return 0.0; });
  }
  if (name == "line_ramp") {
    // Kink along x + t + 1 = 0; the one-sided derivative is reported there.
    return Coefficient(
        "line_ramp",
        [](Point x, double t) { return std::max(-(x[0] + t + 1.0), 0.0); }, 1.0,
        identity_modulus, [](Point x, double t, std::size_t axis) {
          return axis == 0 && x[0] + t + 1.0 < 0.0 ? -1.0 : 0.0;
        });
  }
  if (name == "pos_time_ramp") {
    const double offset = param_or(params, "offset", 1.0);
    return Coefficient(
        "pos_time_ramp",
        [offset](Point, double t) { return std::max(t + offset, 0.0); }, 0.0,
        identity_modulus, [](Point, double, std::size_t) { return 0.0; });
  }
  if (name == "smooth_bump") {
    const double amp = param_or(params, "amp", 1.0);
    const double center = param_or(params, "center", 0.5);
    const double width = param_or(params, "width", 0.2);
    if (amp < 0.0 || width <= 0.0) {
      throw PreconditionError("smooth_bump needs amp >= 0 and width > 0");
    }
    // max |d/dx| of a Gaussian is attained at |x - center| = width.
    const double lip = amp / width * std::exp(-0.5);
    return Coefficient(
        "smooth_bump",
        [=](Point x, double) {
          const double d = x[0] - center;
          return amp * std::exp(-d * d / (2.0 * width * width));
        },
        lip, zero_modulus,
        [=](Point x, double, std::size_t axis) {
          if (axis != 0) return 0.0;
          const double d = x[0] - center;
          return -amp * d / (width * width) *
                 std::exp(-d * d / (2.0 * width * width));
        });
  }
  if (name == "power_space") {
    const double amp = param_or(params, "amp", 1.0);
    const double center = param_or(params, "center", 0.0);
    const double k = param_or(params, "exponent", 2.0);
    const double radius = param_or(params, "radius", 1.0);
    if (amp < 0.0 || k < 1.0 || radius <= 0.0) {
      throw PreconditionError("power_space needs amp >= 0, exponent >= 1, radius > 0");
    }
    return Coefficient(
        "power_space",
        [=](Point x, double) { return amp * std::pow(std::abs(x[0] - center), k); },
        amp * k * std::pow(radius, k - 1.0), zero_modulus,
        [=](Point x, double, std::size_t axis) {
          if (axis != 0) return 0.0;
          const double d = x[0] - center;
          if (d == 0.0) return 0.0;
          return amp * k * std::pow(std::abs(d), k - 1.0) * (d > 0 ? 1.0 : -1.0);
        });
  }
  throw PreconditionError(fmt::format("unknown coefficient '{}'", name));
}

AlmostMonotoneReport check_almost_increasing(const Coefficient& coeff,
                                             const Cylinder& cylinder,
                                             std::size_t sample_count,
                                             AlmostMonotone direction) {
  if (sample_count < 2) throw PreconditionError("sample_count must be >= 2");
  AlmostMonotoneReport report;
  const double hx = (cylinder.x_hi - cylinder.x_lo) / double(sample_count - 1);
  const double ht = (cylinder.t_hi - cylinder.t_lo) / double(sample_count - 1);
  std::vector<double> column(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double x = cylinder.x_lo + double(i) * hx;
    for (std::size_t n = 0; n < sample_count; ++n) {
      column[n] = coeff(x, cylinder.t_lo + double(n) * ht);
    }
    for (std::size_t n = 0; n < sample_count; ++n) {
      for (std::size_t m = n; m < sample_count; ++m) {
        // increasing: compare a(earlier) against a(later); decreasing mirrors.
        const double num =
            direction == AlmostMonotone::increasing ? column[n] : column[m];
        const double den =
            direction == AlmostMonotone::increasing ? column[m] : column[n];
        ++report.pairs_checked;
        if (num <= 0.0) continue;
        if (den <= 0.0) {
          report.C_a_observed = std::numeric_limits<double>::infinity();
          report.ok = false;
          continue;
        }
        report.C_a_observed = std::max(report.C_a_observed, num / den);
      }
    }
  }
  return report;
}

double spatial_lipschitz_estimate(const Coefficient& coeff, const Cylinder& region,
                                  std::size_t nx, std::size_t nt) {
  if (nx < 1) throw PreconditionError("nx must be >= 1");
  const double hx = (region.x_hi - region.x_lo) / double(nx);
  const double ht = nt == 0 ? 0.0 : (region.t_hi - region.t_lo) / double(nt);
  double lip = 0.0;
  for (std::size_t n = 0; n <= nt; ++n) {
    const double t = region.t_lo + double(n) * ht;
    double prev = coeff(region.x_lo, t);
    for (std::size_t i = 1; i <= nx; ++i) {
      const double next = coeff(region.x_lo + double(i) * hx, t);
      lip = std::max(lip, std::abs(next - prev) / hx);
      prev = next;
    }
  }
  return lip;
}

}  // namespace dplab
