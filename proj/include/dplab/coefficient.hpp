#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dplab {

using Point = std::span<const double>;
using ParamMap = std::map<std::string, double, std::less<>>;

/// Space-time box [x_lo, x_hi] x [t_lo, t_hi] (one space dimension).
struct Cylinder {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double t_lo = 0.0;
  double t_hi = 1.0;
};

/// Modulating coefficient a(x, t) >= 0 given in closed form, together with
/// its structural constants: a spatial Lipschitz bound and a time modulus
/// omega with |a(x,t) - a(x,s)| <= omega(|t-s|).
class Coefficient {
 public:
  using Eval = std::function<double(Point, double)>;
  /// Partial derivative d a / d x_axis; may be left empty.
  using Partial = std::function<double(Point, double, std::size_t)>;
  using Modulus = std::function<double(double)>;

  /// a == 0.
  Coefficient();
  Coefficient(std::string name, Eval eval, double lip_space, Modulus omega_time,
              Partial partial = {}, std::optional<double> C_a = std::nullopt);

  double operator()(Point x, double t) const { return eval_(x, t); }
  double operator()(double x, double t) const {
    return eval_(Point(&x, 1), t);
  }

  /// Analytic partial derivative when provided, centered difference
  /// otherwise.
  double partial_x(Point x, double t, std::size_t axis) const;
  double partial_x(double x, double t) const {
    return partial_x(Point(&x, 1), t, 0);
  }

  double lip_space() const noexcept { return lip_space_; }
  double omega_time(double s) const { return omega_(s); }
  const Modulus& modulus() const noexcept { return omega_; }
  std::optional<double> C_a() const noexcept { return C_a_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
  Eval eval_;
  double lip_space_;
  Modulus omega_;
  Partial partial_;
  std::optional<double> C_a_;
};

/// Names accepted by builtin_coefficient().
std::vector<std::string> builtin_coefficient_names();

/// Closed-form coefficient families. Parameters (with defaults):
///   constant       c=1
///   neg_time_ramp  a = max(-t, 0)
///   line_ramp      a = max(-(x + t + 1), 0)
///   pos_time_ramp  a = max(t + offset, 0), offset=1
///   smooth_bump    a = amp exp(-(x-center)^2 / (2 width^2)), amp=1 center=0.5 width=0.2
///   power_space    a = amp |x-center|^exponent on |x-center| <= radius,
///                  amp=1 center=0 exponent=2 radius=1
Coefficient builtin_coefficient(std::string_view name, const ParamMap& params = {});

/// Which mirrored form of the almost-monotonicity condition to test.
///   increasing: a(x,t) <= C a(x,s) whenever t <= s
///   decreasing: a(x,t) <= C a(x,s) whenever s <= t
enum class AlmostMonotone { increasing, decreasing };

struct AlmostMonotoneReport {
  bool ok = true;
  double C_a_observed = 1.0;  // +inf when no finite constant exists
  std::size_t pairs_checked = 0;
};

/// Scans `sample_count` x `sample_count` lattice points of the cylinder and
/// all same-x time pairs in the requested order.
AlmostMonotoneReport check_almost_increasing(
    const Coefficient& coeff, const Cylinder& cylinder, std::size_t sample_count,
    AlmostMonotone direction = AlmostMonotone::increasing);

/// Largest |a(x+h,t) - a(x,t)| / h over the edges of an nx-by-nt lattice.
double spatial_lipschitz_estimate(const Coefficient& coeff, const Cylinder& region,
                                  std::size_t nx, std::size_t nt);

}  // namespace dplab
