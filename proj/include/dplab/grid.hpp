#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dplab/coefficient.hpp"

namespace dplab {

/// Uniform vertex-centered lattice on [x_lo, x_hi] x [t_lo, t_hi] with nx
/// space cells (nx+1 nodes) and nt time steps (nt+1 levels).
struct Grid1D {
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::size_t nx = 64;
  double t_lo = 0.0;
  double t_hi = 1.0;
  std::size_t nt = 64;

  double hx() const noexcept { return (x_hi - x_lo) / double(nx); }
  double ht() const noexcept { return (t_hi - t_lo) / double(nt); }
  double x(std::size_t i) const noexcept { return x_lo + double(i) * hx(); }
  double t(std::size_t n) const noexcept { return t_lo + double(n) * ht(); }
  std::size_t nodes() const noexcept { return nx + 1; }
  std::size_t levels() const noexcept { return nt + 1; }
  Cylinder cylinder() const noexcept { return {x_lo, x_hi, t_lo, t_hi}; }

  void validate() const;
};

/// Scalar field sampled on a Grid1D; values stored level by level.
class GridField {
 public:
  GridField() = default;
  explicit GridField(const Grid1D& grid, double fill = 0.0);

  /// Samples f(x, t) at every node.
  static GridField sample(const Grid1D& grid,
                          const std::function<double(double, double)>& f);

  const Grid1D& grid() const noexcept { return grid_; }

  double& operator()(std::size_t level, std::size_t node) {
    return values_[level * grid_.nodes() + node];
  }
  double operator()(std::size_t level, std::size_t node) const {
    return values_[level * grid_.nodes() + node];
  }

  std::span<double> level(std::size_t n) {
    return {values_.data() + n * grid_.nodes(), grid_.nodes()};
  }
  std::span<const double> level(std::size_t n) const {
    return {values_.data() + n * grid_.nodes(), grid_.nodes()};
  }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double min() const;
  double max() const;
  double osc() const { return max() - min(); }
  double sup_abs() const;
  bool all_finite() const;

  /// Forward difference (u_{i+1} - u_i)/hx on cell `cell` of level `level`.
  double cell_gradient(std::size_t level, std::size_t cell) const {
    return ((*this)(level, cell + 1) - (*this)(level, cell)) / grid_.hx();
  }

  GridField& operator+=(double c);
  GridField& operator*=(double c);

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

/// Same lattice (node counts and extents equal up to 1e-12).
bool same_grid(const Grid1D& a, const Grid1D& b);

}  // namespace dplab
