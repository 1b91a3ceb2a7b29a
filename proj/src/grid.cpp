#include "dplab/grid.hpp"

#include <algorithm>
#include <cmath>

#include "dplab/error.hpp"

namespace dplab {

void Grid1D::validate() const {
  if (nx < 2 || nt < 1) throw PreconditionError("grid needs nx >= 2 and nt >= 1");
  if (!(x_hi > x_lo) || !(t_hi > t_lo)) {
    throw PreconditionError("grid extents must be positive");
  }
}

GridField::GridField(const Grid1D& grid, double fill)
    : grid_(grid), values_(grid.nodes() * grid.levels(), fill) {
  grid_.validate();
}

GridField GridField::sample(const Grid1D& grid,
                            const std::function<double(double, double)>& f) {
  GridField field(grid);
  for (std::size_t n = 0; n < grid.levels(); ++n) {
    const double t = grid.t(n);
    for (std::size_t i = 0; i < grid.nodes(); ++i) field(n, i) = f(grid.x(i), t);
  }
  return field;
}

double GridField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double GridField::sup_abs() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

bool GridField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

GridField& GridField::operator+=(double c) {
  for (double& v : values_) v += c;
  return *this;
}

GridField& GridField::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

bool same_grid(const Grid1D& a, const Grid1D& b) {
  auto close = [](double u, double v) { return std::abs(u - v) <= 1e-12 * (1.0 + std::abs(u)); };
  return a.nx == b.nx && a.nt == b.nt && close(a.x_lo, b.x_lo) &&
         close(a.x_hi, b.x_hi) && close(a.t_lo, b.t_lo) && close(a.t_hi, b.t_hi);
}

}  // namespace dplab
