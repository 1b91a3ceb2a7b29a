#include "dplab/fit.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "dplab/error.hpp"

namespace dplab {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw PreconditionError("fit_line needs two or more paired samples");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = x[std::size_t(i)];
    design(i, 1) = 1.0;
    rhs[i] = y[std::size_t(i)];
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  const double mean = rhs.mean();
  const double ss_tot = (rhs.array() - mean).square().sum();
  const double ss_res = (design * coef - rhs).squaredNorm();
  return {coef[0], coef[1], ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0};
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw PreconditionError("fit_loglog needs positive samples");
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return fit_line(lx, ly);
}

}  // namespace dplab
