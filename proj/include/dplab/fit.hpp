#pragma once

#include <span>

namespace dplab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares line through (x, y).
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Line through (log x, log y); nonpositive entries are rejected.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace dplab
