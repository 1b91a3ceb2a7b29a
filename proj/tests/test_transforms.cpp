#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dplab/error.hpp"
#include "dplab/transforms.hpp"

namespace {

using dplab::builtin_coefficient;
using dplab::ExponentParams;
using dplab::Grid1D;
using dplab::GridField;
using dplab::InfConvParams;

constexpr double kPi = std::numbers::pi;

TEST(Steklov, ConstantsAndLinear) {
  const Grid1D g{0, 1, 8, 0, 1, 50};
  const GridField c(g, 3.0);
  const GridField lc = dplab::steklov_left(c, 0.2);
  for (double v : lc.values()) EXPECT_DOUBLE_EQ(v, 3.0);
  EXPECT_NEAR(lc.grid().t_lo, 0.2, 1e-15);
  EXPECT_EQ(lc.grid().nt, 40u);

  const GridField t = GridField::sample(g, [](double, double s) { return s; });
  const GridField left = dplab::steklov_left(t, 0.2);
  const GridField right = dplab::steklov_right(t, 0.2);
  for (std::size_t n = 0; n < left.grid().levels(); ++n) {
    EXPECT_NEAR(left(n, 3), left.grid().t(n) - 0.1, 1e-13);
    EXPECT_NEAR(right(n, 3), right.grid().t(n) + 0.1, 1e-13);
  }
  EXPECT_NEAR(right.grid().t_hi, 0.8, 1e-15);
}

TEST(Steklov, QuadraticAgainstClosedForm) {
  // (1/0.2) int_{0.8}^{1} s^2 ds = 0.81333...; trapezoid error ht^2 h/12 * 2/h.
  const Grid1D g{0, 1, 4, 0, 1, 1000};
  const GridField f = GridField::sample(g, [](double, double s) { return s * s; });
  const GridField left = dplab::steklov_left(f, 0.2);
  const double exact = (1.0 - 0.512) / 3.0 / 0.2;
  EXPECT_NEAR(exact, 0.8133333333333334, 1e-15);
  EXPECT_NEAR(left(left.grid().nt, 1), exact, 1e-6);
}

TEST(Steklov, RejectsBadWindows) {
  const Grid1D g{0, 1, 4, 0, 1, 10};
  const GridField f(g, 1.0);
  EXPECT_THROW(dplab::steklov_left(f, 1.5), dplab::PreconditionError);
  EXPECT_THROW(dplab::steklov_left(f, 1.0), dplab::PreconditionError);
  EXPECT_THROW(dplab::steklov_left(f, 0.15), dplab::PreconditionError);
  EXPECT_THROW(dplab::steklov_right(f, -0.1), dplab::PreconditionError);
}

TEST(Steklov, CommutesWithSpatialDifferences) {
  const Grid1D g{0, 2, 16, 0, 1, 40};
  const GridField f =
      GridField::sample(g, [](double x, double t) { return std::sin(3 * x) * std::exp(t) + x * t; });
  for (const auto side : {dplab::SteklovSide::left, dplab::SteklovSide::right}) {
    const GridField avg = dplab::steklov(f, 0.25, side);
    // [D_h u]_h from the differences directly.
    for (std::size_t m = 0; m < avg.grid().levels(); ++m) {
      for (std::size_t c = 0; c < g.nx; ++c) {
        double s = 0.5 * (f.cell_gradient(m, c) + f.cell_gradient(m + 10, c));
        for (std::size_t n = m + 1; n < m + 10; ++n) s += f.cell_gradient(n, c);
        EXPECT_NEAR(avg.cell_gradient(m, c), s / 10.0, 1e-12);
      }
    }
  }
}

TEST(Steklov, ModularConvergesQuadraticallyForSmoothField) {
  const Grid1D g{0, 1, 32, 0, 0.5, 2048};
  const GridField f = GridField::sample(
      g, [](double x, double t) { return std::sin(kPi * x) * std::cos(2 * t); });
  const auto a = builtin_coefficient("constant", {{"c", 1.0}});
  const ExponentParams prm{2, 2, 1, 1, 0};
  std::vector<double> hs;
  for (int k = 256; k >= 1; k /= 2) hs.push_back(k * g.ht());
  const auto rep = dplab::steklov_wh_convergence(f, a, prm, hs, dplab::SteklovSide::left);
  EXPECT_TRUE(rep.hypothesis_ok);
  EXPECT_TRUE(rep.monotone);
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.slope, 2.0, 0.1);
}

TEST(Steklov, ConstantInTimeGivesZeroModular) {
  const Grid1D g{0, 1, 16, 0, 1, 20};
  const GridField f = GridField::sample(g, [](double x, double) { return x * x; });
  const auto a = builtin_coefficient("neg_time_ramp");
  const auto rep = dplab::steklov_wh_convergence(f, a, {1.5, 2.5, 1, 1, 0}, {0.2, 0.1, 0.05},
                                                 dplab::SteklovSide::left);
  for (double m : rep.modular) EXPECT_EQ(m, 0.0);
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(std::isnan(rep.slope));
}

TEST(Steklov, HypothesisFollowsSide) {
  const Grid1D g{-1, 1, 8, -1, 1, 20};
  const GridField f(g, 0.0);
  const auto a = builtin_coefficient("neg_time_ramp");
  EXPECT_TRUE(dplab::steklov_wh_convergence(f, a, {2, 2.5, 1, 1, 0}, {0.2},
                                            dplab::SteklovSide::left)
                  .hypothesis_ok);
  EXPECT_FALSE(dplab::steklov_wh_convergence(f, a, {2, 2.5, 1, 1, 0}, {0.2},
                                             dplab::SteklovSide::right)
                   .hypothesis_ok);
}

TEST(Counterexample, SlopeMatchesReference) {
  std::vector<std::size_t> ns;
  for (int k = 10; k <= 14; ++k) ns.push_back(std::size_t(1) << k);
  const auto rep = dplab::counterexample_divergence(1.5, 2.5, 0.1, 0.1, ns);
  EXPECT_NEAR(rep.reference_slope, 2.5 / 1.5 - 0.1 - 1.0, 1e-14);
  EXPECT_NEAR(rep.slope, rep.reference_slope, 0.1 * rep.reference_slope);
  EXPECT_LT(rep.p_relative_change, 0.05);
  for (std::size_t k = 1; k < ns.size(); ++k) {
    EXPECT_GT(rep.weighted_integral[k], rep.weighted_integral[k - 1]);
  }
}

TEST(Counterexample, WeightedIntegralOracle) {
  // Independent evaluation: midpoint in x, 2000-point midpoint in t of
  // a |D[u]_h|^q with [u]_h computed from its defining integral.
  const double p = 2.0, q = 3.0, eps = 0.2, h = 0.1;
  const double kappa = 1 - 1 / p + eps / q;
  const std::size_t n = 64, mt = 2000;
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (i + 0.5) / n;
    for (std::size_t k = 0; k < mt; ++k) {
      const double t = -h + (k + 0.5) * (h / 2) / mt;
      const double avg = (t + h) * (t + h) / 2 / h;  // (1/h) int_t^{t+h} max(s,0) ds
      const double du = kappa * std::pow(x, kappa - 1) * avg;
      sum += (-t) * std::pow(du, q) * (1.0 / n) * (h / 2 / mt);
    }
  }
  const auto rep = dplab::counterexample_divergence(p, q, eps, h, {n, 2 * n});
  EXPECT_NEAR(rep.weighted_integral[0], 2 * sum, 1e-5 * 2 * sum);
}

TEST(Counterexample, Preconditions) {
  EXPECT_THROW(dplab::counterexample_divergence(2, 2, 0.1, 0.1, {8, 16}), dplab::PreconditionError);
  EXPECT_THROW(dplab::counterexample_divergence(2, 2.1, 0.1, 0.1, {8, 16}),
               dplab::PreconditionError);
  EXPECT_THROW(dplab::counterexample_divergence(1.5, 2.5, 0.1, 0.1, {8}), dplab::PreconditionError);
}

TEST(Mollify, ConstantRelaxed) {
  const Grid1D g{0, 1, 50, 0, 1, 2};
  const GridField c(g, 1.7);
  const GridField m = dplab::mollify_space(c, 0.1, /*relax_support=*/true);
  for (double v : m.values()) EXPECT_NEAR(v, 1.7, 1e-14);
  EXPECT_THROW(dplab::mollify_space(c, 0.1), dplab::PreconditionError);
}

TEST(Mollify, HatFunctionConvergesAtRateOne) {
  const Grid1D g{-1, 1, 4096, 0, 1, 1};
  const GridField hat =
      GridField::sample(g, [](double x, double) { return std::max(0.0, 0.5 - std::abs(x)); });
  std::vector<double> deltas{0.08, 0.04, 0.02, 0.01}, dist;
  for (double d : deltas) {
    const GridField m = dplab::mollify_space(hat, d);
    double s = 0;
    for (std::size_t i = 0; i < g.nodes(); ++i) s += std::pow(std::abs(m(0, i) - hat(0, i)), 2.0);
    dist.push_back(std::sqrt(s * g.hx()));
  }
  for (std::size_t k = 1; k < dist.size(); ++k) {
    EXPECT_GE(std::log2(dist[k - 1] / dist[k]), 1.0);
  }
}

TEST(Mollify, ModularConvergesOnSmoothCompactField) {
  const Grid1D g{-1, 1, 4000, 0, 1, 4};
  const GridField f = GridField::sample(g, [](double x, double t) {
    return (1 + t) * (std::abs(x) < 0.6 ? std::exp(-1 / (1 - x * x / 0.36)) : 0.0);
  });
  const auto a = builtin_coefficient("smooth_bump");
  const auto rep =
      dplab::mollify_convergence(f, a, {2, 2.5, 1, 1, 0}, {0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125});
  EXPECT_TRUE(rep.monotone);
  EXPECT_TRUE(rep.pass) << rep.modular.back();
}

TEST(DeltaEps, ClosedFormInverses) {
  EXPECT_NEAR(dplab::delta_eps([](double s) { return s; }, 0.1, 2, 4, 1), 5e-13, 1e-24);
  EXPECT_NEAR(dplab::delta_eps([](double s) { return 2 * s; }, 0.1, 2, 4, 1), 1.25e-13, 1e-24);
  // eps^{q(ell-1)} = 0.6 with eps = 0.6, q = 1, ell = 2.
  EXPECT_THROW(dplab::delta_eps([](double s) { return std::min(s, 0.5); }, 0.6, 1, 2, 1),
               dplab::PreconditionError);
  const auto ramp = builtin_coefficient("neg_time_ramp");
  // omega^{-1}(0.5^2) = 0.25, delta = 0.25^2 / 4.
  EXPECT_NEAR(dplab::delta_eps(ramp, 0.5, 1, 3, 2), 0.25 * 0.25 / 4, 1e-15);
}

TEST(DeltaEps, InverseIsUpperEnd) {
  auto omega = [](double s) { return std::sqrt(s); };
  const double s = dplab::omega_inverse(omega, 0.3);
  EXPECT_GE(omega(s), 0.3);
  EXPECT_NEAR(s, 0.09, 1e-12);
}

TEST(InfConv, ConstantFieldIsFixed) {
  const Grid1D g{0, 1, 10, 0, 1, 10};
  const GridField c(g, 2.0);
  InfConvParams icp;
  icp.eps = 0.3;
  icp.delta_eps = 0.01;
  const auto res = dplab::inf_convolution(c, icp);
  for (std::size_t n = 0; n < g.levels(); ++n) {
    for (std::size_t i = 0; i < g.nodes(); ++i) {
      EXPECT_EQ(res.value(n, i), 2.0);
      EXPECT_EQ(res.argmin_x(n, i), g.x(i));
      EXPECT_EQ(res.argmin_t(n, i), g.t(n));
    }
  }
}

TEST(InfConv, LinearProfileAnalyticMinimum) {
  // inf_y y + y^4/(4 eps^3) at y = -eps with value -3 eps/4.
  const Grid1D g{-1, 1, 400, 0, 1, 2};
  const GridField u = GridField::sample(g, [](double x, double) { return x; });
  const double eps = 0.2;
  InfConvParams icp;
  icp.eps = eps;
  icp.delta_eps = 1.0;
  icp.osc_u = u.osc();
  icp.r_eps = InfConvParams::radius(eps, 4, 1.0, icp.osc_u);
  const auto res = dplab::inf_convolution(u, icp);
  EXPECT_NEAR(res.value(1, 200), -0.75 * eps, 2 * g.hx());
  EXPECT_NEAR(res.argmin_x(1, 200), -eps, g.hx());
}

class InfConvSuite : public ::testing::Test {
 protected:
  Grid1D g{-1, 1, 40, 0, 1, 40};
  GridField u = GridField::sample(g, [](double x, double t) {
    return std::abs(x - 0.2) + 0.5 * std::sin(3 * x) * (1 - t) + 0.3 * std::abs(t - 0.5);
  });
  dplab::Coefficient::Modulus omega = [](double s) { return 2.0 * s; };
};

TEST_F(InfConvSuite, PropertiesHold) {
  // Large eps keeps the time window resolved on this grid.
  const auto icp = InfConvParams::make(2.0, 2.0, 0.8, 4.0, omega, u.osc());
  EXPECT_LE(g.hx(), 0.41 * icp.r_eps);
  const auto res = dplab::inf_convolution(u, icp);
  const auto rep = dplab::infconv_check(u, icp, res, omega, 2.0);
  EXPECT_LE(rep.max_above, 0.0);
  EXPECT_LE(rep.max_shift_x, icp.r_eps);
  EXPECT_LE(rep.max_shift_t, icp.r_eps);
  EXPECT_LE(rep.max_shift_t, rep.time_shift_bound * (1 + 1e-12));
  EXPECT_LE(rep.semiconcavity_margin, 1e-9);
  EXPECT_TRUE(rep.pass);
  EXPECT_LT(rep.derivative_defect, 20 * (g.hx() + g.ht()) * rep.semiconcavity_C);
}

TEST_F(InfConvSuite, CutoffDoesNotChangeResult) {
  const auto icp = InfConvParams::make(2.0, 2.0, 0.5, 4.0, omega, u.osc());
  const auto full = dplab::inf_convolution(u, icp);
  const auto cut = dplab::inf_convolution(u, icp, true);
  for (std::size_t k = 0; k < full.value.values().size(); ++k) {
    EXPECT_EQ(full.value.values()[k], cut.value.values()[k]);
    EXPECT_EQ(full.argmin_x.values()[k], cut.argmin_x.values()[k]);
  }
}

TEST_F(InfConvSuite, ConvergesPointwiseAsEpsShrinks) {
  // The gap scales like eps for a Lipschitz field.
  double previous = 1e300, first = 0;
  for (double eps : {0.8, 0.4, 0.2, 0.1}) {
    const auto icp = InfConvParams::make(2.0, 2.0, eps, 4.0, omega, u.osc());
    const auto res = dplab::inf_convolution(u, icp);
    double gap = 0;
    for (std::size_t k = 0; k < u.values().size(); ++k) {
      gap = std::max(gap, u.values()[k] - res.value.values()[k]);
    }
    EXPECT_LE(gap, previous);
    if (first == 0) first = gap;
    previous = gap;
  }
  EXPECT_LT(previous, first / 4);
}

TEST(InfConv, ParamsValidation) {
  auto omega = [](double s) { return s; };
  EXPECT_THROW(InfConvParams::make(2.0, 2.0, 0.1, 3.0, omega, 1.0), dplab::PreconditionError);
  EXPECT_THROW(InfConvParams::make(1.2, 2.0, 0.1, 5.0, omega, 1.0), dplab::PreconditionError);
  const auto icp = InfConvParams::make(1.5, 2.0, 0.1, 4.0, omega, 1.0);
  EXPECT_NEAR(icp.r_eps, std::pow(4 * 1e-3, 0.25), 1e-15);
}

}  // namespace
