#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dplab/error.hpp"
#include "dplab/regularity.hpp"

namespace {

using dplab::BarrierRegime;
using dplab::builtin_coefficient;
using dplab::ExponentParams;
using dplab::Grid1D;
using dplab::GridField;
using dplab::PhiProfile;

constexpr double kPi = std::numbers::pi;

dplab::Problem solved_problem(double p, double q, std::size_t nx = 32, std::size_t nt = 32) {
  dplab::Problem prob;
  prob.params = {p, q, 1, 1, 0};
  prob.coeff = builtin_coefficient("pos_time_ramp");
  prob.grid = Grid1D{-1, 1, nx, -1, 0, nt};
  prob.data = [](double x, double t) {
    return t == -1.0 ? std::cos(kPi * x / 2) + 0.3 * std::sin(kPi * x) : 0.0;
  };
  return prob;
}

TEST(Phi, Examples) {
  const auto h = PhiProfile::holder(0.5);
  EXPECT_DOUBLE_EQ(dplab::phi_eval(h, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(dplab::phi_d1(h, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(dplab::phi_d2(h, 1.0), -0.25);
  EXPECT_THROW(dplab::phi_d1(h, 0.0), dplab::PreconditionError);

  const auto l = PhiProfile::lipschitz(1.5);
  EXPECT_NEAR(l.kappa, 0.117851130197758, 1e-12);
  EXPECT_NEAR(dplab::phi_d1(l, 2.0), 0.75, 1e-15);
  EXPECT_EQ(dplab::phi_eval(l, 0.0), 0.0);
  EXPECT_THROW(PhiProfile::lipschitz(2.0), dplab::PreconditionError);
  EXPECT_THROW(PhiProfile::holder(1.0), dplab::PreconditionError);
}

TEST(Phi, AdmissibilityOnFineGrid) {
  for (const auto& prof : {PhiProfile::holder(0.2), PhiProfile::holder(0.7), PhiProfile::holder(0.99),
                           PhiProfile::lipschitz(1.01), PhiProfile::lipschitz(1.5),
                           PhiProfile::lipschitz(1.99)}) {
    EXPECT_EQ(dplab::phi_eval(prof, 0.0), 0.0);
    for (int k = 1; k <= 2000; ++k) {
      const double s = 2.0 * k / 2000;
      const double d1 = dplab::phi_d1(prof, s), d2 = dplab::phi_d2(prof, s);
      EXPECT_GT(d1, 0.0);
      EXPECT_LT(d2, 0.0);
      EXPECT_LT(std::abs(d2), d1 / s);
      EXPECT_GE(d1, prof.c_phi() - 1e-15);
      if (prof.kind == PhiProfile::Kind::lipschitz) {
        EXPECT_GE(d1, 0.75 - 1e-15);
        EXPECT_LE(d1, 1.0);
      }
    }
  }
}

TEST(Psi, DiagonalAndConstantAreNonPositive) {
  const Grid1D g{-1, 1, 20, -1, 0, 10};
  const GridField u = GridField::sample(g, [](double x, double t) { return std::sin(3 * x) + t; });
  const auto prof = PhiProfile::holder(0.5);
  const dplab::PsiAnchor an{0.1, -0.2, -0.5};
  const double K = dplab::doubling_K(u);
  EXPECT_DOUBLE_EQ(K, 8 * u.osc());
  const double psi = dplab::doubling_psi(u, 0.3, 0.3, -0.3, 5.0, prof, an, K);
  EXPECT_NEAR(psi, -0.5 * K * (0.04 + 0.25 + 0.04), 1e-12);
  EXPECT_THROW(dplab::doubling_psi(u, 0.33, 0.3, -0.3, 5.0, prof, an, K), dplab::PreconditionError);

  const GridField c(g, 4.0);
  const auto scan = dplab::psi_max_scan(c, 1.0, prof, {an}, 1.0);
  EXPECT_LE(scan.max_value, 0.0);
}

TEST(Psi, ScanMatchesPointwiseEvaluation) {
  const Grid1D g{-1, 1, 12, -1, 0, 6};
  const GridField u = GridField::sample(g, [](double x, double t) { return std::abs(x) * (1 + t); });
  const auto prof = PhiProfile::lipschitz(1.5);
  const auto anchors = dplab::default_anchors(g, 2);
  const double K = dplab::doubling_K(u);
  // Oracle: direct evaluation of doubling_psi at every triple.
  double best = -1e300;
  for (const auto& an : anchors) {
    for (std::size_t n = 0; n < g.levels(); ++n)
      for (std::size_t i = 0; i < g.nodes(); ++i)
        for (std::size_t j = 0; j < g.nodes(); ++j)
          best = std::max(best, dplab::doubling_psi(u, g.x(i), g.x(j), g.t(n), 0.3, prof, an, K));
  }
  EXPECT_DOUBLE_EQ(dplab::psi_max_scan(u, 0.3, prof, anchors).max_value, best);
}

TEST(Psi, ThresholdBrackets) {
  const dplab::Problem prob = solved_problem(3.0, 3.5);
  const GridField u = dplab::solve(prob);
  const auto prof = PhiProfile::holder(0.5);
  const auto anchors = dplab::default_anchors(u.grid(), 3);

  EXPECT_GT(dplab::psi_max_scan(u, 0.0, prof, anchors).max_value, 0.0);
  const auto thr = dplab::psi_threshold_search(u, prof, anchors);
  EXPECT_GT(thr.L_star, 0.0);
  EXPECT_LT(thr.L_star, thr.L_upper);
  EXPECT_LE(dplab::psi_max_scan(u, thr.L_star, prof, anchors).max_value, 1e-10);
  EXPECT_LE(dplab::psi_max_scan(u, 2 * thr.L_star, prof, anchors).max_value, 0.0);
  EXPECT_GT(dplab::psi_max_scan(u, 0.99 * thr.L_star, prof, anchors).max_value, 0.0);

  // Doubling the field doubles K and L*.
  GridField u2 = u;
  u2 *= 2.0;
  const auto thr2 = dplab::psi_threshold_search(u2, prof, anchors);
  EXPECT_GE(thr2.L_star, thr.L_star);
  EXPECT_NEAR(thr2.L_star, 2 * thr.L_star, 1e-5 * thr2.L_star);
}

TEST(Psi, DerivativeBoundAtArgmax) {
  const dplab::Problem prob = solved_problem(1.5, 2.0);
  const GridField u = dplab::solve(prob);
  const auto anchors = dplab::default_anchors(u.grid(), 3);
  for (const auto& prof : {PhiProfile::holder(0.6), PhiProfile::lipschitz(1.4)}) {
    const auto thr = dplab::psi_threshold_search(u, prof, anchors);
    for (double frac : {0.2, 0.5, 0.9}) {
      const double L = frac * thr.L_star;
      const auto scan = dplab::psi_max_scan(u, L, prof, anchors);
      const auto db = dplab::derivative_bound_check(u, scan, L, prof);
      if (db.applicable) EXPECT_TRUE(db.ok) << db.phi_prime << " " << db.bound;
    }
  }
}

TEST(Barrier, DegenerateConstants) {
  const auto s = dplab::barrier_make(BarrierRegime::degenerate, {2, 2, 1, 1, 0}, -0.04, 0.0, 1.0, 1.0);
  EXPECT_NEAR(s.A, 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(s.C0, 32.0);
  EXPECT_NEAR(s.K, 160.0, 1e-12);
  EXPECT_EQ(s.rho, 1.0);
}

TEST(Barrier, SingularConstants) {
  const auto s = dplab::barrier_make(BarrierRegime::singular, {1.5, 2, 1, 1, 0}, -0.3, -0.1, 0.5, 2.0);
  EXPECT_DOUBLE_EQ(s.beta, 3.0);
  EXPECT_NEAR(s.A, std::pow(0.2, 3.0 / 7.0), 1e-15);
  EXPECT_NEAR(s.C0, 2 * 1.5 * 27 * 3, 1e-12);
  EXPECT_NEAR(s.K, s.C0 * std::pow(s.A, -2.0), 1e-9);
  EXPECT_LE(s.rho, 1.0);
  EXPECT_NEAR(s.rho, std::pow(s.A, 2.0 / 3.0), 1e-15);
  EXPECT_THROW(dplab::barrier_make(BarrierRegime::singular, {2.5, 3, 1, 1, 0}, -1, 0, 1, 1),
               dplab::PreconditionError);
  EXPECT_THROW(dplab::barrier_make(BarrierRegime::degenerate, {1.5, 2, 1, 1, 0}, -1, 0, 1, 1),
               dplab::PreconditionError);
  EXPECT_THROW(dplab::barrier_make(BarrierRegime::degenerate, {2, 2, 1, 1, 0}, 0, -0.5, 1, 1),
               dplab::PreconditionError);
}

TEST(Barrier, ConstantsScaleWithTimeGap) {
  for (const auto& [regime, prm] :
       {std::pair{BarrierRegime::singular, ExponentParams{1.4, 2.1, 1, 1, 0}},
        std::pair{BarrierRegime::degenerate, ExponentParams{3, 3.5, 1, 1, 0}}}) {
    const auto a = dplab::barrier_make(regime, prm, -0.5, 0, 1, 1);
    const auto b = dplab::barrier_make(regime, prm, -0.125, 0, 1, 1);
    const double eA = regime == BarrierRegime::singular ? prm.p / (prm.p + prm.q) : 0.5;
    EXPECT_NEAR(std::log(a.A / b.A) / std::log(4.0), eA, 1e-12);
    EXPECT_NEAR(std::log(a.K / b.K) / std::log(4.0), eA * (1 - a.beta), 1e-12);
  }
}

TEST(Barrier, HeatParaboloidResidual) {
  const dplab::Source zero;
  const dplab::Coefficient a0;
  for (std::size_t N : {1u, 2u, 3u}) {
    auto s = dplab::barrier_make(BarrierRegime::degenerate, {2, 2, 1, 1, 0}, -0.04, 0, 1, 1, 0, N);
    const auto samples = dplab::barrier_samples(s, 11, 5);
    EXPECT_NEAR(dplab::barrier_residual(s, a0, zero, samples), -2 * s.K * double(N), 1e-9);
    s.Theta = 2 * s.K * double(N);
    EXPECT_NEAR(dplab::barrier_residual(s, a0, zero, samples), 0.0, 1e-10);
    const auto found = dplab::barrier_theta_search(s, a0, zero, samples);
    EXPECT_GE(found.Theta, 2 * s.K * double(N));
    EXPECT_LE(found.Theta, 2 * s.K * double(N) * (1 + 1e-9));
    EXPECT_GE(found.residual_min, -1e-10);
  }
}

TEST(Barrier, ResidualMatchesFiniteDifferenceDivergence) {
  // Oracle: centered difference of flux_A(a, D phi) in 1D with a varying in x.
  const ExponentParams prm{2.5, 3.2, 1, 1, 0};
  auto s = dplab::barrier_make(BarrierRegime::degenerate, prm, -0.5, 0, 1, 0.5);
  const auto a = builtin_coefficient("smooth_bump");
  const dplab::Source zero;
  for (double x : {-0.7, -0.2, 0.3, 0.9}) {
    const double t = -0.2, h = 1e-5;
    auto flux = [&](double y) {
      const double g = s.K * s.beta * std::pow(std::abs(y), s.beta - 1) * (y > 0 ? 1 : -1);
      return std::pow(std::abs(g), prm.p - 2) * g + a(y, t) * std::pow(std::abs(g), prm.q - 2) * g;
    };
    const double div = (flux(x + h) - flux(x - h)) / (2 * h);
    dplab::BarrierSamples one;
    one.x = {{x}};
    one.t = {t};
    EXPECT_NEAR(dplab::barrier_residual(s, a, zero, one), -div, 1e-5 * (1 + std::abs(div)));
  }
}

TEST(Barrier, ThetaMonotoneInSource) {
  const ExponentParams base{3, 3.5, 1, 1.5, 0};
  ExponentParams loaded = base;
  loaded.C_f = 1.0;
  const auto a = builtin_coefficient("pos_time_ramp");
  const auto s = dplab::barrier_make(BarrierRegime::degenerate, base, -0.25, 0, 1, 1);
  const auto samples = dplab::barrier_samples(s, 40, 25);
  const auto t0 = dplab::barrier_theta_search(s, a, dplab::builtin_source("growth", base, a), samples);
  const auto t1 = dplab::barrier_theta_search(s, a, dplab::builtin_source("growth", loaded, a), samples);
  EXPECT_GE(t1.Theta, t0.Theta);
  EXPECT_GE(t1.residual_min, -1e-10);
  EXPECT_TRUE(std::isfinite(t1.Theta));
}

TEST(Barrier, ThetaScalesWithK) {
  const ExponentParams prm{1.5, 2.0, 1, 1, 0};
  const auto a = builtin_coefficient("constant", {{"c", 1.0}});
  const dplab::Source zero;
  const auto s1 = dplab::barrier_make(BarrierRegime::singular, prm, -0.5, 0, 1, 1);
  const auto s2 = dplab::barrier_make(BarrierRegime::singular, prm, -0.05, 0, 1, 1);
  const auto r1 = dplab::barrier_theta_search(s1, a, zero, dplab::barrier_samples(s1, 40, 5));
  const auto r2 = dplab::barrier_theta_search(s2, a, zero, dplab::barrier_samples(s2, 40, 5));
  const double observed = r2.Theta / r1.Theta;
  const double predicted = std::pow(s2.K / s1.K, prm.q / s1.beta);
  EXPECT_LT(std::abs(std::log(observed / predicted)), std::log(2.0));
}

TEST(Barrier, SolvedFieldStaysBelow) {
  const dplab::Problem prob = solved_problem(3.0, 3.5, 40, 40);
  const GridField u = dplab::solve(prob);
  const auto mod = dplab::modulus_estimate(u, {-0.9, 0.9, -0.9, 0});
  const std::size_t n0 = 20;  // t0 = -0.5
  const auto s_raw = dplab::barrier_make(BarrierRegime::degenerate, prob.params, u.grid().t(n0), 0,
                                         u.osc(), mod.lip_space_est, u(n0, 20));
  auto s = s_raw;
  s.Theta = dplab::barrier_theta_search(s, prob.coeff, prob.rhs, dplab::barrier_samples(s, 40, 25)).Theta;
  const auto ord = dplab::barrier_ordering_check(u, s);
  EXPECT_LE(ord.boundary_gap, 0.0);
  EXPECT_LE(ord.max_gap, 0.0);
}

TEST(Modulus, LinearInSpace) {
  const Grid1D g{-1, 1, 40, -1, 0, 40};
  const GridField u = GridField::sample(g, [](double x, double) { return 3 * x; });
  const auto rep = dplab::modulus_estimate(u, {-0.5, 0.5, -0.5, 0});
  EXPECT_NEAR(rep.lip_space_est, 3.0, 1e-12);
  EXPECT_FALSE(rep.alpha_defined);
  EXPECT_TRUE(std::isnan(rep.time_alpha_est));
  EXPECT_THROW(dplab::modulus_estimate(u, {-1, 0.5, -0.5, 0}), dplab::PreconditionError);
}

TEST(Modulus, SquareRootInTime) {
  const Grid1D g{-1, 1, 20, -1, 0, 4096};
  const GridField u = GridField::sample(
      g, [](double x, double t) { return std::sqrt(std::abs(t)) * (1 + 0.5 * std::cos(x)); });
  const auto rep = dplab::modulus_estimate(u, {-0.5, 0.5, -0.5, 0});
  ASSERT_TRUE(rep.alpha_defined);
  EXPECT_NEAR(rep.time_alpha_est, 0.5, 0.03);
  EXPECT_GE(rep.fit_r2, 0.0);
  EXPECT_LE(rep.fit_r2, 1.0);
}

TEST(Modulus, HeatSolutionIsAtLeastHalfHolder) {
  dplab::Problem prob;
  prob.params = {2, 2, 1, 1, 0};
  prob.coeff = builtin_coefficient("constant", {{"c", 1.0}});
  prob.grid = Grid1D{0, 1, 32, 0, 0.1, 100};
  prob.data = [](double x, double t) { return t == 0 ? std::sin(kPi * x) : 0.0; };
  const auto rep = dplab::modulus_estimate(dplab::solve(prob), {0.1, 0.9, 0.01, 0.1});
  ASSERT_TRUE(rep.alpha_defined);
  EXPECT_GE(rep.time_alpha_est, 0.45);
}

}  // namespace
