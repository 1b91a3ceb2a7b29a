#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dplab/error.hpp"
#include "dplab/flux.hpp"

namespace {

using dplab::ExponentParams;
using dplab::Matrix;
using dplab::Vector;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

TEST(Flux, Hamiltonian) {
  EXPECT_DOUBLE_EQ(dplab::hamiltonian_H({2, 3, 1, 1, 0}, 0.0, vec({2, 0})), 4.0);
  EXPECT_DOUBLE_EQ(dplab::hamiltonian_H({2, 3, 1, 1, 0}, 1.0, vec({1, 0})), 2.0);
  EXPECT_DOUBLE_EQ(dplab::hamiltonian_H({1.5, 2, 1, 1, 0}, 1.0, vec({0, 0})), 0.0);
}

TEST(Flux, FluxA) {
  const ExponentParams sing{1.3, 1.8, 1, 1, 0};
  EXPECT_EQ(dplab::flux_A(sing, 1.0, vec({0, 0})).norm(), 0.0);
  const Vector f = dplab::flux_A({2, 2, 1, 1, 0}, 1.0, vec({1, 0}));
  EXPECT_DOUBLE_EQ(f[0], 2.0);
  EXPECT_DOUBLE_EQ(f[1], 0.0);
  EXPECT_DOUBLE_EQ(dplab::flux_A(ExponentParams{3, 4, 1, 1, 0}, 0.5, 2.0), 8.0);
}

TEST(Flux, FluxDotXiIsHamiltonian) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u01(0, 1);
  for (int i = 0; i < 2000; ++i) {
    ExponentParams prm{1.1 + 2 * u01(rng), 0, 1, 1, 0};
    prm.q = prm.p + u01(rng);
    const double a = 2 * u01(rng);
    const Vector xi = vec({n01(rng), n01(rng), n01(rng)});
    const double lhs = dplab::flux_A(prm, a, xi).dot(xi);
    const double rhs = dplab::hamiltonian_H(prm, a, xi);
    EXPECT_NEAR(lhs, rhs, 1e-12 * (1 + rhs));
  }
}

TEST(Flux, RegularizedBasics) {
  EXPECT_EQ(dplab::flux_regularized(ExponentParams{1.5, 2, 1, 1, 0}, 1.0, vec({0, 0}), 1e-6).norm(),
            0.0);
  const Vector xi = vec({0.3, -1.7});
  for (double delta : {1e-8, 0.1, 4.0}) {
    const Vector f = dplab::flux_regularized({2, 2, 1, 1, 0}, 0.0, xi, delta);
    EXPECT_NEAR((f - xi).norm(), 0.0, 1e-15);
  }
}

TEST(Flux, RegularizedJacobianAtZeroFiniteDifferenceOracle) {
  // Finite-difference Jacobian oracle: for p = 3, a = 0, delta = 1 the
  // Jacobian at 0 is delta^{1/2} I.
  const ExponentParams prm{3, 3, 1, 1, 0};
  const double delta = 1.0;
  const double h = 1e-6;
  Matrix J(2, 2);
  for (int j = 0; j < 2; ++j) {
    Vector e = Vector::Zero(2);
    e[j] = h;
    J.col(j) = (dplab::flux_regularized(prm, 0.0, e, delta) -
                dplab::flux_regularized(prm, 0.0, Vector(-e), delta)) /
               (2 * h);
  }
  EXPECT_NEAR((J - std::sqrt(delta) * Matrix::Identity(2, 2)).norm(), 0.0, 1e-9);
}

TEST(Flux, RegularizedDerivativeMatchesDifference) {
  for (const ExponentParams prm : {ExponentParams{1.5, 2.3, 1, 1, 0}, ExponentParams{3, 3.5, 1, 1, 0}}) {
    for (double xi : {-2.0, -0.01, 0.0, 0.3, 5.0}) {
      const double h = 1e-7;
      const double fd = (dplab::flux_regularized(prm, 0.7, xi + h, 1e-3) -
                         dplab::flux_regularized(prm, 0.7, xi - h, 1e-3)) /
                        (2 * h);
      EXPECT_NEAR(dplab::flux_regularized_derivative(prm, 0.7, xi, 1e-3), fd,
                  1e-5 * (1 + std::abs(fd)));
    }
  }
}

TEST(Flux, RegularizedConvergesToFluxA) {
  // |F_delta - A| = O(delta^{1/2 * min(1, p-1)}) measured along a log sweep.
  for (const ExponentParams prm : {ExponentParams{1.5, 1.5, 1, 1, 0}, ExponentParams{3, 3.5, 1, 1, 0}}) {
    const double xi = 0.2;
    std::vector<double> deltas, errors;
    for (int k = 2; k <= 10; ++k) {
      const double delta = std::pow(10.0, -k);
      deltas.push_back(delta);
      errors.push_back(std::abs(dplab::flux_regularized(prm, 1.0, xi, delta) -
                                dplab::flux_A(prm, 1.0, xi)));
    }
    const double rate = std::log(errors.front() / errors.back()) /
                        std::log(std::sqrt(deltas.front()) / std::sqrt(deltas.back()));
    EXPECT_GE(rate, std::min(1.0, prm.p - 1.0) - 1e-6);
    EXPECT_LT(errors.back(), 1e-8);
  }
}

TEST(Flux, OperatorF) {
  const Matrix I2 = Matrix::Identity(2, 2);
  EXPECT_DOUBLE_EQ(dplab::operator_F({2, 2, 1, 1, 0}, 0.0, vec({1, 0}), I2), 2.0);
  EXPECT_DOUBLE_EQ(dplab::operator_F({2, 2, 1, 1, 0}, 0.0, vec({0.6, 0.8}), I2), 2.0);
  // (2+2) + 1 * (2+1); q < p is fine for pure arithmetic.
  ExponentParams prm{4, 3, 1, 1, 0};
  EXPECT_DOUBLE_EQ(dplab::operator_F(prm, 1.0, vec({1, 0}), I2), 7.0);
  EXPECT_DOUBLE_EQ(dplab::operator_F({3, 3.5, 1, 1, 0}, 1.0, vec({0.3, -2}), Matrix::Zero(2, 2)),
                   0.0);
  EXPECT_THROW(dplab::operator_F({2, 2, 1, 1, 0}, 0.0, vec({0, 0}), I2), dplab::PreconditionError);
}

TEST(Flux, OperatorFIsTheNonDivergenceFormOfTheFlux) {
  // For smooth u with a constant in x, div A(Du) = F(Du, D^2 u). Oracle:
  // centered difference of flux_A on u(x,y) = sin(x) + x y^2 / 2.
  const ExponentParams prm{1.7, 2.4, 1, 1, 0};
  const double a = 0.8;
  auto grad = [](double x, double y) { return vec({std::cos(x) + 0.5 * y * y, x * y}); };
  const double x = 0.4, y = 0.9, h = 1e-5;
  const double div =
      (dplab::flux_A(prm, a, grad(x + h, y))[0] - dplab::flux_A(prm, a, grad(x - h, y))[0]) /
          (2 * h) +
      (dplab::flux_A(prm, a, grad(x, y + h))[1] - dplab::flux_A(prm, a, grad(x, y - h))[1]) /
          (2 * h);
  Matrix hess(2, 2);
  hess << -std::sin(x), y, y, x;
  EXPECT_NEAR(dplab::operator_F(prm, a, grad(x, y), hess), div, 1e-6);
}

TEST(Flux, BoundG) {
  EXPECT_DOUBLE_EQ(dplab::bound_g({2, 2, 1, 1, 1}, 0.0, 0.0, vec({0})), 1.0);
  EXPECT_DOUBLE_EQ(dplab::bound_g({2, 3, 1, 1, 0}, 2.0, 0.0, vec({2, 0})), 8.0);
  EXPECT_DOUBLE_EQ(dplab::bound_g({2, 2, 1, 1, 1}, 1.0, 1.0, vec({1})), 4.0);
}

TEST(Flux, RhsGrowthBound) {
  EXPECT_EQ(dplab::rhs_growth_bound(ExponentParams{2, 3, 1, 2, 0}, 0.5, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(dplab::rhs_growth_bound(ExponentParams{3, 3, 1, 2, 1}, 0.5, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(dplab::rhs_growth_bound(ExponentParams{3, 3, 1, 2, 1.7}, 0.5, 0.0), 1.7);
}

TEST(Flux, Multiphase) {
  const dplab::MultiPhaseParams mp{2, 3, 4, 1, 1, 1, 0};
  EXPECT_DOUBLE_EQ(dplab::multiphase_flux(mp, 1, 1, vec({1}))[0], 3.0);
  EXPECT_EQ(dplab::multiphase_flux(mp, 1, 1, vec({0, 0})).norm(), 0.0);
  const Vector xi = vec({0.4, -1.1});
  const Vector reduced = dplab::multiphase_flux(mp, 0.6, 0.0, xi);
  const Vector double_phase = dplab::flux_A({2, 3, 1, 1, 0}, 0.6, xi);
  EXPECT_NEAR((reduced - double_phase).norm(), 0.0, 1e-15);
}

// Random vector pairs against the monotonicity and continuity inequalities.
class VectorInequality : public ::testing::TestWithParam<double> {};

TEST_P(VectorInequality, RandomPairs) {
  const double r = GetParam();
  std::mt19937_64 rng(static_cast<unsigned long>(r * 1000));
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> scale(-3, 2);
  for (int i = 0; i < 20000; ++i) {
    const int dim = 1 + i % 3;
    Vector a(dim), b(dim);
    const double sa = std::pow(10.0, scale(rng)), sb = std::pow(10.0, scale(rng));
    for (int k = 0; k < dim; ++k) {
      a[k] = sa * n01(rng);
      b[k] = sb * n01(rng);
    }
    auto cont = dplab::continuity_bound(a, b, r);
    EXPECT_LE(cont.lhs, cont.rhs * (1 + 1e-12) + 1e-300);
    if (r < 2) {
      auto mono = dplab::monotone_singular(a, b, r);
      EXPECT_GE(mono.lhs, mono.rhs * (1 - 1e-12));
    } else {
      auto mono = dplab::monotone_degenerate(a, b, r);
      EXPECT_GE(mono.lhs, mono.rhs * (1 - 1e-12));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Exponents, VectorInequality,
                         ::testing::Values(1.1, 1.5, 1.9, 2.0, 2.5, 3.0, 4.5));

}  // namespace
