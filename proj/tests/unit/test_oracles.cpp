#include <Eigen/Dense>
#include <doctest.h>

#include "oracles.hpp"
#include "robreg/huber.hpp"
#include "robreg/rng.hpp"
#include "robreg/weight_solver.hpp"

using namespace robreg;

TEST_SUITE_BEGIN("solvers");

TEST_CASE("brute_inner_max known answers") {
  Mat s = Mat::Zero(2, 2);
  s(0, 0) = 2.0;
  s(1, 1) = 1.0;
  auto top = oracle::brute_inner_max(s, 0.0, 1.0, 360);
  CHECK(top.value == doctest::Approx(2.0).epsilon(1e-3));

  auto zero = oracle::brute_inner_max(Mat::Zero(2, 2), 0.7, 1.0, 60);
  CHECK(zero.value == 0.0);

  // lambda_star dominating the top eigenvalue: ||M||_1 >= Tr(M) on the PSD
  // cone forces M = 0
  auto off = oracle::brute_inner_max(s, 2.0, 1.0, 120);
  CHECK(off.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("brute_inner_max is monotone in nested grid refinement") {
  RngStream rng(66, 0);
  for (int t = 0; t < 5; ++t) {
    Mat s(2, 2);
    double a = rng.normal(), b = rng.normal(), c = rng.normal();
    s << a, c, c, b;
    auto coarse = oracle::brute_inner_max(s, 0.3, 1.0, 40, 0);
    auto fine = oracle::brute_inner_max(s, 0.3, 1.0, 80, 0);
    CHECK(fine.value >= coarse.value - 1e-12);
    CHECK(fine.resolution <= coarse.resolution);
  }
}

TEST_CASE("brute vs solver cross-check at lambda_star = 0.3") {
  RngStream rng(67, 0);
  SolverControls ctrl;
  ctrl.max_inner_iters = 2000;
  ctrl.gap_tolerance = 1e-7;
  for (int t = 0; t < 8; ++t) {
    Mat s(2, 2);
    double a = rng.normal(), b = rng.normal(), c = rng.normal();
    s << a, c, c, b;
    auto brute = oracle::brute_inner_max(s, 0.3, 1.0, 240);
    InnerMaxResult solved = inner_max(s, 0.3, 1.0, ctrl);
    CHECK(std::fabs(solved.value - brute.value) < 1e-3);
  }
}

TEST_CASE("brute_simplex_min worked cases") {
  // two identical rows: uniform weights are optimal by symmetry
  Mat g(2, 2);
  g << 1.0, 0.2, 0.2, 0.5;
  auto sym = oracle::brute_simplex_min({g, g}, 0.0, 1.0, 0.25, 40);
  Eigen::SelfAdjointEigenSolver<Mat> eig(g);
  CHECK(sym.value ==
        doctest::Approx(eig.eigenvalues().maxCoeff()).epsilon(1e-9));

  // zero data: value 0 at every w
  auto zero = oracle::brute_simplex_min({Mat::Zero(2, 2), Mat::Zero(2, 2)},
                                        0.4, 1.0, 0.2, 20);
  CHECK(zero.value == 0.0);

  // one dominant row with eps = 1/3: the grid optimum puts no mass on it
  Vec big(2), small1(2), small2(2);
  big << 10.0, 0.0;
  small1 << 0.6, 0.4;
  small2 << 0.5, -0.5;
  std::vector<Mat> rows = {Mat(big * big.transpose()),
                           Mat(small1 * small1.transpose()),
                           Mat(small2 * small2.transpose())};
  auto dom = oracle::brute_simplex_min(rows, 0.0, 1.0, 1.0 / 3.0, 100);
  // grid value matches the best allocation (0, 1/2, 1/2) up to resolution
  Mat s_best = 0.5 * rows[1] + 0.5 * rows[2];
  Eigen::SelfAdjointEigenSolver<Mat> eig_best(s_best);
  CHECK(dom.value <= eig_best.eigenvalues().maxCoeff() + 1e-9);
  CHECK(dom.value >= eig_best.eigenvalues().maxCoeff() - dom.resolution);

  CHECK_THROWS_AS(
      oracle::brute_simplex_min(std::vector<Mat>(5, Mat::Zero(2, 2)), 0, 1.0,
                                0.2, 10),
      std::invalid_argument);
}

TEST_CASE("finite differences recover simple gradients") {
  auto huber_1d = [](const Vec& x) { return huber_value(x[0]); };
  Vec at(1);
  at << 0.5;
  CHECK(oracle::finite_diff(huber_1d, at, 1e-5)[0] ==
        doctest::Approx(0.5).epsilon(1e-8));
  at << 2.0;
  CHECK(oracle::finite_diff(huber_1d, at, 1e-5)[0] ==
        doctest::Approx(1.0).epsilon(1e-8));

  auto sqnorm = [](const Vec& x) { return x.squaredNorm(); };
  Vec p(2);
  p << 1.0, 2.0;
  Vec g = oracle::finite_diff(sqnorm, p, 1e-6);
  CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("grid optimum obeys weak duality") {
  RngStream rng(68, 0);
  for (int t = 0; t < 6; ++t) {
    Mat s(2, 2);
    double a = rng.normal(), b = rng.normal(), c = rng.normal();
    s << a, c, c, b;
    const double lam = 0.4;
    auto brute = oracle::brute_inner_max(s, lam, 1.0, 80);
    for (int k = 0; k < 10; ++k) {
      Mat u(2, 2);
      double x = lam * (2 * rng.uniform() - 1);
      double y = lam * (2 * rng.uniform() - 1);
      double z = lam * (2 * rng.uniform() - 1);
      u << x, z, z, y;
      CHECK(brute.value <= dual_certificate_bound(s, u, lam, 1.0) + 1e-9);
    }
  }
}

TEST_SUITE_END();
