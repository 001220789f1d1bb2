#include <doctest.h>

#include <limits>

#include "robreg/pruning.hpp"
#include "robreg/rng.hpp"

using namespace robreg;

TEST_SUITE_BEGIN("fast");

TEST_CASE("clip_value basics") {
  CHECK(clip_value(5.0, 3.0) == 3.0);
  CHECK(clip_value(-5.0, 3.0) == -3.0);
  CHECK(clip_value(0.5, 3.0) == 0.5);
  CHECK(clip_value(3.0, 3.0) == 3.0);  // boundary is value-preserving
  CHECK(clip_value(-3.0, 3.0) == -3.0);
  CHECK_THROWS_AS(clip_value(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(clip_value(std::numeric_limits<double>::infinity(), 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(clip_value(std::numeric_limits<double>::quiet_NaN(), 1.0),
                  std::invalid_argument);
}

TEST_CASE("prune_matrix clips, preserves, and reports bad entries") {
  Mat x(1, 2);
  x << 10.0, -10.0;
  PrunedMatrix p = prune_matrix(x, 1.0);
  CHECK(p.X_tilde(0, 0) == 1.0);
  CHECK(p.X_tilde(0, 1) == -1.0);

  Mat inside(2, 2);
  inside << 0.2, -0.7, 0.0, 0.99;
  CHECK(prune_matrix(inside, 1.0).X_tilde == inside);

  Mat bad(2, 3);
  bad.setZero();
  bad(1, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_WITH_AS(prune_matrix(bad, 1.0), doctest::Contains("(1, 2)"),
                       std::invalid_argument);
}

TEST_CASE("prune_matrix properties on random input") {
  RngStream rng(31, 0);
  for (int t = 0; t < 50; ++t) {
    long n = 1 + rng.next_u32() % 12, d = 1 + rng.next_u32() % 12;
    Mat x(n, d);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < d; ++j) x(i, j) = 6.0 * rng.normal();
    double tau = 0.05 + 4.0 * rng.uniform();

    PrunedMatrix p = prune_matrix(x, tau);
    CHECK((p.X_tilde.cwiseAbs().array() <= tau).all());
    // sign preservation and identity inside the box
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < d; ++j) {
        if (std::fabs(x(i, j)) <= tau) {
          CHECK(p.X_tilde(i, j) == x(i, j));
        } else {
          CHECK(p.X_tilde(i, j) * x(i, j) > 0);
        }
      }
    }
    // idempotence
    CHECK(prune_matrix(p.X_tilde, tau).X_tilde == p.X_tilde);
    // monotone in tau and converging back to x
    PrunedMatrix wider = prune_matrix(x, tau * 3);
    CHECK(((wider.X_tilde.cwiseAbs() - p.X_tilde.cwiseAbs()).array() >= -1e-15)
              .all());
    double huge = x.cwiseAbs().maxCoeff() + 1.0;
    CHECK(prune_matrix(x, huge).X_tilde == x);
  }
}

TEST_SUITE_END();
