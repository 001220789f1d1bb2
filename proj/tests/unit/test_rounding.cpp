#include <doctest.h>

#include "robreg/projections.hpp"
#include "robreg/rng.hpp"
#include "robreg/rounding.hpp"

using namespace robreg;

namespace {

TruncatedSimplexPoint simplex_point(std::initializer_list<double> vals,
                                    double eps) {
  TruncatedSimplexPoint p;
  p.w = Vec(static_cast<long>(vals.size()));
  long i = 0;
  for (double v : vals) p.w[i++] = v;
  p.epsilon = eps;
  p.validate();
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("fast");

TEST_CASE("round_weights worked examples") {
  // uniform weights all survive (1/n >= 1/(2n))
  TruncatedSimplexPoint uniform =
      simplex_point({0.25, 0.25, 0.25, 0.25}, 0.25);
  RoundedWeights r = round_weights(uniform);
  CHECK(r.zeroed_count == 0);
  CHECK((r.w_prime.array() == 0.25).all());
  r.validate();

  // threshold 1/8 zeroes only the 0.1 entry; 1 <= 2 eps n = 2
  TruncatedSimplexPoint mixed = simplex_point({0.4, 0.3, 0.2, 0.1}, 0.4);
  RoundedWeights m = round_weights(mixed);
  CHECK(m.w_prime[0] == 0.25);
  CHECK(m.w_prime[1] == 0.25);
  CHECK(m.w_prime[2] == 0.25);
  CHECK(m.w_prime[3] == 0.0);
  CHECK(m.zeroed_count == 1);

  // boundary w_i = 1/(2n) is retained
  TruncatedSimplexPoint half = simplex_point({0.5, 0.5}, 0.0);
  RoundedWeights h = round_weights(half);
  CHECK(h.zeroed_count == 0);
  CHECK((h.w_prime.array() == 0.5).all());

  // rounding the uniform point is idempotent in the {0, 1/n} sense
  RoundedWeights again = round_weights(
      TruncatedSimplexPoint{h.w_prime, 0.0});
  CHECK(again.w_prime == h.w_prime);
}

TEST_CASE("round_weights rejects invalid simplex points") {
  TruncatedSimplexPoint bad;
  bad.w = Vec::Constant(4, 0.5);  // sums to 2
  bad.epsilon = 0.25;
  CHECK_THROWS_AS(round_weights(bad), std::invalid_argument);
}

TEST_CASE("discretization bound |I_<| <= 2 n eps holds exactly") {
  RngStream rng(91, 0);
  long violations = 0;
  for (int n : {5, 50, 500}) {
    for (double eps : {1.0 / n, 0.1, 0.3, 0.49}) {
      for (int t = 0; t < 250; ++t) {
        Vec raw(n);
        for (int i = 0; i < n; ++i) raw[i] = rng.uniform();
        TruncatedSimplexPoint w = project_truncated_simplex(raw, eps);
        RoundedWeights r = round_weights(w);
        if (r.zeroed_count > 2.0 * eps * n) ++violations;
        // retained entries satisfy w' <= 2 w
        for (int i = 0; i < n; ++i) {
          if (r.w_prime[i] > 0) CHECK(r.w_prime[i] <= 2.0 * w.w[i] + 1e-15);
        }
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("corrupted threshold violates the discretization bound") {
  // the fault-injection hook used by the verify command
  RngStream rng(92, 0);
  const int n = 50;
  Vec raw(n);
  for (int i = 0; i < n; ++i) raw[i] = rng.uniform();
  TruncatedSimplexPoint w = project_truncated_simplex(raw, 0.1);
  RoundedWeights r = round_weights_with_threshold(w, 1.5 / n);
  CHECK(r.zeroed_count > 2.0 * 0.1 * n);
}

TEST_SUITE_END();
