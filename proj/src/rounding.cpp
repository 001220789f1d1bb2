#include "robreg/rounding.hpp"

#include <stdexcept>

namespace robreg {

RoundedWeights RoundedWeights::uniform(int n) {
  if (n < 1) throw std::invalid_argument("RoundedWeights::uniform: n must be >= 1");
  RoundedWeights r;
  r.w_prime = Vec::Constant(n, 1.0 / static_cast<double>(n));
  r.zeroed_count = 0;
  return r;
}

void RoundedWeights::validate() const {
  const int m = n();
  if (m < 1) throw std::invalid_argument("RoundedWeights: empty");
  const double unit = 1.0 / static_cast<double>(m);
  int zeros = 0;
  for (int i = 0; i < m; ++i) {
    if (w_prime[i] == 0.0) {
      ++zeros;
    } else if (w_prime[i] != unit) {
      throw std::invalid_argument("RoundedWeights: entry not in {0, 1/n}");
    }
  }
  if (zeros != zeroed_count)
    throw std::invalid_argument("RoundedWeights: zeroed_count mismatch");
}

RoundedWeights round_weights_with_threshold(const TruncatedSimplexPoint& w,
                                            double threshold) {
  w.validate();
  const int n = w.n();
  RoundedWeights out;
  out.w_prime = Vec::Zero(n);
  const double unit = 1.0 / static_cast<double>(n);
  for (int i = 0; i < n; ++i) {
    if (w.w[i] >= threshold)
      out.w_prime[i] = unit;
    else
      ++out.zeroed_count;
  }
  return out;
}

RoundedWeights round_weights(const TruncatedSimplexPoint& w) {
  return round_weights_with_threshold(w, 0.5 / static_cast<double>(w.n()));
}

}  // namespace robreg
