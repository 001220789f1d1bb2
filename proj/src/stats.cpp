#include "robreg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robreg {

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  const size_t m = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + m, values.end());
  double hi = values[m];
  if (values.size() % 2 == 1) return hi;
  double lo = *std::max_element(values.begin(), values.begin() + m);
  return 0.5 * (lo + hi);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0) throw std::invalid_argument("fit_line: degenerate x values");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

std::vector<double> isotonic_decreasing_fit(const std::vector<double>& y) {
  // PAV on the negated sequence gives the nondecreasing fit.
  struct Block {
    double sum;
    int count;
  };
  std::vector<Block> blocks;
  for (double v : y) {
    blocks.push_back({-v, 1});
    while (blocks.size() >= 2) {
      auto& b = blocks[blocks.size() - 2];
      auto& t = blocks.back();
      if (b.sum / b.count <= t.sum / t.count) break;
      b.sum += t.sum;
      b.count += t.count;
      blocks.pop_back();
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const Block& b : blocks) {
    const double mean = -(b.sum / b.count);
    for (int i = 0; i < b.count; ++i) out.push_back(mean);
  }
  return out;
}

}  // namespace robreg
