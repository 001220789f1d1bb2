#pragma once

#include <vector>

namespace robreg {

double median(std::vector<double> values);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
};

// Ordinary least squares of y on x (with intercept). Needs >= 2 points.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Pool-adjacent-violators fit of the best nonincreasing sequence.
std::vector<double> isotonic_decreasing_fit(const std::vector<double>& y);

}  // namespace robreg
