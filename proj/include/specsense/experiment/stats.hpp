#pragma once

#include <cstddef>
#include <vector>

namespace specsense::experiment {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

// Normal-approximation band p +- z sqrt(p(1-p)/trials) around a known p.
Interval binomial_band(double p, std::size_t trials, double z = kZ95);

// Threshold t such that at most floor(tail * N) of `values` exceed it: the
// order statistic at rank N - floor(tail * N). Rounds toward the
// conservative side.
double upper_tail_threshold(std::vector<double> values, double tail);

}  // namespace specsense::experiment
