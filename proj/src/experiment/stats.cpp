#include "specsense/experiment/stats.hpp"

#include <algorithm>
#include <cmath>

#include "specsense/types.hpp"

namespace specsense::experiment {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0 || successes > trials) {
    throw InvalidInput("wilson_interval: need 0 <= successes <= trials and trials > 0");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // Rounding can leave centre - half a few ulps above p when p is 0 or 1.
  return {std::clamp(centre - half, 0.0, p), std::clamp(centre + half, p, 1.0)};
}

Interval binomial_band(double p, std::size_t trials, double z) {
  const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return {p - half, p + half};
}

double upper_tail_threshold(std::vector<double> values, double tail) {
  if (values.empty()) throw InvalidInput("upper_tail_threshold: no values");
  if (!(tail > 0.0 && tail < 1.0)) throw InvalidInput("upper_tail_threshold: tail must lie in (0, 1)");
  const std::size_t n = values.size();
  // The epsilon keeps 0.01 * 10000 from flooring to 99.
  const auto allowed = static_cast<std::size_t>(std::floor(tail * static_cast<double>(n) + 1e-9));
  if (allowed >= n) throw InvalidInput("upper_tail_threshold: tail too large for sample size");
  const std::size_t rank = n - allowed - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank), values.end());
  return values[rank];
}

}  // namespace specsense::experiment
