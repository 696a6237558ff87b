#include "specsense/feature_optimizer.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <string>

namespace specsense {

SeparationReport separation(const PsdTemplate& tpl, double noise_var) {
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw InvalidInput("separation: noise variance must be positive");
  }
  double objective = 0.0;
  for (double s : tpl.values()) objective += s * s;
  SeparationReport r;
  r.objective = objective;
  r.gap = objective / static_cast<double>(tpl.n());
  r.expected_h0 = noise_var * tpl.average_power();
  r.expected_h1 = r.expected_h0 + r.gap;
  return r;
}

PsdTemplate optimal_template(std::size_t n, double p_x, std::size_t bin, double sample_rate_hz) {
  if (n == 0) throw InvalidInput("optimal_template: n must be positive");
  if (bin >= n) {
    throw InvalidInput("optimal_template: bin " + std::to_string(bin) + " out of range for n = " +
                       std::to_string(n));
  }
  if (!(p_x > 0.0) || !std::isfinite(p_x)) throw InvalidInput("optimal_template: p_x must be positive");
  std::vector<double> v(n, 0.0);
  v[bin] = static_cast<double>(n) * p_x;
  return PsdTemplate(std::move(v), sample_rate_hz, "optimal_bin_" + std::to_string(bin));
}

GridSearchResult brute_force_verify(std::size_t n, double p_x, std::size_t grid_steps) {
  if (n == 0 || n > 4) throw InvalidInput("brute_force_verify: n must be in [1, 4]");
  if (grid_steps < 10) throw InvalidInput("brute_force_verify: grid_steps must be >= 10");
  if (!(p_x > 0.0)) throw InvalidInput("brute_force_verify: p_x must be positive");

  const double cell = static_cast<double>(n) * p_x / static_cast<double>(grid_steps);
  GridSearchResult best;
  best.max_objective = -std::numeric_limits<double>::infinity();
  best.min_objective = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> counts(n, 0);

  // Enumerate compositions of grid_steps into n nonnegative parts.
  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t k, std::size_t left) {
    if (k + 1 == n) {
      counts[k] = left;
      std::vector<double> point(n);
      double obj = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        point[i] = cell * static_cast<double>(counts[i]);
        obj += point[i] * point[i];
      }
      ++best.points;
      if (obj > best.max_objective) {
        best.max_objective = obj;
        best.maximizer = point;
      }
      if (obj < best.min_objective) {
        best.min_objective = obj;
        best.minimizer = std::move(point);
      }
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[k] = c;
      visit(k + 1, left - c);
    }
  };
  visit(0, grid_steps);
  return best;
}

void write_separation_csv_header(std::ostream& os) { os << "label,n,p_x,objective,gap\n"; }

void write_separation_csv_row(std::ostream& os, const PsdTemplate& tpl,
                              const SeparationReport& report) {
  const auto prec = os.precision(17);
  os << tpl.label() << ',' << tpl.n() << ',' << tpl.average_power() << ',' << report.objective
     << ',' << report.gap << '\n';
  os.precision(prec);
}

}  // namespace specsense
