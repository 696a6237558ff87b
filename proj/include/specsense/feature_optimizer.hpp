#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "specsense/types.hpp"

namespace specsense {

// Expected spectra-correlation statistic under each hypothesis.
//
// `objective` is sum_k S_X(k)^2, the quantity maximized over the simplex
// {S >= 0, sum S = n P_x}; its optimum is n^2 P_x^2 at a single-bin template
// and its minimum n P_x^2 at the flat template. `gap` is the actual expected
// difference E[T1] - E[T0] = objective / n. The two differ by a factor of n
// and are reported separately.
struct SeparationReport {
  double expected_h0 = 0.0;  // sigma_v^2 P_x
  double expected_h1 = 0.0;  // sigma_v^2 P_x + (1/n) sum S_X^2
  double gap = 0.0;
  double objective = 0.0;
};

SeparationReport separation(const PsdTemplate& tpl, double noise_var);

// All power n * p_x in one bin.
PsdTemplate optimal_template(std::size_t n, double p_x, std::size_t bin,
                             double sample_rate_hz = kDefaultSampleRateHz);

struct GridSearchResult {
  std::vector<double> maximizer;
  double max_objective = 0.0;
  std::vector<double> minimizer;
  double min_objective = 0.0;
  std::size_t points = 0;
};

// Exhaustive search of sum S^2 over the grid {S_k = n p_x i_k / grid_steps,
// sum i_k = grid_steps}. n is limited to 4 so the grid stays small.
GridSearchResult brute_force_verify(std::size_t n, double p_x, std::size_t grid_steps);

// CSV header plus one row: label,n,p_x,objective,gap
void write_separation_csv_header(std::ostream& os);
void write_separation_csv_row(std::ostream& os, const PsdTemplate& tpl,
                              const SeparationReport& report);

}  // namespace specsense
