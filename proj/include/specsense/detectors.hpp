#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string_view>

#include "specsense/types.hpp"

namespace specsense {

enum class DetectorKind { spectra_correlation, lrt_exact, lrt_low_snr, energy };

// Stable names used in config files and CSV output.
std::string_view to_string(DetectorKind kind);
std::optional<DetectorKind> detector_kind_from_string(std::string_view name);

enum class Hypothesis { h0, h1 };

struct Decision {
  double statistic = 0.0;
  double threshold = 0.0;
  Hypothesis hypothesis = Hypothesis::h0;
};

// Largest dimension handled by the exact (dense) LRT.
inline constexpr std::size_t kExactLrtCap = 4096;

// T_n = (1/n) sum_k S_Y(k) S_X(k). Takes no noise power: the template alone
// defines the statistic.
double stat_spectra_correlation(const SampleBuffer& y, const PsdTemplate& tpl);
double stat_spectra_correlation(const Periodogram& py, const PsdTemplate& tpl);

// y^H [sigma_v^-2 I - (sigma_v^2 I + Sigma)^-1] y via a dense Cholesky solve,
// evaluated as sigma_v^-2 y^H (sigma_v^2 I + Sigma)^-1 Sigma y to avoid
// cancellation at low SNR. Throws NumericalFailure when the solve fails.
double stat_lrt_exact(const SampleBuffer& y, const CovarianceModel& sigma, double noise_var);

// Exact LRT with the quadratic-form kernel
// sigma_v^-2 (sigma_v^2 I + Sigma)^-1 Sigma factored once, for Monte Carlo
// loops that evaluate many blocks against one covariance.
class ExactLrt {
 public:
  ExactLrt(const CovarianceModel& sigma, double noise_var);

  double operator()(const SampleBuffer& y) const;
  std::size_t n() const { return static_cast<std::size_t>(kernel_.rows()); }

 private:
  Eigen::MatrixXcd kernel_;
};

struct LowSnrStatistic {
  double value = 0.0;
  // Set when noise_var was supplied and the largest eigenvalue of the model
  // is not below it, i.e. the series behind the approximation diverges.
  bool series_diverges = false;
};

// (1/n) y^H M y.
LowSnrStatistic stat_lrt_low_snr(const SampleBuffer& y, const CirculantModel& model,
                                 std::optional<double> noise_var = std::nullopt);
LowSnrStatistic stat_lrt_low_snr(const SampleBuffer& y, const CovarianceModel& model,
                                 std::optional<double> noise_var = std::nullopt);

// (1/n) sum |y(l)|^2
double stat_energy(const SampleBuffer& y);

// H1 iff statistic > threshold; ties go to H0.
Decision decide(double statistic, double threshold);

}  // namespace specsense
