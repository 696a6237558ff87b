#include "specsense/detectors.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>

#include "specsense/spectral_core.hpp"

namespace specsense {

std::string_view to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::spectra_correlation: return "spectra_correlation";
    case DetectorKind::lrt_exact: return "lrt_exact";
    case DetectorKind::lrt_low_snr: return "lrt_low_snr";
    case DetectorKind::energy: return "energy";
  }
  return "unknown";
}

std::optional<DetectorKind> detector_kind_from_string(std::string_view name) {
  for (auto k : {DetectorKind::spectra_correlation, DetectorKind::lrt_exact,
                 DetectorKind::lrt_low_snr, DetectorKind::energy}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

double stat_spectra_correlation(const Periodogram& py, const PsdTemplate& tpl) {
  if (py.n() != tpl.n()) {
    throw InvalidInput("stat_spectra_correlation: periodogram has " + std::to_string(py.n()) +
                       " bins, template " + std::to_string(tpl.n()));
  }
  const auto s_y = py.values();
  const auto s_x = tpl.values();
  double acc = 0.0;
  for (std::size_t k = 0; k < s_x.size(); ++k) acc += s_y[k] * s_x[k];
  return acc / static_cast<double>(s_x.size());
}

double stat_spectra_correlation(const SampleBuffer& y, const PsdTemplate& tpl) {
  if (y.size() != tpl.n()) {
    throw InvalidInput("stat_spectra_correlation: block length " + std::to_string(y.size()) +
                       " does not match template bins " + std::to_string(tpl.n()));
  }
  return stat_spectra_correlation(periodogram(y), tpl);
}

namespace {

void check_exact_inputs(std::size_t n, double noise_var) {
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw InvalidInput("stat_lrt_exact: noise variance must be positive");
  }
  if (n > kExactLrtCap) {
    throw InvalidInput("stat_lrt_exact: n = " + std::to_string(n) + " exceeds cap " +
                       std::to_string(kExactLrtCap));
  }
}

// Cholesky factor of sigma_v^2 I + Sigma.
Eigen::LLT<Eigen::MatrixXcd> factor(const Eigen::MatrixXcd& cov, double noise_var) {
  Eigen::MatrixXcd a = cov;
  a.diagonal().array() += noise_var;
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("stat_lrt_exact: Cholesky factorization failed", llt.rcond());
  }
  return llt;
}

double finite_or_throw(double stat, const Eigen::LLT<Eigen::MatrixXcd>& llt) {
  if (!std::isfinite(stat)) {
    const double rcond = llt.rcond();
    throw NumericalFailure("stat_lrt_exact: non-finite statistic (rcond " +
                               std::to_string(rcond) + ")",
                           rcond);
  }
  return stat;
}

}  // namespace

double stat_lrt_exact(const SampleBuffer& y, const CovarianceModel& sigma, double noise_var) {
  if (sigma.n() != y.size()) throw InvalidInput("stat_lrt_exact: dimension mismatch");
  check_exact_inputs(y.size(), noise_var);
  const auto n = static_cast<Eigen::Index>(y.size());
  const Eigen::MatrixXcd cov = dense_matrix(sigma);
  const Eigen::Map<const Eigen::VectorXcd> v(y.samples().data(), n);
  const auto llt = factor(cov, noise_var);
  const Eigen::VectorXcd z = llt.solve(cov * v);
  return finite_or_throw(v.dot(z).real() / noise_var, llt);
}

ExactLrt::ExactLrt(const CovarianceModel& sigma, double noise_var) {
  check_exact_inputs(sigma.n(), noise_var);
  const Eigen::MatrixXcd cov = dense_matrix(sigma);
  const auto llt = factor(cov, noise_var);
  kernel_ = llt.solve(cov) / noise_var;
  if (!kernel_.allFinite()) {
    throw NumericalFailure("ExactLrt: non-finite kernel", llt.rcond());
  }
}

double ExactLrt::operator()(const SampleBuffer& y) const {
  if (y.size() != n()) throw InvalidInput("ExactLrt: dimension mismatch");
  const Eigen::Map<const Eigen::VectorXcd> v(y.samples().data(), kernel_.rows());
  return v.dot(kernel_ * v).real();
}

LowSnrStatistic stat_lrt_low_snr(const SampleBuffer& y, const CirculantModel& model,
                                 std::optional<double> noise_var) {
  LowSnrStatistic out{quadratic_form(y, model), false};
  if (noise_var) {
    const auto eig = model.eigenvalues();
    out.series_diverges = *std::max_element(eig.begin(), eig.end()) >= *noise_var;
  }
  return out;
}

LowSnrStatistic stat_lrt_low_snr(const SampleBuffer& y, const CovarianceModel& model,
                                 std::optional<double> noise_var) {
  LowSnrStatistic out{quadratic_form(y, model), false};
  if (noise_var) out.series_diverges = max_eigenvalue_bound(model) >= *noise_var;
  return out;
}

double stat_energy(const SampleBuffer& y) { return y.average_power(); }

Decision decide(double statistic, double threshold) {
  if (!std::isfinite(statistic) || !std::isfinite(threshold)) {
    throw InvalidInput("decide: statistic and threshold must be finite");
  }
  return {statistic, threshold, statistic > threshold ? Hypothesis::h1 : Hypothesis::h0};
}

}  // namespace specsense
