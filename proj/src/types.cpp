#include "specsense/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace specsense {

namespace {

void require_nonnegative_finite(std::span<const double> values, const char* what) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k]) || values[k] < 0.0) {
      throw InvalidInput(std::string(what) + ": bin " + std::to_string(k) +
                         " is negative or non-finite");
    }
  }
}

}  // namespace

SampleBuffer::SampleBuffer(std::vector<Complex> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (samples_.empty()) throw InvalidInput("SampleBuffer: empty buffer");
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
    throw InvalidInput("SampleBuffer: sample rate must be positive");
  }
  for (const auto& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw InvalidInput("SampleBuffer: non-finite sample");
    }
  }
}

double SampleBuffer::average_power() const {
  double acc = 0.0;
  for (const auto& s : samples_) acc += std::norm(s);
  return acc / static_cast<double>(samples_.size());
}

PsdTemplate::PsdTemplate(std::vector<double> values, double sample_rate_hz, std::string label)
    : values_(std::move(values)), sample_rate_hz_(sample_rate_hz), label_(std::move(label)) {
  if (values_.empty()) throw InvalidInput("PsdTemplate: no bins");
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
    throw InvalidInput("PsdTemplate: sample rate must be positive");
  }
  require_nonnegative_finite(values_, "PsdTemplate");
}

double PsdTemplate::average_power() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

Periodogram::Periodogram(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidInput("Periodogram: no bins");
  require_nonnegative_finite(values_, "Periodogram");
}

CovarianceModel::CovarianceModel(std::vector<Complex> autocov) : autocov_(std::move(autocov)) {
  if (autocov_.empty()) throw InvalidInput("CovarianceModel: no lags");
  const Complex r0 = autocov_.front();
  const double tol = 1e-9 * std::max(1.0, std::abs(r0)) + 1e-300;
  if (!std::isfinite(r0.real()) || r0.real() < -tol || std::abs(r0.imag()) > tol) {
    throw InvalidInput("CovarianceModel: r(0) must be real and nonnegative");
  }
  autocov_.front() = Complex(std::max(0.0, r0.real()), 0.0);
  const double bound = autocov_.front().real() + tol;
  for (std::size_t m = 1; m < autocov_.size(); ++m) {
    const auto& r = autocov_[m];
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) || std::abs(r) > bound) {
      throw InvalidInput("CovarianceModel: |r(" + std::to_string(m) + ")| exceeds r(0)");
    }
  }
}

CovarianceModel CovarianceModel::leading(std::size_t m) const {
  if (m == 0 || m > autocov_.size()) {
    throw InvalidInput("CovarianceModel::leading: dimension out of range");
  }
  return CovarianceModel({autocov_.begin(), autocov_.begin() + static_cast<std::ptrdiff_t>(m)});
}

CirculantModel::CirculantModel(std::vector<double> eigenvalues)
    : eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.empty()) throw InvalidInput("CirculantModel: no eigenvalues");
  require_nonnegative_finite(eigenvalues_, "CirculantModel");
}

}  // namespace specsense
