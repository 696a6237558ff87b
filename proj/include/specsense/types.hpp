#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace specsense {

using Complex = std::complex<double>;

inline constexpr double kDefaultSampleRateHz = 6.0e6;

// Raised for malformed inputs: empty buffers, negative PSD bins, size mismatches.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a linear solve produces non-finite output.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double rcond)
      : std::runtime_error(what), rcond_(rcond) {}

  // Reciprocal condition number estimate of the matrix that failed.
  double condition_estimate() const { return rcond_; }

 private:
  double rcond_;
};

// Complex baseband block y(l), l = 0..n-1.
class SampleBuffer {
 public:
  explicit SampleBuffer(std::vector<Complex> samples,
                        double sample_rate_hz = kDefaultSampleRateHz);

  std::span<const Complex> samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double sample_rate_hz() const { return sample_rate_hz_; }

  // (1/n) sum |y(l)|^2
  double average_power() const;

 private:
  std::vector<Complex> samples_;
  double sample_rate_hz_;
};

// A priori n-point sampled PSD of the primary signal. Bin k sits k*fs/n above
// the lower band edge.
class PsdTemplate {
 public:
  PsdTemplate(std::vector<double> values, double sample_rate_hz = kDefaultSampleRateHz,
              std::string label = "custom");

  std::span<const double> values() const { return values_; }
  std::size_t n() const { return values_.size(); }
  double sample_rate_hz() const { return sample_rate_hz_; }
  const std::string& label() const { return label_; }

  // P_x = (1/n) sum values[k]
  double average_power() const;

 private:
  std::vector<double> values_;
  double sample_rate_hz_;
  std::string label_;
};

// |DFT(y)|^2 / n per bin.
class Periodogram {
 public:
  explicit Periodogram(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t n() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

// Hermitian Toeplitz covariance stored by its lags r(0..n-1), with
// Sigma(i, j) = r(i - j) for i >= j and conj(r(j - i)) otherwise.
class CovarianceModel {
 public:
  explicit CovarianceModel(std::vector<Complex> autocov);

  std::span<const Complex> autocov() const { return autocov_; }
  std::size_t n() const { return autocov_.size(); }

  // Covariance of the first m samples of the same process.
  CovarianceModel leading(std::size_t m) const;

 private:
  std::vector<Complex> autocov_;
};

// C_n = W^H diag(eigenvalues) W with W the unitary DFT matrix.
class CirculantModel {
 public:
  explicit CirculantModel(std::vector<double> eigenvalues);

  std::span<const double> eigenvalues() const { return eigenvalues_; }
  std::size_t n() const { return eigenvalues_.size(); }

 private:
  std::vector<double> eigenvalues_;
};

}  // namespace specsense
