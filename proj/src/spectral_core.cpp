#include "specsense/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "specsense/fft.hpp"

namespace specsense {

namespace {

void require_same_dimension(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw InvalidInput(std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                       std::to_string(b) + ")");
  }
}

void require_dense_size(std::size_t n) {
  if (n > kDenseCap) {
    throw InvalidInput("dense_matrix: n = " + std::to_string(n) + " exceeds cap " +
                       std::to_string(kDenseCap));
  }
}

// Spectrum of the 2n circulant whose leading n x n block is Sigma.
std::vector<Complex> embedding_spectrum(const CovarianceModel& sigma) {
  const auto r = sigma.autocov();
  const std::size_t n = r.size();
  std::vector<Complex> column(2 * n, Complex{});
  for (std::size_t m = 0; m < n; ++m) column[m] = r[m];
  for (std::size_t m = 1; m < n; ++m) column[2 * n - m] = std::conj(r[m]);
  return fft::forward(column);
}

}  // namespace

Periodogram periodogram(const SampleBuffer& buf) {
  const auto spectrum = fft::forward(buf.samples());
  const double inv_n = 1.0 / static_cast<double>(spectrum.size());
  std::vector<double> values(spectrum.size());
  std::transform(spectrum.begin(), spectrum.end(), values.begin(),
                 [inv_n](const Complex& c) { return std::norm(c) * inv_n; });
  return Periodogram(std::move(values));
}

Periodogram averaged_periodogram(const SampleBuffer& buf, std::size_t block_len) {
  if (block_len == 0 || buf.size() % block_len != 0) {
    throw InvalidInput("averaged_periodogram: buffer length is not a multiple of block length");
  }
  const std::size_t blocks = buf.size() / block_len;
  std::vector<double> acc(block_len, 0.0);
  const auto samples = buf.samples();
  for (std::size_t b = 0; b < blocks; ++b) {
    SampleBuffer block({samples.begin() + static_cast<std::ptrdiff_t>(b * block_len),
                        samples.begin() + static_cast<std::ptrdiff_t>((b + 1) * block_len)},
                       buf.sample_rate_hz());
    const auto p = periodogram(block);
    for (std::size_t k = 0; k < block_len; ++k) acc[k] += p.values()[k];
  }
  for (auto& v : acc) v /= static_cast<double>(blocks);
  return Periodogram(std::move(acc));
}

CovarianceModel autocovariance_from_psd(const PsdTemplate& tpl) {
  const auto values = tpl.values();
  const std::size_t n = values.size();
  std::vector<Complex> psd(values.begin(), values.end());
  auto r = fft::inverse(psd);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& v : r) v *= inv_n;
  // r(0) is the bin average exactly; the FFT result only approximates it.
  r.front() = Complex(tpl.average_power(), 0.0);
  return CovarianceModel(std::move(r));
}

CirculantModel circulant_from_psd(const PsdTemplate& tpl) {
  return CirculantModel({tpl.values().begin(), tpl.values().end()});
}

double weak_norm_diff(const CovarianceModel& sigma, const CirculantModel& circ) {
  require_same_dimension(sigma.n(), circ.n(), "weak_norm_diff");
  const std::size_t n = sigma.n();
  const auto circ_lags = autocovariance_from_psd(PsdTemplate({circ.eigenvalues().begin(),
                                                               circ.eigenvalues().end()}));
  const auto r = sigma.autocov();
  const auto c = circ_lags.autocov();
  // Lag m >= 1 appears n - m times below the diagonal and n - m times above
  // (as the conjugate, where the circulant holds c(n - m)).
  double total = static_cast<double>(n) * std::norm(r[0] - c[0]);
  for (std::size_t m = 1; m < n; ++m) {
    const double weight = static_cast<double>(n - m);
    total += weight * std::norm(r[m] - c[m]);
    total += weight * std::norm(std::conj(r[m]) - c[n - m]);
  }
  return std::sqrt(total / static_cast<double>(n));
}

std::vector<Complex> toeplitz_multiply(const CovarianceModel& sigma, std::span<const Complex> y) {
  require_same_dimension(sigma.n(), y.size(), "toeplitz_multiply");
  const std::size_t n = y.size();
  const auto eig = embedding_spectrum(sigma);
  std::vector<Complex> padded(2 * n, Complex{});
  std::copy(y.begin(), y.end(), padded.begin());
  auto spec = fft::forward(padded);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= eig[k];
  auto full = fft::inverse(spec);
  const double inv = 1.0 / static_cast<double>(2 * n);
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = full[i] * inv;
  return out;
}

double max_eigenvalue_bound(const CovarianceModel& sigma) {
  const auto eig = embedding_spectrum(sigma);
  double best = 0.0;
  for (const auto& e : eig) best = std::max(best, e.real());
  return best;
}

double quadratic_form(const SampleBuffer& y, const CovarianceModel& model) {
  const auto product = toeplitz_multiply(model, y.samples());
  const auto samples = y.samples();
  Complex acc{};
  for (std::size_t i = 0; i < samples.size(); ++i) acc += std::conj(samples[i]) * product[i];
  return acc.real() / static_cast<double>(samples.size());
}

double quadratic_form(const SampleBuffer& y, const CirculantModel& model) {
  require_same_dimension(model.n(), y.size(), "quadratic_form");
  // |DFT_unitary(y)[k]|^2 is the periodogram bin.
  const auto p = periodogram(y);
  const auto lambda = model.eigenvalues();
  double acc = 0.0;
  for (std::size_t k = 0; k < lambda.size(); ++k) acc += lambda[k] * p.values()[k];
  return acc / static_cast<double>(lambda.size());
}

PsdTemplate resample_template(const PsdTemplate& tpl, std::size_t m) {
  if (m == 0) throw InvalidInput("resample_template: zero bins requested");
  const std::size_t n = tpl.n();
  const auto src = tpl.values();
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    // Bin k of the target grid sits at frequency k/m; take the closest source bin.
    const auto idx = static_cast<std::size_t>(
        std::llround(static_cast<double>(k) * static_cast<double>(n) / static_cast<double>(m)));
    out[k] = src[idx % n];
  }
  const double mean = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(m);
  const double target = tpl.average_power();
  if (mean > 0.0) {
    for (auto& v : out) v *= target / mean;
  } else if (target > 0.0) {
    throw InvalidInput("resample_template: all power lost by nearest-bin sampling");
  }
  return PsdTemplate(std::move(out), tpl.sample_rate_hz(), tpl.label());
}

Eigen::MatrixXcd dense_matrix(const CovarianceModel& sigma) {
  const auto n = sigma.n();
  require_dense_size(n);
  const auto r = sigma.autocov();
  Eigen::MatrixXcd out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          i >= j ? r[i - j] : std::conj(r[j - i]);
    }
  }
  return out;
}

Eigen::MatrixXcd dense_matrix(const CirculantModel& circ) {
  const auto n = circ.n();
  require_dense_size(n);
  const auto lags = autocovariance_from_psd(PsdTemplate({circ.eigenvalues().begin(),
                                                          circ.eigenvalues().end()}));
  const auto c = lags.autocov();
  Eigen::MatrixXcd out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c[(i + n - j) % n];
    }
  }
  return out;
}

}  // namespace specsense
