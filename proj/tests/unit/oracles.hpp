#pragma once

// Reference computations for tests. Everything here is built from the
// textbook definitions (explicit DFT matrices, O(n^2) sums) and shares no
// code path with the FFT-based library routines.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// Unitary DFT matrix W(k, l) = e^{-j 2 pi k l / n} / sqrt(n).
inline Eigen::MatrixXcd unitary_dft(int n) {
  Eigen::MatrixXcd w(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const double angle = -2.0 * std::numbers::pi * k * l / n;
      w(k, l) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), angle);
    }
  }
  return w;
}

// W^H diag(lambda) W
inline Eigen::MatrixXcd circulant(const std::vector<double>& lambda) {
  const int n = static_cast<int>(lambda.size());
  const auto w = unitary_dft(n);
  Eigen::VectorXcd d(n);
  for (int k = 0; k < n; ++k) d(k) = lambda[k];
  return w.adjoint() * d.asDiagonal() * w;
}

// r(m) = (1/n) sum_k S(k) e^{+j 2 pi k m / n}, by direct summation.
inline std::vector<Complex> autocov(const std::vector<double>& psd) {
  const int n = static_cast<int>(psd.size());
  std::vector<Complex> r(n);
  for (int m = 0; m < n; ++m) {
    Complex acc{};
    for (int k = 0; k < n; ++k) acc += psd[k] * std::polar(1.0, 2.0 * std::numbers::pi * k * m / n);
    r[m] = acc / static_cast<double>(n);
  }
  return r;
}

inline Eigen::MatrixXcd toeplitz(const std::vector<Complex>& r) {
  const int n = static_cast<int>(r.size());
  Eigen::MatrixXcd t(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t(i, j) = i >= j ? r[i - j] : std::conj(r[j - i]);
  }
  return t;
}

// |sum_l y(l) e^{-j2 pi k l/n}|^2 / n, O(n^2).
inline std::vector<double> periodogram(const std::vector<Complex>& y) {
  const int n = static_cast<int>(y.size());
  std::vector<double> p(n);
  for (int k = 0; k < n; ++k) {
    Complex acc{};
    for (int l = 0; l < n; ++l) acc += y[l] * std::polar(1.0, -2.0 * std::numbers::pi * k * l / n);
    p[k] = std::norm(acc) / n;
  }
  return p;
}

// (1/n) y^H M y with a dense matrix.
inline double quadratic_form(const std::vector<Complex>& y, const Eigen::MatrixXcd& m) {
  const Eigen::Map<const Eigen::VectorXcd> v(y.data(), static_cast<Eigen::Index>(y.size()));
  return v.dot(m * v).real() / static_cast<double>(y.size());
}

inline std::vector<Complex> random_complex(std::size_t n, std::mt19937_64& gen, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  std::vector<Complex> y(n);
  for (auto& v : y) v = Complex(d(gen), d(gen));
  return y;
}

// Uniform draw from the simplex {S >= 0, mean S = p_x} (symmetric Dirichlet(1)).
inline std::vector<double> random_simplex(std::size_t n, double p_x, std::mt19937_64& gen) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> s(n);
  double total = 0.0;
  for (auto& v : s) total += (v = e(gen));
  for (auto& v : s) v *= p_x * static_cast<double>(n) / total;
  return s;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace oracle
