#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "specsense/types.hpp"

namespace specsense {

// Dense materialization is limited to this dimension (exact LRT and oracles).
inline constexpr std::size_t kDenseCap = 4096;

// values[k] = |sum_l y(l) e^{-j2 pi k l/n}|^2 / n
Periodogram periodogram(const SampleBuffer& buf);

// Mean of the block periodograms of consecutive, equal-length blocks.
// buf.size() must be a multiple of block_len.
Periodogram averaged_periodogram(const SampleBuffer& buf, std::size_t block_len);

// Wiener-Khinchin: r(m) = (1/n) sum_k S(k) e^{+j2 pi k m/n}, m = 0..n-1.
CovarianceModel autocovariance_from_psd(const PsdTemplate& tpl);

CirculantModel circulant_from_psd(const PsdTemplate& tpl);

// Weak (Hilbert-Schmidt) norm sqrt((1/n) sum_ij |Sigma_ij - C_ij|^2), O(n).
double weak_norm_diff(const CovarianceModel& sigma, const CirculantModel& circ);

// Sigma * y through a 2n circulant embedding.
std::vector<Complex> toeplitz_multiply(const CovarianceModel& sigma, std::span<const Complex> y);

// Upper bound on the largest eigenvalue of Sigma: the maximum eigenvalue of the
// 2n circulant that embeds it (interlacing).
double max_eigenvalue_bound(const CovarianceModel& sigma);

// (1/n) y^H M y. The circulant overload runs in O(n log n) through the DFT.
double quadratic_form(const SampleBuffer& y, const CovarianceModel& model);
double quadratic_form(const SampleBuffer& y, const CirculantModel& model);

// Nearest-bin resampling to m bins, rescaled to keep the source average power.
PsdTemplate resample_template(const PsdTemplate& tpl, std::size_t m);

Eigen::MatrixXcd dense_matrix(const CovarianceModel& sigma);
Eigen::MatrixXcd dense_matrix(const CirculantModel& circ);

}  // namespace specsense
