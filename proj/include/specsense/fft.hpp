#pragma once

#include <span>
#include <vector>

#include "specsense/types.hpp"

// Thin FFTW wrapper. Plans are cached per (size, direction) and shared across
// threads; execution uses the new-array interface, which FFTW allows from any
// thread.
namespace specsense::fft {

// X[k] = sum_l x[l] e^{-j 2 pi k l / n}
std::vector<Complex> forward(std::span<const Complex> x);

// x[l] = sum_k X[k] e^{+j 2 pi k l / n}   (no 1/n factor)
std::vector<Complex> inverse(std::span<const Complex> spectrum);

}  // namespace specsense::fft
