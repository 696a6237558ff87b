#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "specsense/types.hpp"

namespace specsense {

// Explicit RNG stream handle. There is no global generator: every draw
// names its (seed, stream_id) pair, so parallel trials reproduce exactly.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  // Child stream keyed by a sequence of tags (trial index, purpose, ...).
  RngSeed derive(std::initializer_list<std::uint64_t> tags) const;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

std::mt19937_64 make_engine(const RngSeed& rng);

// n i.i.d. CN(0, variance) draws.
std::vector<Complex> complex_gaussian(std::size_t n, double variance, const RngSeed& rng);

}  // namespace specsense
