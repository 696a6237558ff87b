#include "specsense/random.hpp"

#include <cmath>

namespace specsense {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RngSeed RngSeed::derive(std::initializer_list<std::uint64_t> tags) const {
  std::uint64_t h = splitmix64(stream_id);
  for (auto t : tags) h = splitmix64(h ^ splitmix64(t));
  return {seed, h};
}

std::mt19937_64 make_engine(const RngSeed& rng) {
  std::seed_seq seq{static_cast<std::uint32_t>(rng.seed), static_cast<std::uint32_t>(rng.seed >> 32),
                    static_cast<std::uint32_t>(rng.stream_id),
                    static_cast<std::uint32_t>(rng.stream_id >> 32)};
  return std::mt19937_64(seq);
}

std::vector<Complex> complex_gaussian(std::size_t n, double variance, const RngSeed& rng) {
  if (!(variance >= 0.0) || !std::isfinite(variance)) {
    throw InvalidInput("complex_gaussian: variance must be finite and nonnegative");
  }
  auto engine = make_engine(rng);
  std::normal_distribution<double> unit(0.0, 1.0);
  const double scale = std::sqrt(variance / 2.0);
  std::vector<Complex> out(n);
  for (auto& v : out) {
    const double re = unit(engine);
    const double im = unit(engine);
    v = Complex(scale * re, scale * im);
  }
  return out;
}

}  // namespace specsense
