#include <set>

#include "doctest.h"
#include "specsense/random.hpp"

using namespace specsense;

TEST_CASE("same seed and stream reproduce the same draws") {
  const RngSeed s{42, 3};
  CHECK(complex_gaussian(64, 1.0, s) == complex_gaussian(64, 1.0, s));
  CHECK(s.derive({1, 2}) == s.derive({1, 2}));
}

TEST_CASE("distinct streams and derived children differ") {
  const RngSeed a{42, 0}, b{42, 1}, c{43, 0};
  const auto xa = complex_gaussian(8, 1.0, a);
  CHECK(xa != complex_gaussian(8, 1.0, b));
  CHECK(xa != complex_gaussian(8, 1.0, c));

  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (std::uint64_t p = 0; p < 5; ++p) {
    for (std::uint64_t i = 0; i < 200; ++i) {
      const auto d = a.derive({p, i});
      seen.insert({d.seed, d.stream_id});
    }
  }
  CHECK(seen.size() == 1000);
  CHECK(a.derive({1, 2}) != a.derive({2, 1}));
  CHECK(a.derive({1}) != a.derive({1, 0}));
}

TEST_CASE("complex gaussian moments") {
  const auto x = complex_gaussian(200000, 4.0, RngSeed{7, 0});
  double power = 0.0, cross = 0.0;
  Complex mean{};
  for (const auto& v : x) {
    power += std::norm(v);
    cross += v.real() * v.imag();
    mean += v;
  }
  const double n = static_cast<double>(x.size());
  CHECK(power / n == doctest::Approx(4.0).epsilon(0.02));
  CHECK(std::abs(cross / n) < 0.05);
  CHECK(std::abs(mean / n) < 0.02);
  CHECK(complex_gaussian(4, 0.0, RngSeed{}) == std::vector<Complex>(4, Complex{}));
  CHECK_THROWS_AS(complex_gaussian(4, -1.0, RngSeed{}), InvalidInput);
}
