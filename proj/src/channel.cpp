#include "specsense/channel.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

namespace specsense {

double AwgnSpec::noise_variance(double signal_power) const {
  return signal_power * std::pow(10.0, -snr_db / 10.0);
}

SampleBuffer add_awgn(const SampleBuffer& x, const AwgnSpec& spec, const RngSeed& rng,
                      double signal_power) {
  const double var = spec.noise_variance(signal_power);
  if (!(var > 0.0) || !std::isfinite(var)) throw InvalidInput("add_awgn: invalid noise variance");
  auto noise = complex_gaussian(x.size(), 1.0, rng);
  const double sigma = std::sqrt(var);
  const auto samples = x.samples();
  for (std::size_t l = 0; l < noise.size(); ++l) noise[l] = samples[l] + sigma * noise[l];
  return SampleBuffer(std::move(noise), x.sample_rate_hz());
}

PowerDelayProfile::PowerDelayProfile(std::vector<double> tap_delays_ns,
                                     std::vector<double> tap_gains_db)
    : delays_ns_(std::move(tap_delays_ns)), gains_db_(std::move(tap_gains_db)) {
  if (delays_ns_.empty() || delays_ns_.size() != gains_db_.size()) {
    throw InvalidInput("PowerDelayProfile: need equal, nonzero numbers of delays and gains");
  }
  for (std::size_t m = 0; m < delays_ns_.size(); ++m) {
    if (!std::isfinite(delays_ns_[m]) || delays_ns_[m] < 0.0 || !std::isfinite(gains_db_[m])) {
      throw InvalidInput("PowerDelayProfile: delays must be >= 0 and gains finite");
    }
  }
}

PowerDelayProfile PowerDelayProfile::pedestrian_b() {
  return PowerDelayProfile({0.0, 200.0, 800.0, 1200.0, 2300.0, 3700.0},
                           {0.0, -0.9, -4.9, -8.0, -7.8, -23.9});
}

std::vector<double> PowerDelayProfile::normalized_powers() const {
  std::vector<double> p(gains_db_.size());
  for (std::size_t m = 0; m < p.size(); ++m) p[m] = std::pow(10.0, gains_db_[m] / 10.0);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= total;
  return p;
}

double PowerDelayProfile::rms_delay_spread_ns() const {
  const auto p = normalized_powers();
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) {
    mean += p[m] * delays_ns_[m];
    second += p[m] * delays_ns_[m] * delays_ns_[m];
  }
  return std::sqrt(std::max(0.0, second - mean * mean));
}

std::vector<std::size_t> PowerDelayProfile::tap_indices(double sample_rate_hz) const {
  std::vector<std::size_t> idx(delays_ns_.size());
  for (std::size_t m = 0; m < idx.size(); ++m) {
    idx[m] = static_cast<std::size_t>(std::llround(delays_ns_[m] * sample_rate_hz / 1e9));
  }
  return idx;
}

bool PowerDelayProfile::taps_collapse(double sample_rate_hz) const {
  if (delays_ns_.size() < 2) return false;
  for (auto d : tap_indices(sample_rate_hz)) {
    if (d != 0) return false;
  }
  return true;
}

PowerDelayProfile load_power_delay_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open power-delay profile " + path.string());
  std::vector<double> delays;
  std::vector<double> gains;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    double d = 0.0;
    double g = 0.0;
    if (!(row >> d)) continue;
    if (!(row >> g)) throw InvalidInput("power-delay profile: malformed row '" + line + "'");
    delays.push_back(d);
    gains.push_back(g);
  }
  return PowerDelayProfile(std::move(delays), std::move(gains));
}

std::vector<Complex> draw_fading_taps(const PowerDelayProfile& profile, const RngSeed& rng) {
  const auto powers = profile.normalized_powers();
  auto taps = complex_gaussian(powers.size(), 1.0, rng);
  for (std::size_t m = 0; m < taps.size(); ++m) taps[m] *= std::sqrt(powers[m]);
  return taps;
}

SampleBuffer apply_fading(const SampleBuffer& x, const PowerDelayProfile& profile,
                          std::span<const Complex> taps) {
  if (taps.size() != profile.tap_delays_ns().size()) {
    throw InvalidInput("apply_fading: tap count does not match profile");
  }
  const auto delays = profile.tap_indices(x.sample_rate_hz());
  const auto in = x.samples();
  std::vector<Complex> out(in.size(), Complex{});
  for (std::size_t m = 0; m < taps.size(); ++m) {
    const std::size_t d = delays[m];
    for (std::size_t l = d; l < in.size(); ++l) out[l] += taps[m] * in[l - d];
  }
  return SampleBuffer(std::move(out), x.sample_rate_hz());
}

SampleBuffer apply_pedb(const SampleBuffer& x, const PowerDelayProfile& profile,
                        const RngSeed& rng) {
  return apply_fading(x, profile, draw_fading_taps(profile, rng));
}

}  // namespace specsense
