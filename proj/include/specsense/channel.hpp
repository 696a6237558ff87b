#pragma once

#include <filesystem>
#include <vector>

#include "specsense/random.hpp"
#include "specsense/types.hpp"

namespace specsense {

struct AwgnSpec {
  double snr_db = 0.0;

  // sigma_v^2 = P_x * 10^(-snr_db / 10)
  double noise_variance(double signal_power = 1.0) const;
};

// y = x + v, v ~ CN(0, sigma_v^2). Noise is drawn as unit-variance samples
// scaled by sigma_v, so one stream gives the same noise shape at every SNR.
SampleBuffer add_awgn(const SampleBuffer& x, const AwgnSpec& spec, const RngSeed& rng,
                      double signal_power = 1.0);

// Tapped-delay-line power-delay profile.
class PowerDelayProfile {
 public:
  PowerDelayProfile(std::vector<double> tap_delays_ns, std::vector<double> tap_gains_db);

  // ITU Pedestrian-B.
  static PowerDelayProfile pedestrian_b();

  const std::vector<double>& tap_delays_ns() const { return delays_ns_; }
  const std::vector<double>& tap_gains_db() const { return gains_db_; }

  // Linear tap powers scaled to sum to 1.
  std::vector<double> normalized_powers() const;
  double rms_delay_spread_ns() const;

  // round(delay_ns * fs / 1e9) per tap.
  std::vector<std::size_t> tap_indices(double sample_rate_hz) const;

  // True when every tap rounds to delay 0, so the channel degenerates to
  // flat fading at this sample rate.
  bool taps_collapse(double sample_rate_hz) const;

 private:
  std::vector<double> delays_ns_;
  std::vector<double> gains_db_;
};

// Two whitespace-separated columns per line: delay_ns gain_db. '#' starts a comment.
PowerDelayProfile load_power_delay_profile(const std::filesystem::path& path);

// One CN(0, p_m) coefficient per tap for a block.
std::vector<Complex> draw_fading_taps(const PowerDelayProfile& profile, const RngSeed& rng);

// Block-fading tapped delay line; output is truncated to the input length.
SampleBuffer apply_fading(const SampleBuffer& x, const PowerDelayProfile& profile,
                          std::span<const Complex> taps);
SampleBuffer apply_pedb(const SampleBuffer& x, const PowerDelayProfile& profile,
                        const RngSeed& rng);

}  // namespace specsense
