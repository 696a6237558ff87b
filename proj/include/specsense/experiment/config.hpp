#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specsense/channel.hpp"
#include "specsense/detectors.hpp"
#include "specsense/random.hpp"
#include "specsense/signal_synthesis.hpp"

namespace specsense::experiment {

// Invalid experiment configuration; the CLI maps it to exit code 2.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

enum class ChannelKind { awgn, pedb };

std::string_view to_string(ChannelKind kind);

struct EquivalenceSettings {
  std::vector<std::size_t> n_list{256, 1024, 4096};
  std::size_t trials = 200;
  double snr_db = -10.0;
};

struct FeatureSettings {
  std::vector<TemplateKind> templates{TemplateKind::single_bin, TemplateKind::ntsc_like,
                                      TemplateKind::atsc_like, TemplateKind::flat};
  double snr_db = -25.0;
};

struct ExperimentConfig {
  DetectorKind detector = DetectorKind::spectra_correlation;
  // `template_spec.n` is ignored; templates are built at block_length().
  TemplateSpec template_spec = TemplateSpec::defaults(TemplateKind::ntsc_like, 4096);
  std::optional<std::filesystem::path> template_file;
  std::vector<ChannelKind> channels{ChannelKind::awgn};
  PowerDelayProfile profile = PowerDelayProfile::pedestrian_b();
  std::vector<double> snr_grid_db{-24.0, -22.0, -20.0, -18.0, -16.0};

  // One 24 ms detection interval at 6 MHz, processed as four averaged 6 ms
  // block periodograms. block_count = 1 gives a single long periodogram.
  std::size_t n_samples = 144000;
  std::size_t block_count = 4;
  double sample_rate_hz = kDefaultSampleRateHz;

  std::size_t trials_calibration = 10000;
  std::size_t trials_per_snr = 2000;
  // Fresh H0 trials used to measure the false-alarm rate of the calibrated
  // threshold; 0 skips the measurement.
  std::size_t pfa_validation_trials = 10000;
  double target_pfa = 0.01;
  std::optional<double> threshold;
  // SNR at which lrt_exact builds its covariance (default: lowest grid SNR).
  std::optional<double> design_snr_db;

  RngSeed base_seed{1, 0};
  std::filesystem::path output_dir = "out";
  unsigned workers = 0;  // 0: one per hardware thread

  EquivalenceSettings equivalence;
  FeatureSettings features;

  std::size_t block_length() const { return block_count ? n_samples / block_count : 0; }
  unsigned resolved_workers() const;

  // Throws ConfigError on the first violated constraint.
  void validate() const;
};

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Canonical JSON rendering and a 64-bit FNV-1a hash of it.
std::string canonical_json(const ExperimentConfig& cfg);
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace specsense::experiment
