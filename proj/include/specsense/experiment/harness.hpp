#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specsense/experiment/config.hpp"
#include "specsense/experiment/stats.hpp"
#include "specsense/signal_synthesis.hpp"

namespace specsense::experiment {

// Largest n accepted by the equivalence experiment. The Toeplitz statistic
// runs through a 2n FFT embedding, so this is a memory bound, not a dense one.
inline constexpr std::size_t kToeplitzPathCap = 65536;

// Empirical (1 - target_pfa) quantile of the configured statistic over
// trials_calibration pure-noise intervals.
double calibrate_threshold(const ExperimentConfig& cfg);

// Human-readable periodogram mode, e.g. "average of 4 block periodograms of 36000 samples".
std::string block_mode_label(const ExperimentConfig& cfg);

struct PfaMeasurement {
  std::size_t trials = 0;
  std::size_t false_alarms = 0;
  double pfa = 0.0;
  Interval wilson;
};

// False-alarm rate of `threshold` on fresh H0 trials (independent of the
// calibration stream).
PfaMeasurement measure_pfa(const ExperimentConfig& cfg, double threshold, std::size_t trials);

struct SweepRow {
  double snr_db = 0.0;
  std::size_t trials = 0;
  std::size_t misses = 0;
  double pmd = 0.0;
  Interval wilson;
};

struct ExperimentMetadata {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::string detector;
  std::string template_label;
  std::string channel;
  std::string block_mode;
  double wall_seconds = 0.0;
};

struct ExperimentResult {
  double threshold = 0.0;
  std::optional<double> pfa_measured;
  std::vector<SweepRow> rows;
  ExperimentMetadata metadata;
};

using SweepRowSink = std::function<void(const SweepRow&)>;

// Missed-detection rate at every grid SNR; a miss is statistic <= threshold.
// Trial seeds do not depend on SNR or channel, so curves share realizations.
// Each completed row is passed to `sink` before the next SNR starts.
ExperimentResult run_pmd_sweep(const ExperimentConfig& cfg, double threshold, ChannelKind channel,
                               const SweepRowSink& sink = {});

struct EquivalenceRow {
  std::size_t n = 0;
  double mean_abs_diff = 0.0;
  double max_abs_diff = 0.0;
  double weak_norm = 0.0;
};

// For each n: |T_LRT,n - T_n| between the low-SNR quadratic form against the
// Toeplitz process covariance and the spectra-correlation statistic, over
// `trials` H1 blocks, plus the weak norm of Sigma_n - C_n.
std::vector<EquivalenceRow> run_equivalence_experiment(const TemplateSpec& spec,
                                                       const std::vector<std::size_t>& n_list,
                                                       std::size_t trials, double snr_db,
                                                       const RngSeed& rng, unsigned workers = 1);

struct FeatureRow {
  std::string label;
  double objective = 0.0;
  double gap = 0.0;
  double threshold = 0.0;
  std::size_t trials = 0;
  std::size_t misses = 0;
  double pmd = 0.0;
  Interval wilson;
};

// One calibrated threshold per template at cfg.target_pfa and the missed
// detection rate at snr_db on the first configured channel. All templates
// use the same trial seeds.
std::vector<FeatureRow> run_feature_ordering(const std::vector<TemplateSpec>& templates,
                                             double snr_db, const ExperimentConfig& cfg);

}  // namespace specsense::experiment
