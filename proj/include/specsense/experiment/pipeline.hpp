#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "specsense/detectors.hpp"
#include "specsense/experiment/config.hpp"
#include "specsense/types.hpp"

namespace specsense::experiment {

// Top-level stream tags; each trial's seed is base.derive({purpose, index}).
enum class TrialPurpose : std::uint64_t {
  calibration = 1,
  validation = 2,
  sweep = 3,
  equivalence = 4,
};

RngSeed trial_seed(const RngSeed& base, TrialPurpose purpose, std::size_t index);

// Per-trial signal chain and statistic for one config. Received blocks are
// referenced to unit noise variance (the signal carries the SNR), so one H0
// threshold serves the whole SNR grid.
class TrialPipeline {
 public:
  explicit TrialPipeline(const ExperimentConfig& cfg);

  const PsdTemplate& block_template() const { return template_; }

  // Configured statistic of one detection interval; block statistics are
  // averaged when block_count > 1.
  double statistic(const SampleBuffer& y) const;

  SampleBuffer noise_only(const RngSeed& trial) const;

  // Primary signal (P_x = 1) through the channel plus AWGN at snr_db,
  // divided by sigma_v.
  SampleBuffer received(const RngSeed& trial, double snr_db, ChannelKind channel) const;

 private:
  SampleBuffer block(const SampleBuffer& y, std::size_t b) const;

  ExperimentConfig cfg_;
  PsdTemplate template_;
  std::optional<CovarianceModel> covariance_;
  std::optional<ExactLrt> exact_;
};

// Calls fn(i) for every i in [0, count) on up to `workers` threads. fn must
// write only to state owned by index i. The first exception is rethrown.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace specsense::experiment
