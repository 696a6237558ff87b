#include "specsense/experiment/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "specsense/channel.hpp"
#include "specsense/signal_synthesis.hpp"
#include "specsense/spectral_core.hpp"
#include "specsense/template_io.hpp"

namespace specsense::experiment {

namespace {

constexpr std::uint64_t kSignalTag = 10;
constexpr std::uint64_t kNoiseTag = 11;
constexpr std::uint64_t kFadingTag = 12;

PsdTemplate normalized(const PsdTemplate& tpl) {
  const double p = tpl.average_power();
  if (!(p > 0.0)) throw ConfigError("template has zero average power");
  std::vector<double> v(tpl.values().begin(), tpl.values().end());
  for (auto& x : v) x /= p;
  return PsdTemplate(std::move(v), tpl.sample_rate_hz(), tpl.label());
}

PsdTemplate build_template(const ExperimentConfig& cfg) {
  if (cfg.template_file) {
    return normalized(resample_template(load_template(*cfg.template_file), cfg.block_length()));
  }
  auto spec = cfg.template_spec;
  spec.n = cfg.block_length();
  spec.bandwidth_hz = cfg.sample_rate_hz;
  return make_template(spec);
}

CovarianceModel build_covariance(const ExperimentConfig& cfg) {
  const std::size_t m = cfg.block_length();
  if (cfg.template_file) {
    const auto source = normalized(load_template(*cfg.template_file));
    if (source.n() < m) {
      throw ConfigError("template file has fewer bins than the block length; cannot build a "
                        "Toeplitz covariance from it");
    }
    return autocovariance_from_psd(source).leading(m);
  }
  auto spec = cfg.template_spec;
  spec.bandwidth_hz = cfg.sample_rate_hz;
  return process_covariance(spec, m);
}

CovarianceModel scaled(const CovarianceModel& sigma, double factor) {
  std::vector<Complex> r(sigma.autocov().begin(), sigma.autocov().end());
  for (auto& v : r) v *= factor;
  return CovarianceModel(std::move(r));
}

}  // namespace

RngSeed trial_seed(const RngSeed& base, TrialPurpose purpose, std::size_t index) {
  return base.derive({static_cast<std::uint64_t>(purpose), static_cast<std::uint64_t>(index)});
}

TrialPipeline::TrialPipeline(const ExperimentConfig& cfg)
    : cfg_(cfg), template_(build_template(cfg)) {
  cfg_.validate();
  switch (cfg_.detector) {
    case DetectorKind::lrt_low_snr:
      covariance_ = build_covariance(cfg_);
      break;
    case DetectorKind::lrt_exact: {
      const double design_snr = cfg_.design_snr_db.value_or(
          *std::min_element(cfg_.snr_grid_db.begin(), cfg_.snr_grid_db.end()));
      exact_.emplace(scaled(build_covariance(cfg_), std::pow(10.0, design_snr / 10.0)), 1.0);
      break;
    }
    case DetectorKind::spectra_correlation:
    case DetectorKind::energy:
      break;
  }
}

SampleBuffer TrialPipeline::block(const SampleBuffer& y, std::size_t b) const {
  const std::size_t m = cfg_.block_length();
  const auto s = y.samples();
  return SampleBuffer({s.begin() + static_cast<std::ptrdiff_t>(b * m),
                       s.begin() + static_cast<std::ptrdiff_t>((b + 1) * m)},
                      y.sample_rate_hz());
}

double TrialPipeline::statistic(const SampleBuffer& y) const {
  if (y.size() != cfg_.n_samples) throw InvalidInput("TrialPipeline: wrong interval length");
  switch (cfg_.detector) {
    case DetectorKind::spectra_correlation:
      return stat_spectra_correlation(averaged_periodogram(y, cfg_.block_length()), template_);
    case DetectorKind::energy:
      return stat_energy(y);
    case DetectorKind::lrt_low_snr:
    case DetectorKind::lrt_exact: {
      double acc = 0.0;
      for (std::size_t b = 0; b < cfg_.block_count; ++b) {
        const auto blk = block(y, b);
        acc += exact_ ? (*exact_)(blk) : stat_lrt_low_snr(blk, *covariance_).value;
      }
      return acc / static_cast<double>(cfg_.block_count);
    }
  }
  return 0.0;
}

SampleBuffer TrialPipeline::noise_only(const RngSeed& trial) const {
  return SampleBuffer(complex_gaussian(cfg_.n_samples, 1.0, trial.derive({kNoiseTag})),
                      cfg_.sample_rate_hz);
}

SampleBuffer TrialPipeline::received(const RngSeed& trial, double snr_db,
                                     ChannelKind channel) const {
  const std::size_t m = cfg_.block_length();
  std::vector<Complex> signal;
  signal.reserve(cfg_.n_samples);
  for (std::size_t b = 0; b < cfg_.block_count; ++b) {
    const auto x = generate_gaussian_signal(template_, m, trial.derive({kSignalTag, b}));
    signal.insert(signal.end(), x.samples().begin(), x.samples().end());
  }
  SampleBuffer x(std::move(signal), cfg_.sample_rate_hz);
  if (channel == ChannelKind::pedb) x = apply_pedb(x, cfg_.profile, trial.derive({kFadingTag}));

  const AwgnSpec awgn{snr_db};
  const auto y = add_awgn(x, awgn, trial.derive({kNoiseTag}));
  const double inv_sigma = 1.0 / std::sqrt(awgn.noise_variance());
  std::vector<Complex> out(y.samples().begin(), y.samples().end());
  for (auto& v : out) v *= inv_sigma;
  return SampleBuffer(std::move(out), cfg_.sample_rate_hz);
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  const unsigned threads = static_cast<unsigned>(
      std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace specsense::experiment
