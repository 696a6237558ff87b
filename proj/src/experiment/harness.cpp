#include "specsense/experiment/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "specsense/channel.hpp"
#include "specsense/detectors.hpp"
#include "specsense/experiment/pipeline.hpp"
#include "specsense/feature_optimizer.hpp"
#include "specsense/spectral_core.hpp"

namespace specsense::experiment {

namespace {

std::vector<double> h0_statistics(const TrialPipeline& pipe, const ExperimentConfig& cfg,
                                  TrialPurpose purpose, std::size_t trials) {
  std::vector<double> stats(trials);
  parallel_for(trials, cfg.resolved_workers(), [&](std::size_t i) {
    stats[i] = pipe.statistic(pipe.noise_only(trial_seed(cfg.base_seed, purpose, i)));
  });
  return stats;
}

SweepRow count_misses(const TrialPipeline& pipe, const ExperimentConfig& cfg, double threshold,
                      double snr_db, ChannelKind channel) {
  std::vector<unsigned char> missed(cfg.trials_per_snr, 0);
  parallel_for(cfg.trials_per_snr, cfg.resolved_workers(), [&](std::size_t i) {
    const auto y = pipe.received(trial_seed(cfg.base_seed, TrialPurpose::sweep, i), snr_db, channel);
    missed[i] = decide(pipe.statistic(y), threshold).hypothesis == Hypothesis::h0;
  });
  SweepRow row;
  row.snr_db = snr_db;
  row.trials = cfg.trials_per_snr;
  row.misses = static_cast<std::size_t>(std::count(missed.begin(), missed.end(), 1));
  row.pmd = static_cast<double>(row.misses) / static_cast<double>(row.trials);
  row.wilson = wilson_interval(row.misses, row.trials);
  return row;
}

}  // namespace

double calibrate_threshold(const ExperimentConfig& cfg) {
  cfg.validate();
  const TrialPipeline pipe(cfg);
  return upper_tail_threshold(
      h0_statistics(pipe, cfg, TrialPurpose::calibration, cfg.trials_calibration), cfg.target_pfa);
}

std::string block_mode_label(const ExperimentConfig& cfg) {
  if (cfg.block_count == 1) return "single periodogram of " + std::to_string(cfg.n_samples) + " samples";
  return "average of " + std::to_string(cfg.block_count) + " block periodograms of " +
         std::to_string(cfg.block_length()) + " samples";
}

PfaMeasurement measure_pfa(const ExperimentConfig& cfg, double threshold, std::size_t trials) {
  if (trials == 0) throw InvalidInput("measure_pfa: trials must be positive");
  const TrialPipeline pipe(cfg);
  const auto stats = h0_statistics(pipe, cfg, TrialPurpose::validation, trials);
  PfaMeasurement m;
  m.trials = trials;
  m.false_alarms = static_cast<std::size_t>(std::count_if(stats.begin(), stats.end(), [&](double s) {
    return decide(s, threshold).hypothesis == Hypothesis::h1;
  }));
  m.pfa = static_cast<double>(m.false_alarms) / static_cast<double>(trials);
  m.wilson = wilson_interval(m.false_alarms, trials);
  return m;
}

ExperimentResult run_pmd_sweep(const ExperimentConfig& cfg, double threshold, ChannelKind channel,
                               const SweepRowSink& sink) {
  const auto start = std::chrono::steady_clock::now();
  const TrialPipeline pipe(cfg);
  ExperimentResult result;
  result.threshold = threshold;
  for (double snr : cfg.snr_grid_db) {
    result.rows.push_back(count_misses(pipe, cfg, threshold, snr, channel));
    if (sink) sink(result.rows.back());
  }
  auto& meta = result.metadata;
  meta.config_hash = config_hash(cfg);
  meta.seed = cfg.base_seed.seed;
  meta.stream_id = cfg.base_seed.stream_id;
  meta.detector = std::string(to_string(cfg.detector));
  meta.template_label = pipe.block_template().label();
  meta.channel = std::string(to_string(channel));
  meta.block_mode = block_mode_label(cfg);
  meta.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<EquivalenceRow> run_equivalence_experiment(const TemplateSpec& spec,
                                                       const std::vector<std::size_t>& n_list,
                                                       std::size_t trials, double snr_db,
                                                       const RngSeed& rng, unsigned workers) {
  if (trials == 0) throw InvalidInput("run_equivalence_experiment: trials must be positive");
  std::vector<EquivalenceRow> rows;
  for (std::size_t n : n_list) {
    if (n > kToeplitzPathCap) {
      throw InvalidInput("run_equivalence_experiment: n = " + std::to_string(n) +
                         " exceeds the Toeplitz-path cap " + std::to_string(kToeplitzPathCap));
    }
    auto at_n = spec;
    at_n.n = n;
    const auto tpl = make_template(at_n);
    const auto sigma = process_covariance(spec, n);
    const auto circ = circulant_from_psd(tpl);
    const AwgnSpec awgn{snr_db};

    std::vector<double> diffs(trials);
    parallel_for(trials, workers, [&](std::size_t i) {
      const auto seed = rng.derive({static_cast<std::uint64_t>(TrialPurpose::equivalence), n, i});
      const auto x = generate_gaussian_signal(tpl, n, seed.derive({1}));
      const auto y = add_awgn(x, awgn, seed.derive({2}));
      diffs[i] = std::abs(stat_lrt_low_snr(y, sigma).value - stat_spectra_correlation(y, tpl));
    });

    EquivalenceRow row;
    row.n = n;
    double sum = 0.0;
    for (double d : diffs) sum += d;
    row.mean_abs_diff = sum / static_cast<double>(trials);
    row.max_abs_diff = *std::max_element(diffs.begin(), diffs.end());
    row.weak_norm = weak_norm_diff(sigma, circ);
    rows.push_back(row);
  }
  return rows;
}

std::vector<FeatureRow> run_feature_ordering(const std::vector<TemplateSpec>& templates,
                                             double snr_db, const ExperimentConfig& cfg) {
  std::vector<FeatureRow> rows;
  for (const auto& spec : templates) {
    auto local = cfg;
    local.template_spec = spec;
    local.template_file.reset();
    local.snr_grid_db = {snr_db};
    const TrialPipeline pipe(local);
    const auto report = separation(pipe.block_template(), 1.0);

    const double threshold = calibrate_threshold(local);
    const auto sweep = run_pmd_sweep(local, threshold, local.channels.front());

    FeatureRow row;
    row.label = pipe.block_template().label();
    row.objective = report.objective;
    row.gap = report.gap;
    row.threshold = threshold;
    row.trials = sweep.rows.front().trials;
    row.misses = sweep.rows.front().misses;
    row.pmd = sweep.rows.front().pmd;
    row.wilson = sweep.rows.front().wilson;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace specsense::experiment
