// specsense: spectrum-sensing experiments from a JSON config.
//
//   specsense calibrate   <config.json> [--seed S] [--out DIR] [--workers W]
//   specsense sweep       <config.json> ...
//   specsense equivalence <config.json> ...
//   specsense features    <config.json> ...
//   specsense template export <config.json> [--n BINS] ...
//
// Exit codes: 0 success, 2 invalid config, 3 numerical failure, 1 other errors.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "specsense/experiment/config.hpp"
#include "specsense/experiment/harness.hpp"
#include "specsense/experiment/report.hpp"
#include "specsense/feature_optimizer.hpp"
#include "specsense/signal_synthesis.hpp"
#include "specsense/template_io.hpp"

namespace fs = std::filesystem;
using namespace specsense;
using namespace specsense::experiment;

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("config", opts.config_path, "experiment config (JSON)")->required();
  cmd->add_option("--seed", opts.seed, "override base seed");
  cmd->add_option("--out", opts.out, "override output directory");
  cmd->add_option("--workers", opts.workers, "worker threads (0 = all cores)");
}

ExperimentConfig load(const CommonOptions& opts) {
  auto cfg = load_config(opts.config_path);
  if (opts.seed) cfg.base_seed.seed = *opts.seed;
  if (opts.out) cfg.output_dir = *opts.out;
  if (opts.workers) cfg.workers = *opts.workers;
  fs::create_directories(cfg.output_dir);
  return cfg;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

ExperimentResult calibrated(const ExperimentConfig& cfg) {
  ExperimentResult r;
  if (cfg.threshold) {
    r.threshold = *cfg.threshold;
    std::cout << "threshold (from config): " << r.threshold << '\n';
  } else {
    r.threshold = calibrate_threshold(cfg);
    std::cout << "threshold at target pfa " << cfg.target_pfa << " over " << cfg.trials_calibration
              << " H0 trials: " << r.threshold << '\n';
  }
  if (cfg.pfa_validation_trials > 0) {
    const auto m = measure_pfa(cfg, r.threshold, cfg.pfa_validation_trials);
    r.pfa_measured = m.pfa;
    std::cout << "measured pfa on " << m.trials << " fresh H0 trials: " << m.pfa << " [" << m.wilson.lo
              << ", " << m.wilson.hi << "]\n";
  }
  return r;
}

int run_calibrate(const CommonOptions& opts) {
  const auto cfg = load(opts);
  const auto start = std::chrono::steady_clock::now();
  auto r = calibrated(cfg);
  r.metadata.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.metadata.block_mode = block_mode_label(cfg);
  r.metadata.config_hash = config_hash(cfg);
  r.metadata.seed = cfg.base_seed.seed;
  r.metadata.stream_id = cfg.base_seed.stream_id;
  r.metadata.detector = std::string(to_string(cfg.detector));
  r.metadata.template_label = cfg.template_spec.label;
  write_metadata_json(cfg.output_dir / "calibration.json", r);
  return 0;
}

int run_sweep(const CommonOptions& opts) {
  const auto cfg = load(opts);
  const auto cal = calibrated(cfg);
  std::vector<PlotSeries> curves;
  for (auto channel : cfg.channels) {
    const std::string name(to_string(channel));
    auto csv = open_out(cfg.output_dir / ("sweep_" + name + ".csv"));
    write_sweep_header(csv);
    if (channel == ChannelKind::pedb && cfg.profile.taps_collapse(cfg.sample_rate_hz)) {
      std::cerr << "warning: all multipath taps round to delay 0 at " << cfg.sample_rate_hz
                << " Hz; Ped-B degenerates to flat fading\n";
    }
    auto result = run_pmd_sweep(cfg, cal.threshold, channel, [&](const SweepRow& row) {
      write_sweep_row(csv, row);
      csv.flush();
      std::cout << name << " snr " << row.snr_db << " dB: pmd " << row.pmd << " (" << row.misses << "/"
                << row.trials << ")\n";
    });
    result.pfa_measured = cal.pfa_measured;
    write_metadata_json(cfg.output_dir / ("sweep_" + name + "_meta.json"), result);
    PlotSeries s{name, {}, {}};
    for (const auto& row : result.rows) {
      s.x.push_back(row.snr_db);
      s.y.push_back(row.pmd);
    }
    curves.push_back(std::move(s));
  }
  auto svg = open_out(cfg.output_dir / "pmd_vs_snr.svg");
  PlotSpec spec;
  spec.title = "Missed detection rate, " + std::string(to_string(cfg.detector)) + " / " +
               cfg.template_spec.label;
  spec.x_label = "SNR (dB)";
  spec.y_label = "P_md";
  spec.y_floor = 1.0 / (2.0 * static_cast<double>(cfg.trials_per_snr));
  write_svg_plot(svg, spec, curves);
  return 0;
}

int run_equivalence(const CommonOptions& opts) {
  const auto cfg = load(opts);
  auto spec = cfg.template_spec;
  spec.bandwidth_hz = cfg.sample_rate_hz;
  const auto rows = run_equivalence_experiment(spec, cfg.equivalence.n_list, cfg.equivalence.trials,
                                               cfg.equivalence.snr_db, cfg.base_seed,
                                               cfg.resolved_workers());
  auto csv = open_out(cfg.output_dir / "equivalence.csv");
  write_equivalence_csv(csv, rows);
  write_equivalence_csv(std::cout, rows);

  PlotSeries mean{"mean |T_LRT - T_n|", {}, {}};
  PlotSeries norm{"weak norm", {}, {}};
  for (const auto& r : rows) {
    mean.x.push_back(static_cast<double>(r.n));
    mean.y.push_back(r.mean_abs_diff);
    norm.x.push_back(static_cast<double>(r.n));
    norm.y.push_back(r.weak_norm);
  }
  auto svg = open_out(cfg.output_dir / "equivalence.svg");
  PlotSpec ps;
  ps.title = "Toeplitz vs circulant statistic, " + spec.label;
  ps.x_label = "n";
  ps.y_label = "difference";
  ps.log_x = true;
  ps.y_floor = 1e-300;
  write_svg_plot(svg, ps, {mean, norm});
  return 0;
}

int run_features(const CommonOptions& opts) {
  const auto cfg = load(opts);
  std::vector<TemplateSpec> specs;
  for (auto kind : cfg.features.templates) {
    specs.push_back(TemplateSpec::defaults(kind, cfg.block_length(), cfg.sample_rate_hz));
  }
  const auto rows = run_feature_ordering(specs, cfg.features.snr_db, cfg);
  auto csv = open_out(cfg.output_dir / "features.csv");
  write_features_csv(csv, rows);
  write_features_csv(std::cout, rows);

  auto sep = open_out(cfg.output_dir / "separation.csv");
  write_separation_csv_header(sep);
  for (const auto& s : specs) {
    const auto tpl = make_template(s);
    write_separation_csv_row(sep, tpl, separation(tpl, 1.0));
  }
  return 0;
}

int run_template_export(const CommonOptions& opts, std::optional<std::size_t> bins) {
  const auto cfg = load(opts);
  auto spec = cfg.template_spec;
  spec.n = bins.value_or(cfg.block_length());
  spec.bandwidth_hz = cfg.sample_rate_hz;
  const auto tpl = make_template(spec);
  const auto path = cfg.output_dir / (tpl.label() + "_" + std::to_string(tpl.n()) + ".txt");
  save_template(path, tpl);
  std::cout << "wrote " << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra-correlation spectrum sensing experiments"};
  app.require_subcommand(1);

  CommonOptions calibrate_opts, sweep_opts, equivalence_opts, features_opts, export_opts;
  std::optional<std::size_t> export_bins;

  add_common(app.add_subcommand("calibrate", "Monte Carlo H0 threshold calibration"), calibrate_opts);
  add_common(app.add_subcommand("sweep", "missed-detection rate over the SNR grid"), sweep_opts);
  add_common(app.add_subcommand("equivalence", "Toeplitz vs circulant statistic convergence"),
             equivalence_opts);
  add_common(app.add_subcommand("features", "detectability of several templates at one SNR"),
             features_opts);
  auto* tpl_cmd = app.add_subcommand("template", "template utilities");
  tpl_cmd->require_subcommand(1);
  auto* export_cmd = tpl_cmd->add_subcommand("export", "write the configured template as text");
  add_common(export_cmd, export_opts);
  export_cmd->add_option("--n", export_bins, "number of bins (default: block length)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidConfig;
  }

  try {
    if (app.got_subcommand("calibrate")) return run_calibrate(calibrate_opts);
    if (app.got_subcommand("sweep")) return run_sweep(sweep_opts);
    if (app.got_subcommand("equivalence")) return run_equivalence(equivalence_opts);
    if (app.got_subcommand("features")) return run_features(features_opts);
    if (tpl_cmd->got_subcommand("export")) return run_template_export(export_opts, export_bins);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << " (rcond " << e.condition_estimate() << ")\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
