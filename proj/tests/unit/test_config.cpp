#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "specsense/experiment/config.hpp"

using namespace specsense;
using namespace specsense::experiment;

TEST_CASE("empty object yields the defaults") {
  const auto cfg = parse_config("{}");
  CHECK(cfg.detector == DetectorKind::spectra_correlation);
  CHECK(cfg.template_spec.kind == TemplateKind::ntsc_like);
  CHECK(cfg.template_spec.n == 36000);
  CHECK(cfg.block_length() == 36000);
  CHECK(cfg.channels == std::vector<ChannelKind>{ChannelKind::awgn});
  CHECK(cfg.target_pfa == 0.01);
  CHECK(cfg.trials_calibration == 10000);
  CHECK_FALSE(cfg.threshold.has_value());
}

TEST_CASE("full config parses") {
  const auto cfg = parse_config(R"({
    "detector": "lrt_low_snr",
    "template": {"kind": "atsc_like", "label": "pilot", "peak_width_hz": 2000},
    "channel": ["awgn", "pedb"],
    "snr_grid_db": [-20, -10],
    "n_samples": 16384, "block_count": 1,
    "trials_calibration": 200, "trials_per_snr": 50, "pfa_validation_trials": 0,
    "target_pfa": 0.05, "threshold": 1.5,
    "seed": 77, "stream_id": 3, "output_dir": "results", "workers": 2,
    "equivalence": {"n_list": [64, 128], "trials": 5, "snr_db": 0},
    "features": {"templates": ["flat", "ntsc_like"], "snr_db": -5}
  })");
  CHECK(cfg.detector == DetectorKind::lrt_low_snr);
  CHECK(cfg.template_spec.kind == TemplateKind::atsc_like);
  CHECK(cfg.template_spec.label == "pilot");
  CHECK(cfg.template_spec.n == 16384);
  CHECK(cfg.template_spec.peaks.at(0).width_hz == 2000.0);
  CHECK(cfg.channels.size() == 2);
  CHECK(cfg.snr_grid_db == std::vector<double>{-20.0, -10.0});
  CHECK(cfg.threshold == 1.5);
  CHECK(cfg.base_seed == RngSeed{77, 3});
  CHECK(cfg.output_dir == "results");
  CHECK(cfg.resolved_workers() == 2);
  CHECK(cfg.equivalence.n_list == std::vector<std::size_t>{64, 128});
  CHECK(cfg.features.templates.size() == 2);
  CHECK(cfg.features.snr_db == -5.0);
}

TEST_CASE("invalid configs are rejected") {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"colour": "red"})",
      R"({"detector": "matched_filter"})",
      R"({"channel": "rayleigh"})",
      R"({"template": {"kind": "pal"}})",
      R"({"template": {"kind": "custom"}})",
      R"({"template": {"shape": 1}})",
      R"({"template": {"peaks": [{"offset_hz": 1e6, "phase": 0}]}})",
      R"({"trials_calibration": 999})",
      R"({"target_pfa": 0.1, "trials_calibration": 99})",
      R"({"target_pfa": 1.5})",
      R"({"n_samples": 1000, "block_count": 3})",
      R"({"n_samples": -5})",
      R"({"n_samples": 60, "block_count": 4})",
      R"({"snr_grid_db": []})",
      R"({"channel": []})",
      R"({"detector": "lrt_exact"})",
      R"({"detector": "lrt_exact", "n_samples": 8192, "block_count": 1})",
      R"({"trials_per_snr": 0})",
      R"({"seed": "one"})",
      R"({"equivalence": {"n": 3}})",
      R"({"features": {"templates": ["custom"]}})",
      R"({"power_delay_profile": "/nonexistent/pdp.txt"})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }
  CHECK_NOTHROW(parse_config(R"({"detector": "lrt_exact", "n_samples": 16384, "block_count": 4})"));
  CHECK_NOTHROW(parse_config(R"({"trials_calibration": 1000})"));
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config hash ignores output location and worker count") {
  const auto a = parse_config(R"({"seed": 5, "output_dir": "a", "workers": 1})");
  const auto b = parse_config(R"({"seed": 5, "output_dir": "b", "workers": 4})");
  const auto c = parse_config(R"({"seed": 6})");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a) != config_hash(c));
  CHECK(config_hash(a).size() == 16);
  CHECK(canonical_json(a) == canonical_json(b));
}

TEST_CASE("configs load from files, including custom templates and profiles") {
  const auto dir = std::filesystem::temp_directory_path() / "specsense_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "pdp.txt") << "0 0\n500 -3\n";
    std::ofstream(dir / "cfg.json") << R"({"template": {"kind": "custom", "file": ")" << (dir / "t.txt").string()
                                    << R"("}, "power_delay_profile": ")" << (dir / "pdp.txt").string() << R"("})";
  }
  const auto cfg = load_config(dir / "cfg.json");
  CHECK(cfg.template_file.has_value());
  CHECK(cfg.profile.tap_delays_ns() == std::vector<double>{0.0, 500.0});
  std::filesystem::remove_all(dir);
}
