#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "specsense/experiment/harness.hpp"

namespace specsense::experiment {

// CSV column sets are stable; numbers use 17 significant digits.
void write_sweep_header(std::ostream& os);       // snr_db,trials,misses,pmd,wilson_lo,wilson_hi
void write_sweep_row(std::ostream& os, const SweepRow& row);
void write_equivalence_csv(std::ostream& os, const std::vector<EquivalenceRow>& rows);
void write_features_csv(std::ostream& os, const std::vector<FeatureRow>& rows);

// Sidecar JSON with threshold, measured Pfa and run metadata. Timing lives
// here rather than in the CSV so CSV bytes depend only on config and seed.
void write_metadata_json(const std::filesystem::path& path, const ExperimentResult& result);

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = true;
  // Values at or below zero are drawn at this floor on a log axis.
  double y_floor = 1e-4;
};

// Standalone SVG line plot.
void write_svg_plot(std::ostream& os, const PlotSpec& spec, const std::vector<PlotSeries>& series);

}  // namespace specsense::experiment
