#include "specsense/experiment/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace specsense::experiment {

namespace {

struct Precision {
  explicit Precision(std::ostream& os) : os_(os), old_(os.precision(17)) {}
  ~Precision() { os_.precision(old_); }
  std::ostream& os_;
  std::streamsize old_;
};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_sweep_header(std::ostream& os) { os << "snr_db,trials,misses,pmd,wilson_lo,wilson_hi\n"; }

void write_sweep_row(std::ostream& os, const SweepRow& row) {
  Precision p(os);
  os << row.snr_db << ',' << row.trials << ',' << row.misses << ',' << row.pmd << ','
     << row.wilson.lo << ',' << row.wilson.hi << '\n';
  os.flush();
}

void write_equivalence_csv(std::ostream& os, const std::vector<EquivalenceRow>& rows) {
  Precision p(os);
  os << "n,mean_abs_diff,max_abs_diff,weak_norm\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.mean_abs_diff << ',' << r.max_abs_diff << ',' << r.weak_norm << '\n';
  }
}

void write_features_csv(std::ostream& os, const std::vector<FeatureRow>& rows) {
  Precision p(os);
  os << "label,objective,gap,threshold,pmd\n";
  for (const auto& r : rows) {
    os << r.label << ',' << r.objective << ',' << r.gap << ',' << r.threshold << ',' << r.pmd << '\n';
  }
}

void write_metadata_json(const std::filesystem::path& path, const ExperimentResult& result) {
  nlohmann::json j;
  j["threshold"] = result.threshold;
  if (result.pfa_measured) {
    j["pfa_measured"] = *result.pfa_measured;
  } else {
    j["pfa_measured"] = nullptr;
  }
  const auto& m = result.metadata;
  j["config_hash"] = m.config_hash;
  j["seed"] = m.seed;
  j["stream_id"] = m.stream_id;
  j["detector"] = m.detector;
  j["template"] = m.template_label;
  if (!m.channel.empty()) j["channel"] = m.channel;
  j["block_mode"] = m.block_mode;
  j["wall_seconds"] = m.wall_seconds;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

void write_svg_plot(std::ostream& os, const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  constexpr double kW = 640, kH = 440, kLeft = 80, kRight = 150, kTop = 40, kBottom = 60;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;

  auto tx = [&](double v) { return spec.log_x ? std::log10(std::max(v, 1e-300)) : v; };
  auto ty = [&](double v) { return spec.log_y ? std::log10(std::max(v, spec.y_floor)) : v; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, ty(s.y[i]));
      y1 = std::max(y1, ty(s.y[i]));
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (spec.log_y) y0 = std::floor(y0), y1 = std::ceil(y1);
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;

  auto px = [&](double v) { return kLeft + (tx(v) - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return kTop + (1.0 - (ty(v) - y0) / (y1 - y0)) * ph; };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << escape_xml(spec.title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Ticks: decades on log axes, five divisions otherwise.
  auto ticks = [](double lo, double hi, bool log) {
    std::vector<double> t;
    if (log) {
      for (double e = std::ceil(lo); e <= hi + 1e-9; e += 1) t.push_back(e);
    } else {
      for (int i = 0; i <= 5; ++i) t.push_back(lo + (hi - lo) * i / 5.0);
    }
    return t;
  };
  for (double t : ticks(y0, y1, spec.log_y)) {
    const double v = spec.log_y ? std::pow(10.0, t) : t;
    const double y = py(v);
    os << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\"" << y << "\" y2=\"" << y
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"11\">";
    if (spec.log_y) {
      os << "1e" << static_cast<int>(t);
    } else {
      os << std::setprecision(3) << v;
    }
    os << "</text>\n";
  }
  for (double t : ticks(x0, x1, spec.log_x)) {
    const double v = spec.log_x ? std::pow(10.0, t) : t;
    const double x = px(v);
    os << "<text x=\"" << x << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << std::setprecision(4) << v << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << escape_xml(spec.x_label) << "</text>\n";
  os << "<text transform=\"translate(18," << kTop + ph / 2
     << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"13\">" << escape_xml(spec.y_label)
     << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size() && i < series[s].y.size(); ++i) {
      os << px(series[s].x[i]) << ',' << py(series[s].y[i]) << ' ';
    }
    os << "\"/>\n";
    for (std::size_t i = 0; i < series[s].x.size() && i < series[s].y.size(); ++i) {
      os << "<circle cx=\"" << px(series[s].x[i]) << "\" cy=\"" << py(series[s].y[i])
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 16 + 18 * static_cast<double>(s);
    os << "<line x1=\"" << kLeft + pw + 12 << "\" x2=\"" << kLeft + pw + 32 << "\" y1=\"" << ly
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kLeft + pw + 38 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
       << escape_xml(series[s].name) << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace specsense::experiment
