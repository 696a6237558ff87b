#include "specsense/signal_synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "specsense/fft.hpp"
#include "specsense/spectral_core.hpp"

namespace specsense {

namespace {

constexpr std::size_t kMinTemplateBins = 16;

constexpr double kNtscVideoHz = 1.25e6;
constexpr double kNtscColorHz = 1.25e6 + 3.579545e6;
constexpr double kNtscAudioHz = 1.25e6 + 4.5e6;
constexpr double kAtscPilotHz = 310e3;

double circular_distance(double a, double b, double period) {
  double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

std::size_t nearest_bin(double offset_hz, double bandwidth_hz, std::size_t n) {
  const auto k = static_cast<std::size_t>(
      std::llround(offset_hz / bandwidth_hz * static_cast<double>(n)));
  return k % n;
}

// Bump sampled at every bin and scaled to unit mean. Exponents are taken
// relative to the nearest bin so a bump narrower than the bin spacing
// collapses onto that bin instead of underflowing.
std::vector<double> sampled_bump(const SpectralPeak& peak, double bandwidth_hz, std::size_t n) {
  const double spacing = bandwidth_hz / static_cast<double>(n);
  std::vector<double> d2(n);
  double d2_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double d = circular_distance(static_cast<double>(k) * spacing, peak.offset_hz,
                                       bandwidth_hz) / peak.width_hz;
    d2[k] = d * d;
    d2_min = std::min(d2_min, d2[k]);
  }
  std::vector<double> bump(n);
  for (std::size_t k = 0; k < n; ++k) bump[k] = std::exp(-0.5 * (d2[k] - d2_min));
  const double mean = std::accumulate(bump.begin(), bump.end(), 0.0) / static_cast<double>(n);
  for (auto& v : bump) v /= mean;
  return bump;
}

void validate(const TemplateSpec& spec) {
  if (spec.n < kMinTemplateBins) {
    throw InvalidInput("make_template: n = " + std::to_string(spec.n) + " is below the minimum of " +
                       std::to_string(kMinTemplateBins));
  }
  if (!(spec.bandwidth_hz > 0.0) || !std::isfinite(spec.bandwidth_hz)) {
    throw InvalidInput("make_template: bandwidth must be positive");
  }
  if (spec.kind == TemplateKind::flat || spec.kind == TemplateKind::single_bin) return;
  if (!(spec.pedestal_fraction >= 0.0 && spec.pedestal_fraction <= 1.0)) {
    throw InvalidInput("make_template: pedestal_fraction must lie in [0, 1]");
  }
  if (spec.peaks.empty() && spec.pedestal_fraction == 0.0) {
    throw InvalidInput("make_template: no pedestal and no peaks");
  }
  std::vector<std::size_t> bins;
  for (const auto& p : spec.peaks) {
    if (!(p.offset_hz >= 0.0 && p.offset_hz < spec.bandwidth_hz)) {
      throw InvalidInput("make_template: peak offset outside the band");
    }
    if (!(p.width_hz > 0.0) || !(p.relative_power > 0.0)) {
      throw InvalidInput("make_template: peak width and power must be positive");
    }
    bins.push_back(nearest_bin(p.offset_hz, spec.bandwidth_hz, spec.n));
  }
  std::sort(bins.begin(), bins.end());
  if (std::adjacent_find(bins.begin(), bins.end()) != bins.end()) {
    throw InvalidInput("make_template: n = " + std::to_string(spec.n) +
                       " is too small to place the requested peaks in distinct bins");
  }
}

}  // namespace

std::string_view to_string(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::ntsc_like: return "ntsc_like";
    case TemplateKind::atsc_like: return "atsc_like";
    case TemplateKind::flat: return "flat";
    case TemplateKind::single_bin: return "single_bin";
    case TemplateKind::custom: return "custom";
  }
  return "unknown";
}

std::optional<TemplateKind> template_kind_from_string(std::string_view name) {
  for (auto k : {TemplateKind::ntsc_like, TemplateKind::atsc_like, TemplateKind::flat,
                 TemplateKind::single_bin, TemplateKind::custom}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

double default_peak_width_hz(double bandwidth_hz) {
  return kDefaultPeakWidthBins * bandwidth_hz / kReferenceBins;
}

TemplateSpec TemplateSpec::defaults(TemplateKind kind, std::size_t n, double bandwidth_hz) {
  TemplateSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.bandwidth_hz = bandwidth_hz;
  spec.label = std::string(to_string(kind));
  const double w = default_peak_width_hz(bandwidth_hz);
  const double scale = bandwidth_hz / 6.0e6;
  switch (kind) {
    case TemplateKind::ntsc_like:
      spec.pedestal_fraction = 0.3;
      spec.peaks = {{kNtscVideoHz * scale, w, 20.0},
                    {kNtscColorHz * scale, w, 2.0},
                    {kNtscAudioHz * scale, w, 1.0}};
      break;
    case TemplateKind::atsc_like:
      spec.pedestal_fraction = 0.93;
      spec.peaks = {{kAtscPilotHz * scale, w, 1.0}};
      break;
    case TemplateKind::flat:
    case TemplateKind::single_bin:
    case TemplateKind::custom:
      spec.pedestal_fraction = 1.0;
      break;
  }
  return spec;
}

PsdTemplate make_template(const TemplateSpec& spec) {
  validate(spec);
  const std::size_t n = spec.n;
  const double fs = spec.bandwidth_hz;
  const std::string label = spec.label.empty() ? std::string(to_string(spec.kind)) : spec.label;

  if (spec.kind == TemplateKind::flat) return PsdTemplate(std::vector<double>(n, 1.0), fs, label);
  if (spec.kind == TemplateKind::single_bin) {
    std::vector<double> v(n, 0.0);
    v[0] = static_cast<double>(n);
    return PsdTemplate(std::move(v), fs, label);
  }

  if (spec.peaks.empty()) return PsdTemplate(std::vector<double>(n, 1.0), fs, label);

  const double peak_share = 1.0 - spec.pedestal_fraction;
  double total_rel = 0.0;
  for (const auto& p : spec.peaks) total_rel += p.relative_power;

  std::vector<double> values(n, spec.pedestal_fraction);
  for (const auto& p : spec.peaks) {
    const auto bump = sampled_bump(p, fs, n);
    const double share = peak_share * p.relative_power / total_rel;
    for (std::size_t k = 0; k < n; ++k) values[k] += share * bump[k];
  }
  // Components already average to 1; renormalize away rounding.
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  for (auto& v : values) v /= mean;
  return PsdTemplate(std::move(values), fs, label);
}

CovarianceModel process_covariance(const TemplateSpec& spec, std::size_t n) {
  if (n == 0) throw InvalidInput("process_covariance: n must be positive");
  TemplateSpec fine = spec;
  fine.n = std::bit_ceil(std::max<std::size_t>(16 * n, 65536));
  return autocovariance_from_psd(make_template(fine)).leading(n);
}

SampleBuffer generate_gaussian_signal(const PsdTemplate& tpl, std::size_t n_samples,
                                      const RngSeed& rng) {
  if (n_samples != tpl.n()) {
    throw InvalidInput("generate_gaussian_signal: n_samples must equal template bins (" +
                       std::to_string(tpl.n()) + ")");
  }
  auto bins = complex_gaussian(n_samples, 1.0, rng);
  const auto values = tpl.values();
  for (std::size_t k = 0; k < n_samples; ++k) bins[k] *= std::sqrt(values[k]);
  auto x = fft::inverse(bins);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_samples));
  for (auto& v : x) v *= scale;
  return SampleBuffer(std::move(x), tpl.sample_rate_hz());
}

}  // namespace specsense
