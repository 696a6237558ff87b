#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specsense/random.hpp"
#include "specsense/types.hpp"

namespace specsense {

enum class TemplateKind { ntsc_like, atsc_like, flat, single_bin, custom };

std::string_view to_string(TemplateKind kind);
std::optional<TemplateKind> template_kind_from_string(std::string_view name);

// Gaussian-shaped carrier bump on the circular frequency axis [0, bandwidth).
struct SpectralPeak {
  double offset_hz = 0.0;  // above the lower band edge
  double width_hz = 0.0;   // standard deviation of the bump
  double relative_power = 1.0;
};

// Peak widths are fixed in Hz, so templates built at different n sample the
// same continuous PSD. The default is 3 bins of a 4096-bin grid.
inline constexpr double kReferenceBins = 4096.0;
inline constexpr double kDefaultPeakWidthBins = 3.0;

double default_peak_width_hz(double bandwidth_hz);

struct TemplateSpec {
  TemplateKind kind = TemplateKind::flat;
  std::size_t n = 4096;
  double bandwidth_hz = kDefaultSampleRateHz;
  // Share of the total power spread uniformly across the band. The rest is
  // split across `peaks` by relative_power.
  double pedestal_fraction = 1.0;
  std::vector<SpectralPeak> peaks;
  std::string label;

  // Built-in parameters for a kind: NTSC video/color/audio carriers at
  // 1.25, 4.83 and 5.75 MHz with powers 20:2:1 over a 30% pedestal; ATSC
  // pilot 310 kHz above the edge carrying 7% of the power.
  static TemplateSpec defaults(TemplateKind kind, std::size_t n,
                               double bandwidth_hz = kDefaultSampleRateHz);
};

// Samples the spec at n bins, normalized to average power 1. Throws
// InvalidInput when n < 16, parameters are out of range, or two peaks land
// on the same bin.
PsdTemplate make_template(const TemplateSpec& spec);

// Toeplitz covariance of the first n samples of the continuous-frequency
// process described by spec. Lags come from a template oversampled to at
// least 16n bins, so Sigma_n is not the circulant of the n-bin template.
CovarianceModel process_covariance(const TemplateSpec& spec, std::size_t n);

// Frequency-domain synthesis: bin k gets a CN(0, S(k)) draw, then a unitary
// inverse DFT. The block covariance is exactly the circulant of tpl.
SampleBuffer generate_gaussian_signal(const PsdTemplate& tpl, std::size_t n_samples,
                                      const RngSeed& rng);

}  // namespace specsense
