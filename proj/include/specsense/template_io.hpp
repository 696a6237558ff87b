#pragma once

#include <filesystem>
#include <iosfwd>

#include "specsense/types.hpp"

// Plain-text PSD template format:
//
//   # psd_template n=<bins> sample_rate_hz=<fs> label=<rest of line>
//   <bin index> <value>
//   ...
//
// Values are written with 17 significant digits so a write/read cycle
// reproduces every double exactly.
namespace specsense {

void write_template(std::ostream& os, const PsdTemplate& tpl);
PsdTemplate read_template(std::istream& is);

void save_template(const std::filesystem::path& path, const PsdTemplate& tpl);
PsdTemplate load_template(const std::filesystem::path& path);

}  // namespace specsense
