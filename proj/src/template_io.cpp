#include "specsense/template_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace specsense {

namespace {

constexpr std::string_view kMagic = "# psd_template";

std::string field_after(const std::string& header, const std::string& key) {
  const auto pos = header.find(key + "=");
  if (pos == std::string::npos) throw InvalidInput("template header missing '" + key + "'");
  const auto start = pos + key.size() + 1;
  if (key == "label") return header.substr(start);
  const auto end = header.find(' ', start);
  return header.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

}  // namespace

void write_template(std::ostream& os, const PsdTemplate& tpl) {
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  os << kMagic << " n=" << tpl.n() << " sample_rate_hz=" << tpl.sample_rate_hz()
     << " label=" << tpl.label() << '\n';
  const auto values = tpl.values();
  for (std::size_t k = 0; k < values.size(); ++k) os << k << ' ' << values[k] << '\n';
  os.precision(old_precision);
}

PsdTemplate read_template(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind(kMagic, 0) != 0) {
    throw InvalidInput("template: missing '# psd_template' header");
  }
  std::size_t n = 0;
  double fs = 0.0;
  try {
    n = std::stoul(field_after(header, "n"));
    fs = std::stod(field_after(header, "sample_rate_hz"));
  } catch (const std::logic_error&) {
    throw InvalidInput("template: malformed header '" + header + "'");
  }
  std::string label = field_after(header, "label");
  if (n == 0) throw InvalidInput("template: n must be positive");

  std::vector<double> values(n, 0.0);
  std::vector<bool> seen(n, false);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::size_t k = 0;
    std::string token;
    if (!(row >> k >> token)) throw InvalidInput("template: malformed row '" + line + "'");
    if (k >= n || seen[k]) throw InvalidInput("template: bad or repeated bin index in '" + line + "'");
    double value = 0.0;
    // from_chars is exact round-trip for shortest/17-digit decimal text.
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw InvalidInput("template: bad value in '" + line + "'");
    }
    values[k] = value;
    seen[k] = true;
    ++rows;
  }
  if (rows != n) {
    throw InvalidInput("template: header declares " + std::to_string(n) + " bins, found " +
                       std::to_string(rows));
  }
  return PsdTemplate(std::move(values), fs, std::move(label));
}

void save_template(const std::filesystem::path& path, const PsdTemplate& tpl) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_template(out, tpl);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

PsdTemplate load_template(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open template file " + path.string());
  return read_template(in);
}

}  // namespace specsense
