#include "specsense/experiment/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace specsense::experiment {

using nlohmann::json;

namespace {

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: field '" + key + "' has the wrong type");
  }
}

std::size_t get_count(const json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError("config: field '" + key + "' must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

double get_real(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config: field '" + key + "' must be a number");
  return j.get<double>();
}

ChannelKind channel_from_string(const std::string& s) {
  if (s == "awgn") return ChannelKind::awgn;
  if (s == "pedb") return ChannelKind::pedb;
  throw ConfigError("config: unknown channel '" + s + "' (expected awgn or pedb)");
}

void require_object(const json& j, const std::string& where, const std::set<std::string>& known) {
  if (!j.is_object()) throw ConfigError("config: " + where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("config: unknown field '" + key + "' in " + where);
  }
}

TemplateKind template_kind(const std::string& s) {
  auto k = template_kind_from_string(s);
  if (!k) throw ConfigError("config: unknown template kind '" + s + "'");
  return *k;
}

void parse_template(const json& t, ExperimentConfig& cfg) {
  static const std::set<std::string> known{"kind", "file", "pedestal_fraction", "peaks",
                                           "peak_width_hz", "label"};
  for (const auto& [key, _] : t.items()) {
    if (!known.count(key)) throw ConfigError("config: unknown template field '" + key + "'");
  }
  const auto kind = template_kind(t.contains("kind") ? get_as<std::string>(t["kind"], "kind")
                                                     : std::string("ntsc_like"));
  auto spec = TemplateSpec::defaults(kind, cfg.block_length() > 0 ? cfg.block_length() : 4096,
                                     cfg.sample_rate_hz);
  if (t.contains("peak_width_hz")) {
    const double w = get_real(t["peak_width_hz"], "template.peak_width_hz");
    for (auto& p : spec.peaks) p.width_hz = w;
  }
  if (t.contains("pedestal_fraction")) {
    spec.pedestal_fraction = get_real(t["pedestal_fraction"], "template.pedestal_fraction");
  }
  if (t.contains("peaks")) {
    if (!t["peaks"].is_array()) throw ConfigError("config: template.peaks must be an array");
    spec.peaks.clear();
    for (const auto& p : t["peaks"]) {
      require_object(p, "template.peaks entry", {"offset_hz", "width_hz", "relative_power"});
      SpectralPeak peak;
      peak.offset_hz = get_real(p.value("offset_hz", json()), "peaks.offset_hz");
      peak.width_hz = p.contains("width_hz") ? get_real(p["width_hz"], "peaks.width_hz")
                                             : default_peak_width_hz(cfg.sample_rate_hz);
      peak.relative_power =
          p.contains("relative_power") ? get_real(p["relative_power"], "peaks.relative_power") : 1.0;
      spec.peaks.push_back(peak);
    }
  }
  if (t.contains("label")) spec.label = get_as<std::string>(t["label"], "template.label");
  if (t.contains("file")) cfg.template_file = get_as<std::string>(t["file"], "template.file");
  cfg.template_spec = std::move(spec);
}

std::string channel_list(const std::vector<ChannelKind>& channels) {
  std::string out;
  for (auto c : channels) out += std::string(out.empty() ? "" : ",") + std::string(to_string(c));
  return out;
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
  return kind == ChannelKind::awgn ? "awgn" : "pedb";
}

unsigned ExperimentConfig::resolved_workers() const {
  if (workers > 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

void ExperimentConfig::validate() const {
  if (!(target_pfa > 0.0 && target_pfa < 1.0)) throw ConfigError("config: target_pfa must lie in (0, 1)");
  const auto min_trials = static_cast<std::size_t>(std::ceil(10.0 / target_pfa - 1e-9));
  if (trials_calibration < min_trials) {
    throw ConfigError("config: trials_calibration = " + std::to_string(trials_calibration) +
                      " is too few to estimate the " + std::to_string(1.0 - target_pfa) +
                      " quantile (need >= " + std::to_string(min_trials) + ")");
  }
  if (snr_grid_db.empty()) throw ConfigError("config: snr_grid_db must not be empty");
  for (double s : snr_grid_db) {
    if (!std::isfinite(s)) throw ConfigError("config: snr_grid_db entries must be finite");
  }
  if (channels.empty()) throw ConfigError("config: at least one channel is required");
  if (block_count == 0 || n_samples == 0 || n_samples % block_count != 0) {
    throw ConfigError("config: n_samples must be a positive multiple of block_count");
  }
  if (block_length() < 16) throw ConfigError("config: block length must be at least 16 samples");
  if (!(sample_rate_hz > 0.0)) throw ConfigError("config: sample_rate_hz must be positive");
  if (trials_per_snr == 0) throw ConfigError("config: trials_per_snr must be positive");
  if (detector == DetectorKind::lrt_exact && block_length() > kExactLrtCap) {
    throw ConfigError("config: lrt_exact needs block length <= " + std::to_string(kExactLrtCap) +
                      ", got " + std::to_string(block_length()));
  }
  if (equivalence.n_list.empty() || equivalence.trials == 0) {
    throw ConfigError("config: equivalence needs a nonempty n_list and trials > 0");
  }
  if (features.templates.empty()) throw ConfigError("config: features.templates must not be empty");
  for (auto k : features.templates) {
    if (k == TemplateKind::custom) throw ConfigError("config: features.templates cannot list custom");
  }
  if (template_spec.kind == TemplateKind::custom && !template_file) {
    throw ConfigError("config: template kind custom requires template.file");
  }
}

ExperimentConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  static const std::set<std::string> known{
      "detector",        "template",       "channel",          "power_delay_profile",
      "snr_grid_db",     "n_samples",      "block_count",      "sample_rate_hz",
      "trials_calibration", "trials_per_snr", "pfa_validation_trials", "target_pfa",
      "threshold",       "design_snr_db",  "seed",             "stream_id",
      "output_dir",      "workers",        "equivalence",      "features"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("config: unknown field '" + key + "'");
  }

  ExperimentConfig cfg;
  if (j.contains("detector")) {
    const auto name = get_as<std::string>(j["detector"], "detector");
    const auto kind = detector_kind_from_string(name);
    if (!kind) throw ConfigError("config: unknown detector '" + name + "'");
    cfg.detector = *kind;
  }
  if (j.contains("n_samples")) cfg.n_samples = get_count(j["n_samples"], "n_samples");
  if (j.contains("block_count")) cfg.block_count = get_count(j["block_count"], "block_count");
  if (j.contains("sample_rate_hz")) cfg.sample_rate_hz = get_real(j["sample_rate_hz"], "sample_rate_hz");
  cfg.template_spec = TemplateSpec::defaults(TemplateKind::ntsc_like, 4096, cfg.sample_rate_hz);
  if (j.contains("template")) {
    if (!j["template"].is_object()) throw ConfigError("config: template must be an object");
    parse_template(j["template"], cfg);
  }
  if (j.contains("channel")) {
    cfg.channels.clear();
    const auto& c = j["channel"];
    if (c.is_string()) {
      cfg.channels.push_back(channel_from_string(c.get<std::string>()));
    } else if (c.is_array()) {
      for (const auto& e : c) cfg.channels.push_back(channel_from_string(get_as<std::string>(e, "channel")));
    } else {
      throw ConfigError("config: channel must be a string or an array of strings");
    }
  }
  if (j.contains("power_delay_profile")) {
    try {
      cfg.profile = load_power_delay_profile(get_as<std::string>(j["power_delay_profile"], "power_delay_profile"));
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidInput& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (j.contains("snr_grid_db")) cfg.snr_grid_db = get_as<std::vector<double>>(j["snr_grid_db"], "snr_grid_db");
  if (j.contains("trials_calibration")) cfg.trials_calibration = get_count(j["trials_calibration"], "trials_calibration");
  if (j.contains("trials_per_snr")) cfg.trials_per_snr = get_count(j["trials_per_snr"], "trials_per_snr");
  if (j.contains("pfa_validation_trials")) {
    cfg.pfa_validation_trials = get_count(j["pfa_validation_trials"], "pfa_validation_trials");
  }
  if (j.contains("target_pfa")) cfg.target_pfa = get_real(j["target_pfa"], "target_pfa");
  if (j.contains("threshold")) cfg.threshold = get_real(j["threshold"], "threshold");
  if (j.contains("design_snr_db")) cfg.design_snr_db = get_real(j["design_snr_db"], "design_snr_db");
  if (j.contains("seed")) cfg.base_seed.seed = get_as<std::uint64_t>(j["seed"], "seed");
  if (j.contains("stream_id")) cfg.base_seed.stream_id = get_as<std::uint64_t>(j["stream_id"], "stream_id");
  if (j.contains("output_dir")) cfg.output_dir = get_as<std::string>(j["output_dir"], "output_dir");
  if (j.contains("workers")) cfg.workers = static_cast<unsigned>(get_count(j["workers"], "workers"));
  if (j.contains("equivalence")) {
    const auto& e = j["equivalence"];
    require_object(e, "equivalence", {"n_list", "trials", "snr_db"});
    if (e.contains("n_list")) {
      cfg.equivalence.n_list.clear();
      for (const auto& v : e["n_list"]) cfg.equivalence.n_list.push_back(get_count(v, "equivalence.n_list"));
    }
    if (e.contains("trials")) cfg.equivalence.trials = get_count(e["trials"], "equivalence.trials");
    if (e.contains("snr_db")) cfg.equivalence.snr_db = get_real(e["snr_db"], "equivalence.snr_db");
  }
  if (j.contains("features")) {
    const auto& f = j["features"];
    require_object(f, "features", {"templates", "snr_db"});
    if (f.contains("templates")) {
      cfg.features.templates.clear();
      for (const auto& v : f["templates"]) {
        cfg.features.templates.push_back(template_kind(get_as<std::string>(v, "features.templates")));
      }
    }
    if (f.contains("snr_db")) cfg.features.snr_db = get_real(f["snr_db"], "features.snr_db");
  }
  cfg.template_spec.n = cfg.block_length();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_json(const ExperimentConfig& cfg) {
  json j;
  j["detector"] = std::string(to_string(cfg.detector));
  json t;
  t["kind"] = std::string(to_string(cfg.template_spec.kind));
  t["label"] = cfg.template_spec.label;
  t["pedestal_fraction"] = cfg.template_spec.pedestal_fraction;
  t["peaks"] = json::array();
  for (const auto& p : cfg.template_spec.peaks) {
    t["peaks"].push_back({{"offset_hz", p.offset_hz}, {"width_hz", p.width_hz},
                          {"relative_power", p.relative_power}});
  }
  if (cfg.template_file) t["file"] = cfg.template_file->string();
  j["template"] = t;
  j["channel"] = channel_list(cfg.channels);
  j["power_delay_profile"] = {{"delays_ns", cfg.profile.tap_delays_ns()},
                              {"gains_db", cfg.profile.tap_gains_db()}};
  j["snr_grid_db"] = cfg.snr_grid_db;
  j["n_samples"] = cfg.n_samples;
  j["block_count"] = cfg.block_count;
  j["sample_rate_hz"] = cfg.sample_rate_hz;
  j["trials_calibration"] = cfg.trials_calibration;
  j["trials_per_snr"] = cfg.trials_per_snr;
  j["pfa_validation_trials"] = cfg.pfa_validation_trials;
  j["target_pfa"] = cfg.target_pfa;
  if (cfg.threshold) j["threshold"] = *cfg.threshold;
  if (cfg.design_snr_db) j["design_snr_db"] = *cfg.design_snr_db;
  j["seed"] = cfg.base_seed.seed;
  j["stream_id"] = cfg.base_seed.stream_id;
  j["equivalence"] = {{"n_list", cfg.equivalence.n_list},
                      {"trials", cfg.equivalence.trials},
                      {"snr_db", cfg.equivalence.snr_db}};
  std::vector<std::string> kinds;
  for (auto k : cfg.features.templates) kinds.emplace_back(to_string(k));
  j["features"] = {{"templates", kinds}, {"snr_db", cfg.features.snr_db}};
  // output_dir and workers do not affect results and are left out.
  return j.dump();
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_json(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace specsense::experiment
