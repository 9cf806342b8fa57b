#include "lodct/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lodct/errors.hpp"

namespace lodct {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::string& where,
                         const std::set<std::string>& known) {
  for (const auto& item : object.items()) {
    if (!known.contains(item.key())) {
      throw std::invalid_argument("config: unknown key \"" + item.key() +
                                  "\" in " + where);
    }
  }
}

template <typename T>
void read_field(const json& object, const char* key, T& value) {
  if (object.contains(key)) value = object.at(key).get<T>();
}

void parse_geometry(const json& object, FanBeamGeometry& geom) {
  reject_unknown_keys(object, "geometry",
                      {"n_bins", "n_angles", "source_to_center",
                       "fan_half_angle"});
  read_field(object, "n_bins", geom.n_bins);
  read_field(object, "n_angles", geom.n_angles);
  read_field(object, "source_to_center", geom.source_to_center);
  read_field(object, "fan_half_angle", geom.fan_half_angle);
}

void parse_noise(const json& object, NoiseParams& noise) {
  reject_unknown_keys(
      object, "noise", {"f", "eta", "variance_scale", "seed", "f_per_bin"});
  read_field(object, "f", noise.f);
  read_field(object, "eta", noise.eta);
  read_field(object, "variance_scale", noise.variance_scale);
  read_field(object, "seed", noise.seed);
  read_field(object, "f_per_bin", noise.f_per_bin);
}

void parse_filter(const json& object, FilterConfig& filter) {
  reject_unknown_keys(object, "filter",
                      {"radius", "variance_floor", "clamp_coefficients"});
  if (object.contains("radius")) {
    filter.radius = BoxRadius(object.at("radius").get<int>());
  }
  read_field(object, "variance_floor", filter.variance_floor);
  read_field(object, "clamp_coefficients", filter.clamp_coefficients);
}

void parse_recon(const json& object, ReconFilter& recon) {
  reject_unknown_keys(object, "recon", {"kind", "cutoff"});
  if (object.contains("kind")) {
    const std::string kind = object.at("kind").get<std::string>();
    if (kind == "ramp") {
      recon.kind = ReconFilter::Kind::ramp;
    } else if (kind == "hanning") {
      recon.kind = ReconFilter::Kind::hanning;
    } else {
      throw std::invalid_argument(
          "config: recon.kind must be \"ramp\" or \"hanning\", got \"" + kind +
          "\"");
    }
  }
  read_field(object, "cutoff", recon.cutoff);
}

void parse_profile(const json& object, ProfileLocation& profile) {
  reject_unknown_keys(object, "profile", {"row_start", "row_end", "col"});
  read_field(object, "row_start", profile.row_start);
  read_field(object, "row_end", profile.row_end);
  read_field(object, "col", profile.col);
}

}  // namespace

void PipelineConfig::validate() const {
  if (phantom_size < 16) {
    throw std::invalid_argument("config: phantom_size must be >= 16");
  }
  if (recon_size < 0) {
    throw std::invalid_argument("config: recon_size must be >= 0");
  }
  geometry.validate();
  if (!(sinogram_scale > 0.0)) {
    throw std::invalid_argument("config: sinogram_scale must be positive");
  }
  noise.validate(geometry.n_bins);
  if (methods.empty()) {
    throw std::invalid_argument("config: method list must not be empty");
  }
  for (const std::string& method : methods) {
    if (method != "none" && method != "med" && method != "llmmse" &&
        method != "llmmse-b") {
      throw std::invalid_argument(
          "config: unknown method \"" + method +
          "\"; valid methods: none, med, llmmse, llmmse-b");
    }
  }
  if (snr_reference != "phantom" && snr_reference != "clean-recon") {
    throw std::invalid_argument(
        "config: snr_reference must be \"phantom\" or \"clean-recon\"");
  }
  if (profile.row_start < 1 || profile.row_start > profile.row_end ||
      profile.col < 1) {
    throw std::invalid_argument("config: bad profile location");
  }
  if (threads < 1) {
    throw std::invalid_argument("config: threads must be >= 1");
  }
  if (timing_runs < 1) {
    throw std::invalid_argument("config: timing_runs must be >= 1");
  }
  if (!(recon.cutoff > 0.0) || recon.cutoff > 1.0) {
    throw std::invalid_argument("config: recon.cutoff must be in (0, 1]");
  }
}

PipelineConfig parse_pipeline_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                e.what());
  }
  if (!root.is_object()) {
    throw std::invalid_argument("config: top level must be a JSON object");
  }

  PipelineConfig cfg;
  try {
    reject_unknown_keys(root, "config",
                        {"phantom_size", "recon_size", "geometry",
                         "sinogram_scale", "noise", "filter", "recon",
                         "methods", "output_dir", "profile", "snr_reference",
                         "threads", "timing_runs"});
    read_field(root, "phantom_size", cfg.phantom_size);
    read_field(root, "recon_size", cfg.recon_size);
    read_field(root, "sinogram_scale", cfg.sinogram_scale);
    if (root.contains("geometry")) parse_geometry(root["geometry"], cfg.geometry);
    if (root.contains("noise")) parse_noise(root["noise"], cfg.noise);
    if (root.contains("filter")) parse_filter(root["filter"], cfg.filter);
    if (root.contains("recon")) parse_recon(root["recon"], cfg.recon);
    read_field(root, "methods", cfg.methods);
    read_field(root, "output_dir", cfg.output_dir);
    if (root.contains("profile")) parse_profile(root["profile"], cfg.profile);
    read_field(root, "snr_reference", cfg.snr_reference);
    read_field(root, "threads", cfg.threads);
    read_field(root, "timing_runs", cfg.timing_runs);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }

  cfg.validate();
  return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("config: cannot open " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_pipeline_config(text.str());
}

std::string pipeline_config_to_json(const PipelineConfig& cfg) {
  json root;
  root["phantom_size"] = cfg.phantom_size;
  root["recon_size"] = cfg.recon_size;
  root["geometry"] = {{"n_bins", cfg.geometry.n_bins},
                      {"n_angles", cfg.geometry.n_angles},
                      {"source_to_center", cfg.geometry.source_to_center},
                      {"fan_half_angle", cfg.geometry.fan_half_angle}};
  root["sinogram_scale"] = cfg.sinogram_scale;
  root["noise"] = {{"f", cfg.noise.f},
                   {"eta", cfg.noise.eta},
                   {"variance_scale", cfg.noise.variance_scale},
                   {"seed", cfg.noise.seed},
                   {"f_per_bin", cfg.noise.f_per_bin}};
  root["filter"] = {{"radius", cfg.filter.radius.value()},
                    {"variance_floor", cfg.filter.variance_floor},
                    {"clamp_coefficients", cfg.filter.clamp_coefficients}};
  root["recon"] = {
      {"kind", cfg.recon.kind == ReconFilter::Kind::ramp ? "ramp" : "hanning"},
      {"cutoff", cfg.recon.cutoff}};
  root["methods"] = cfg.methods;
  root["output_dir"] = cfg.output_dir;
  root["profile"] = {{"row_start", cfg.profile.row_start},
                     {"row_end", cfg.profile.row_end},
                     {"col", cfg.profile.col}};
  root["snr_reference"] = cfg.snr_reference;
  root["threads"] = cfg.threads;
  root["timing_runs"] = cfg.timing_runs;
  return root.dump(2);
}

}  // namespace lodct
