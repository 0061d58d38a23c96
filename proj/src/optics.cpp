#include "omni/optics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace omni {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double OpticalConfig::relay_focal() const { return std::sqrt(relay_constant); }

void OpticalConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw config_error(std::string("config: ") + name + " must be positive and finite");
  };
  positive(wavelength, "wavelength");
  positive(objective_focal, "objective_focal");
  positive(eyepiece_focal, "eyepiece_focal");
  positive(relay_constant, "relay_constant");
  positive(panel_pitch, "panel_pitch");
  positive(slm_pitch, "slm_pitch");
  if (wavelength <= 100e-9 || wavelength >= 10e-6)
    throw config_error("config: wavelength outside the (100 nm, 10 um) sanity band");
  if (phase_levels < 2) throw config_error("config: phase_levels must be >= 2");
  if (native_diopter < 0.0) throw config_error("config: native_diopter must be >= 0");
  if (panel_width <= 0 || panel_height <= 0)
    throw config_error("config: panel_pixels must be positive");
  if (slm_width <= 0 || slm_height <= 0)
    throw config_error("config: slm_pixels must be positive");
  if (frame_rate <= 0.0) throw config_error("config: frame_rate must be positive");
}

OpticalConfig OpticalConfig::desk() {
  OpticalConfig cfg;
  cfg.wavelength = 550e-9;
  cfg.relay_constant = 0.1007;
  cfg.objective_focal = std::sqrt(cfg.relay_constant);
  cfg.eyepiece_focal = 0.025;
  cfg.native_diopter = 3.0;
  cfg.panel_width = 512;
  cfg.panel_height = 512;
  cfg.panel_pitch = 2e-6;
  cfg.slm_width = 1024;
  cfg.slm_height = 1024;
  cfg.slm_pitch = cfg.wavelength * cfg.relay_focal() / (1024.0 * cfg.panel_pitch);
  cfg.phase_levels = 256;
  cfg.frame_rate = 60.0;
  return cfg;
}

OpticalConfig OpticalConfig::full_scale() {
  OpticalConfig cfg;
  cfg.wavelength = 550e-9;
  cfg.relay_constant = 0.1007;
  cfg.objective_focal = std::sqrt(cfg.relay_constant);
  cfg.eyepiece_focal = 0.025;
  cfg.native_diopter = 3.0;
  cfg.panel_width = 2000;
  cfg.panel_height = 2000;
  cfg.panel_pitch = 5e-6;
  cfg.slm_width = 4000;
  cfg.slm_height = 4000;
  cfg.slm_pitch = cfg.wavelength * cfg.relay_focal() / (4000.0 * cfg.panel_pitch);
  cfg.phase_levels = 256;
  cfg.frame_rate = 60.0;
  return cfg;
}

OpticalConfig OpticalConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  OpticalConfig cfg;
  try {
    cfg.wavelength = j.at("wavelength").get<double>();
    cfg.objective_focal = j.at("objective_focal").get<double>();
    cfg.eyepiece_focal = j.at("eyepiece_focal").get<double>();
    cfg.relay_constant = j.at("relay_constant").get<double>();
    cfg.native_diopter = j.at("native_diopter").get<double>();
    cfg.panel_width = j.at("panel_pixels").at(0).get<int>();
    cfg.panel_height = j.at("panel_pixels").at(1).get<int>();
    cfg.panel_pitch = j.at("panel_pitch").get<double>();
    cfg.slm_width = j.at("slm_pixels").at(0).get<int>();
    cfg.slm_height = j.at("slm_pixels").at(1).get<int>();
    cfg.slm_pitch = j.at("slm_pitch").get<double>();
    cfg.phase_levels = j.at("phase_levels").get<int>();
    cfg.frame_rate = j.value("frame_rate", 60.0);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config: missing or malformed field: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

OpticalConfig OpticalConfig::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string OpticalConfig::to_json() const {
  nlohmann::json j;
  j["wavelength"] = wavelength;
  j["objective_focal"] = objective_focal;
  j["eyepiece_focal"] = eyepiece_focal;
  j["relay_constant"] = relay_constant;
  j["native_diopter"] = native_diopter;
  j["panel_pixels"] = {panel_width, panel_height};
  j["panel_pitch"] = panel_pitch;
  j["slm_pixels"] = {slm_width, slm_height};
  j["slm_pitch"] = slm_pitch;
  j["phase_levels"] = phase_levels;
  j["frame_rate"] = frame_rate;
  return j.dump(2) + "\n";
}

double diopter_to_slm_focal(double diopter, const OpticalConfig& cfg) {
  if (diopter < 0.0 || !std::isfinite(diopter))
    throw config_error("diopter_to_slm_focal: depth must be finite and >= 0");
  if (diopter > cfg.native_diopter)
    throw config_error("depth beyond native plane");
  if (diopter == cfg.native_diopter) return kInf;
  const double fe2 = cfg.eyepiece_focal * cfg.eyepiece_focal;
  return cfg.relay_constant / ((cfg.native_diopter - diopter) * fe2);
}

double slm_focal_to_diopter(double slm_focal, const OpticalConfig& cfg) {
  if (slm_focal <= 0.0) throw config_error("slm_focal_to_diopter: focal must be positive");
  if (std::isinf(slm_focal)) return cfg.native_diopter;
  const double fe2 = cfg.eyepiece_focal * cfg.eyepiece_focal;
  return cfg.native_diopter - cfg.relay_constant / (slm_focal * fe2);
}

double axial_offset_from_native(double diopter, const OpticalConfig& cfg) {
  const double fe2 = cfg.eyepiece_focal * cfg.eyepiece_focal;
  return (cfg.native_diopter - diopter) * fe2;
}

double fit_relay_constant(const std::vector<std::pair<double, double>>& table,
                          double eyepiece_focal, double native_diopter) {
  // Minimize sum (f_i - K/c_i)^2 with c_i = (D_native - D_i) * f_e^2:
  // K = sum(f_i/c_i) / sum(1/c_i^2).
  const double fe2 = eyepiece_focal * eyepiece_focal;
  double num = 0.0, den = 0.0;
  int used = 0;
  for (const auto& [d, f] : table) {
    if (!std::isfinite(f)) continue;
    if (d >= native_diopter)
      throw config_error("fit_relay_constant: finite focal at or beyond the native depth");
    const double c = (native_diopter - d) * fe2;
    num += f / c;
    den += 1.0 / (c * c);
    ++used;
  }
  if (used == 0) throw config_error("fit_relay_constant: no finite (depth, focal) pairs");
  return num / den;
}

DepthPlan DepthPlan::for_depths(const std::vector<double>& depths, const OpticalConfig& cfg) {
  if (depths.empty()) throw config_error("DepthPlan: at least one depth required");
  DepthPlan plan;
  plan.depths = depths;
  plan.slm_focals.reserve(depths.size());
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (i > 0 && !(depths[i] > depths[i - 1]))
      throw config_error("DepthPlan: depths must be strictly increasing");
    plan.slm_focals.push_back(diopter_to_slm_focal(depths[i], cfg));
  }
  return plan;
}

void DisplayMode::validate(const OpticalConfig& cfg) const {
  if (plane_count < 1) throw config_error("DisplayMode: plane_count must be >= 1");
  if (lateral_width < 1 || lateral_height < 1)
    throw config_error("DisplayMode: lateral resolution must be >= 1");
  if (plane_count > 1 && !(plane_spacing > 0.0))
    throw config_error("DisplayMode: plane_spacing must be positive for N > 1");
  const std::int64_t budget =
      static_cast<std::int64_t>(lateral_width) * lateral_height * plane_count;
  if (budget > cfg.panel_pixel_count())
    throw config_error("DisplayMode: L x M x N exceeds the panel pixel count");
}

std::vector<DisplayMode> plan_modes(const OpticalConfig& cfg,
                                    std::pair<double, double> depth_range,
                                    const std::vector<int>& plane_counts) {
  if (plane_counts.empty()) throw config_error("plan_modes: no candidate plane counts");
  const auto [d_min, d_max] = depth_range;
  if (!(d_max >= d_min)) throw config_error("plan_modes: empty depth range");
  if (d_max > cfg.native_diopter)
    throw config_error("plan_modes: depth range exceeds the native depth");

  std::vector<DisplayMode> modes;
  const std::int64_t budget = cfg.panel_pixel_count();
  for (int n : plane_counts) {
    if (n < 1) continue;
    const int side = static_cast<int>(std::floor(std::sqrt(static_cast<double>(budget) / n)));
    if (side < 1) continue;  // no lateral resolution fits this plane count
    DisplayMode mode;
    mode.lateral_width = side;
    mode.lateral_height = side;
    mode.plane_count = n;
    mode.plane_spacing = (n > 1) ? (d_max - d_min) / (n - 1) : 0.0;
    mode.frame_rate = cfg.frame_rate;
    modes.push_back(mode);
  }
  return modes;
}

SubPanelLayout subpanel_layout(const OpticalConfig& cfg, const DisplayMode& mode) {
  mode.validate(cfg);
  const int n = mode.plane_count;
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const int rows = (n + cols - 1) / cols;
  const int tile_w = mode.lateral_width;
  const int tile_h = mode.lateral_height;
  if (tile_w > cfg.panel_width || tile_h > cfg.panel_height)
    throw config_error("subpanel_layout: tile exceeds the panel dimensions");

  const double cell_w = static_cast<double>(cfg.panel_width) / cols;
  const double cell_h = static_cast<double>(cfg.panel_height) / rows;
  if (tile_w > static_cast<int>(std::floor(cell_w)) ||
      tile_h > static_cast<int>(std::floor(cell_h)))
    throw config_error("subpanel_layout: tile does not fit its grid cell");

  SubPanelLayout layout;
  layout.grid_rows = rows;
  layout.grid_cols = cols;
  layout.panel_width = cfg.panel_width;
  layout.panel_height = cfg.panel_height;
  layout.tiles.reserve(n);
  for (int k = 0; k < n; ++k) {
    const int i = k / cols;
    const int j = k % cols;
    SubPanelLayout::Tile tile;
    tile.plane_index = k;
    tile.width = tile_w;
    tile.height = tile_h;
    tile.x0 = static_cast<int>(std::floor(j * cell_w + (cell_w - tile_w) / 2.0 + 0.5));
    tile.y0 = static_cast<int>(std::floor(i * cell_h + (cell_h - tile_h) / 2.0 + 0.5));
    // Pixel-center coordinates relative to the panel center.
    const double cx_px = tile.x0 + (tile_w - 1) / 2.0;
    const double cy_px = tile.y0 + (tile_h - 1) / 2.0;
    tile.center_x = (cx_px - (cfg.panel_width - 1) / 2.0) * cfg.panel_pitch;
    tile.center_y = (cy_px - (cfg.panel_height - 1) / 2.0) * cfg.panel_pitch;
    layout.tiles.push_back(tile);
  }
  return layout;
}

}  // namespace omni
