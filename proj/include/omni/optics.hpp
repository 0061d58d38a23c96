#ifndef OMNI_OPTICS_HPP
#define OMNI_OPTICS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "omni/errors.hpp"

namespace omni {

// Physical configuration of the display relay. All lengths in meters,
// depths in diopters (1/m). Every module reads this and nothing mutates it.
struct OpticalConfig {
  double wavelength = 550e-9;      // source central wavelength
  double objective_focal = 0.0;    // collimating objective, steers the linear term
  double eyepiece_focal = 0.025;   // eyepiece between intermediate images and eye
  double relay_constant = 0.1007;  // K: effective squared relay focal length [m^2]
  double native_diopter = 3.0;     // perceived depth with a flat modulator phase
  int panel_width = 512;           // display panel pixel counts
  int panel_height = 512;
  double panel_pitch = 2e-6;       // panel pixel pitch [m]
  int slm_width = 1024;            // phase modulator pixel counts
  int slm_height = 1024;
  double slm_pitch = 8.52211e-5;   // modulator pixel pitch [m]
  int phase_levels = 256;          // addressable phase levels
  double frame_rate = 60.0;        // informational

  std::int64_t panel_pixel_count() const {
    return static_cast<std::int64_t>(panel_width) * panel_height;
  }
  double relay_focal() const;  // sqrt(K)

  void validate() const;  // throws config_error on violated invariants

  // Desk-scale defaults: small grids sized so the full experiment suite runs
  // in minutes. The modulator pitch matches the relay's Fourier-plane sample
  // spacing for a 2x padded panel grid (lambda*sqrt(K)/(2*N*panel_pitch)).
  static OpticalConfig desk();
  // Paper-scale hardware: 2000x2000 panel, 4 Mpx.
  static OpticalConfig full_scale();

  static OpticalConfig from_json(const std::string& text);
  static OpticalConfig from_json_file(const std::string& path);
  std::string to_json() const;
};

// Ordered target depths with the modulator focal length each one requires.
struct DepthPlan {
  std::vector<double> depths;      // diopters, strictly increasing
  std::vector<double> slm_focals;  // meters; +infinity at the native depth

  static DepthPlan for_depths(const std::vector<double>& depths, const OpticalConfig& cfg);
};

// One operating point of the display: per-plane lateral resolution, plane
// count, and plane spacing in diopters.
struct DisplayMode {
  int lateral_width = 0;
  int lateral_height = 0;
  int plane_count = 0;
  double plane_spacing = 0.0;  // diopters between adjacent planes, 0 for N=1
  double frame_rate = 0.0;

  void validate(const OpticalConfig& cfg) const;
};

// Tiling of the panel into sub-panels. Center offsets are physical
// coordinates of each tile center relative to the panel center.
struct SubPanelLayout {
  struct Tile {
    int plane_index = 0;
    int x0 = 0, y0 = 0;       // top-left pixel of the tile on the panel
    int width = 0, height = 0;
    double center_x = 0.0;    // meters from panel center
    double center_y = 0.0;
  };
  std::vector<Tile> tiles;
  int grid_rows = 0;
  int grid_cols = 0;
  int panel_width = 0;
  int panel_height = 0;
};

// Modulator focal length that maps depth D to its intermediate image:
// f = K / ((D_native - D) * f_e^2); +infinity at D = D_native.
double diopter_to_slm_focal(double diopter, const OpticalConfig& cfg);

// Inverse of the mapping: D = D_native - K / (f * f_e^2).
double slm_focal_to_diopter(double slm_focal, const OpticalConfig& cfg);

// Axial offset of depth D's intermediate image from the native plane,
// measured toward the eyepiece: (D_native - D) * f_e^2.
double axial_offset_from_native(double diopter, const OpticalConfig& cfg);

// Least-squares fit of the relay constant K over (diopter, focal) pairs;
// non-finite focals are ignored.
double fit_relay_constant(const std::vector<std::pair<double, double>>& table,
                          double eyepiece_focal, double native_diopter);

// For each candidate plane count, the largest square per-plane resolution
// whose pixel budget fits the panel. Candidates whose budget cannot fit at
// all are excluded.
std::vector<DisplayMode> plan_modes(const OpticalConfig& cfg,
                                    std::pair<double, double> depth_range,
                                    const std::vector<int>& plane_counts);

// Tiles the panel for a mode: most-square grid r x c with r*c >= N, plane
// indices assigned row-major from the top-left, trailing cells left empty.
SubPanelLayout subpanel_layout(const OpticalConfig& cfg, const DisplayMode& mode);

}  // namespace omni

#endif
