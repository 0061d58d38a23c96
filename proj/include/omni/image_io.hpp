#ifndef OMNI_IMAGE_IO_HPP
#define OMNI_IMAGE_IO_HPP

#include <string>

#include "omni/blend.hpp"
#include "omni/grid.hpp"
#include "omni/phase.hpp"

namespace omni {

// ---- PGM (P5, 8- or 16-bit big-endian) ----

struct PgmImage {
  RealGrid values;  // raw sample / maxval, in [0, 1]
  int maxval = 255;
};

PgmImage read_pgm(const std::string& path);
void write_pgm(const RealGrid& values, const std::string& path, int bits = 8);
void write_pgm_raw16(const Grid2D<std::uint16_t>& values, const std::string& path, int maxval);

// ---- PFM (grayscale float32, little-endian, bottom-up rows) ----

RealGrid read_pfm(const std::string& path);
void write_pfm(const RealGrid& values, const std::string& path);

// ---- PNG input (8/16-bit gray or RGB; RGB converts to linear luma) ----

PgmImage read_png(const std::string& path);
void write_png_gray8(const RealGrid& values, const std::string& path);

// ---- Quantized phase maps: 8-bit PGM plus a JSON sidecar ----

void write_phase_map(const QuantizedPhaseMap& map, const OpticalConfig& cfg,
                     const std::string& pgm_path, const std::string& sidecar_path);
QuantizedPhaseMap read_phase_map(const std::string& pgm_path, const std::string& sidecar_path);

// ---- Scenes: image + 16-bit depth PGM scaled by the sidecar's range ----

// Sidecar: {"depth_min": d0, "depth_max": d1, "transfer": "srgb"|"linear"}.
// 8-bit images default to sRGB decoding, 16-bit to linear.
SceneInput load_scene(const std::string& image_path, const std::string& depth_path,
                      const std::string& sidecar_path);
void write_scene_sidecar(double depth_min, double depth_max, const std::string& transfer,
                         const std::string& path);

double srgb_to_linear(double s);
double linear_to_srgb(double v);

// ---- Misc ----

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace omni

#endif
