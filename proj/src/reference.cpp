#include "omni/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace omni::ref {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PhaseMap fresnel_phase(const SubPanelLayout::Tile& tile, double slm_focal,
                       const OpticalConfig& cfg) {
  if (slm_focal == 0.0) throw numeric_error("fresnel_phase: zero focal length is degenerate");
  const int w = cfg.slm_width;
  const int h = cfg.slm_height;
  const double pitch = cfg.slm_pitch;
  const double quad =
      std::isinf(slm_focal) ? 0.0 : std::numbers::pi / (cfg.wavelength * slm_focal);
  const double rx = kTwoPi / cfg.wavelength * std::sin(tile.center_x / cfg.objective_focal);
  const double ry = kTwoPi / cfg.wavelength * std::sin(tile.center_y / cfg.objective_focal);

  PhaseMap map;
  map.pitch = pitch;
  map.values = RealGrid(w, h);
  for (int row = 0; row < h; ++row) {
    const double y = (row - (h - 1) / 2.0) * pitch;
    for (int col = 0; col < w; ++col) {
      const double x = (col - (w - 1) / 2.0) * pitch;
      map.values(col, row) = quad * (x * x + y * y) + rx * x + ry * y;
    }
  }
  return map;
}

PhaseMap superposition_phase(const std::vector<PhaseMap>& maps,
                             const std::vector<double>& weights) {
  if (maps.empty()) throw data_error("superposition_phase: no maps");
  PhaseMap out;
  out.pitch = maps.front().pitch;
  out.values = RealGrid(maps.front().values.width(), maps.front().values.height());
  for (int y = 0; y < out.values.height(); ++y) {
    for (int x = 0; x < out.values.width(); ++x) {
      double re = 0.0, im = 0.0;
      for (std::size_t i = 0; i < maps.size(); ++i) {
        re += weights[i] * std::cos(maps[i].values(x, y));
        im += weights[i] * std::sin(maps[i].values(x, y));
      }
      out.values(x, y) = std::atan2(im, re);
    }
  }
  return out;
}

QuantizedPhaseMap wrap_quantize(const PhaseMap& map, const OpticalConfig& cfg) {
  QuantizedPhaseMap q;
  q.pitch = map.pitch;
  q.levels_count = cfg.phase_levels;
  q.levels = Grid2D<std::uint16_t>(map.values.width(), map.values.height());
  const double step = kTwoPi / cfg.phase_levels;
  for (int y = 0; y < map.values.height(); ++y) {
    for (int x = 0; x < map.values.width(); ++x) {
      double wrapped = std::fmod(map.values(x, y), kTwoPi);
      if (wrapped < 0.0) wrapped += kTwoPi;
      int level = static_cast<int>(std::floor(wrapped / step));
      level = std::min(level, cfg.phase_levels - 1);
      q.levels(x, y) = static_cast<std::uint16_t>(level);
    }
  }
  return q;
}

std::complex<double> overlap(const PhaseMap& est, const PhaseMap& target) {
  if (!est.values.same_shape(target.values)) throw data_error("overlap: dimension mismatch");
  double re = 0.0, im = 0.0;
  for (int y = 0; y < est.values.height(); ++y) {
    for (int x = 0; x < est.values.width(); ++x) {
      const double d = est.values(x, y) - target.values(x, y);
      re += std::cos(d);
      im += std::sin(d);
    }
  }
  const double b = static_cast<double>(est.values.size());
  return {re / b, im / b};
}

PlaneStack render_planes(const SceneInput& scene, const std::vector<double>& plane_depths) {
  PlaneStack stack;
  stack.depths = plane_depths;
  stack.planes.assign(plane_depths.size(),
                      RealGrid(scene.image.width(), scene.image.height(), 0.0));
  for (int y = 0; y < scene.image.height(); ++y) {
    for (int x = 0; x < scene.image.width(); ++x) {
      double d = scene.depth_map(x, y);
      const double clamped = std::clamp(d, plane_depths.front(), plane_depths.back());
      if (clamped != d) ++stack.clamped_pixels;
      const auto weights = blend_weights(clamped, plane_depths);
      for (std::size_t k = 0; k < weights.size(); ++k)
        if (weights[k] != 0.0) stack.planes[k](x, y) = scene.image(x, y) * weights[k];
    }
  }
  return stack;
}

RealGrid intensity(const ComplexGrid& samples) {
  RealGrid out(samples.width(), samples.height());
  for (int y = 0; y < samples.height(); ++y)
    for (int x = 0; x < samples.width(); ++x) out(x, y) = std::norm(samples(x, y));
  return out;
}

}  // namespace omni::ref
