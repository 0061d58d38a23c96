#include "omni/phase.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "omni/parallel.hpp"

namespace omni {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double QuantizedPhaseMap::phase_of_level(std::uint16_t level) const {
  return kTwoPi * static_cast<double>(level) / static_cast<double>(levels_count);
}

PhaseMap fresnel_phase(const SubPanelLayout::Tile& tile, double slm_focal,
                       const OpticalConfig& cfg) {
  if (slm_focal == 0.0) throw numeric_error("fresnel_phase: zero focal length is degenerate");
  if (!std::isfinite(tile.center_x) || !std::isfinite(tile.center_y))
    throw numeric_error("fresnel_phase: non-finite tile center offset");

  const int w = cfg.slm_width;
  const int h = cfg.slm_height;
  const double pitch = cfg.slm_pitch;
  const bool flat = std::isinf(slm_focal);
  const double quad_coeff = flat ? 0.0 : std::numbers::pi / (cfg.wavelength * slm_focal);
  const double ramp_x = kTwoPi / cfg.wavelength * std::sin(tile.center_x / cfg.objective_focal);
  const double ramp_y = kTwoPi / cfg.wavelength * std::sin(tile.center_y / cfg.objective_focal);

  PhaseMap map;
  map.pitch = pitch;
  map.values = RealGrid(w, h);
  const double x0 = -(w - 1) / 2.0 * pitch;
  const double y0 = -(h - 1) / 2.0 * pitch;
  parallel_rows(h, [&](int row) {
    const double y = y0 + row * pitch;
    double* out = map.values.row(row);
    for (int col = 0; col < w; ++col) {
      const double x = x0 + col * pitch;
      out[col] = quad_coeff * (x * x + y * y) + ramp_x * x + ramp_y * y;
    }
  });
  return map;
}

PhaseMap additive_phase(const std::vector<PhaseMap>& maps) {
  if (maps.empty()) throw data_error("additive_phase: no maps");
  for (const auto& m : maps)
    if (!m.values.same_shape(maps.front().values) || m.pitch != maps.front().pitch)
      throw data_error("additive_phase: dimension or pitch mismatch");

  PhaseMap out;
  out.pitch = maps.front().pitch;
  out.values = RealGrid(maps.front().values.width(), maps.front().values.height());
  parallel_rows(out.values.height(), [&](int row) {
    double* dst = out.values.row(row);
    for (const auto& m : maps) {
      const double* src = m.values.row(row);
      for (int col = 0; col < out.values.width(); ++col) dst[col] += src[col];
    }
  });
  return out;
}

PhaseMap superposition_phase(const std::vector<PhaseMap>& maps,
                             const std::vector<double>& weights) {
  if (maps.empty()) throw data_error("superposition_phase: no maps");
  if (weights.size() != maps.size())
    throw data_error("superposition_phase: weight count mismatch");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw data_error("superposition_phase: negative weight");
    total += w;
  }
  if (total == 0.0) throw data_error("superposition_phase: all weights zero");
  for (const auto& m : maps)
    if (!m.values.same_shape(maps.front().values) || m.pitch != maps.front().pitch)
      throw data_error("superposition_phase: dimension or pitch mismatch");

  PhaseMap out;
  out.pitch = maps.front().pitch;
  out.values = RealGrid(maps.front().values.width(), maps.front().values.height());
  const int w = out.values.width();
  parallel_rows(out.values.height(), [&](int row) {
    double* dst = out.values.row(row);
    for (int col = 0; col < w; ++col) {
      double re = 0.0, im = 0.0;
      for (std::size_t i = 0; i < maps.size(); ++i) {
        const double phi = maps[i].values(col, row);
        re += weights[i] * std::cos(phi);
        im += weights[i] * std::sin(phi);
      }
      dst[col] = std::atan2(im, re);
    }
  });
  return out;
}

QuantizedPhaseMap wrap_quantize(const PhaseMap& map, const OpticalConfig& cfg) {
  if (cfg.phase_levels < 2 || cfg.phase_levels > 65536)
    throw config_error("wrap_quantize: phase_levels out of range [2, 65536]");
  QuantizedPhaseMap q;
  q.pitch = map.pitch;
  q.levels_count = cfg.phase_levels;
  q.levels = Grid2D<std::uint16_t>(map.values.width(), map.values.height());
  const double step = kTwoPi / cfg.phase_levels;
  const int w = map.values.width();
  const std::uint16_t max_level = static_cast<std::uint16_t>(cfg.phase_levels - 1);
  std::atomic<bool> bad{false};
  parallel_rows(map.values.height(), [&](int row) {
    const double* src = map.values.row(row);
    std::uint16_t* dst = q.levels.row(row);
    for (int col = 0; col < w; ++col) {
      if (!std::isfinite(src[col])) {
        bad.store(true, std::memory_order_relaxed);
        dst[col] = 0;
        continue;
      }
      double wrapped = std::fmod(src[col], kTwoPi);
      if (wrapped < 0.0) wrapped += kTwoPi;
      int level = static_cast<int>(std::floor(wrapped / step));
      if (level > max_level) level = max_level;  // wrap boundary rounding
      dst[col] = static_cast<std::uint16_t>(level);
    }
  });
  if (bad.load()) throw numeric_error("wrap_quantize: non-finite phase");
  return q;
}

PhaseMap reconstruct_phase(const QuantizedPhaseMap& q) {
  PhaseMap map;
  map.pitch = q.pitch;
  map.values = RealGrid(q.levels.width(), q.levels.height());
  const double step = kTwoPi / q.levels_count;
  parallel_rows(q.levels.height(), [&](int row) {
    const std::uint16_t* src = q.levels.row(row);
    double* dst = map.values.row(row);
    for (int col = 0; col < q.levels.width(); ++col) dst[col] = step * src[col];
  });
  return map;
}

}  // namespace omni
