#include "omni/blend.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "omni/parallel.hpp"

namespace omni {

std::vector<double> blend_weights(double depth, const std::vector<double>& plane_depths) {
  if (plane_depths.empty()) throw data_error("blend_weights: empty plane depth list");
  const std::size_t n = plane_depths.size();
  std::vector<double> weights(n, 0.0);
  if (depth <= plane_depths.front()) {
    weights.front() = 1.0;
    return weights;
  }
  if (depth >= plane_depths.back()) {
    weights.back() = 1.0;
    return weights;
  }
  const auto upper = std::upper_bound(plane_depths.begin(), plane_depths.end(), depth);
  const std::size_t k1 = static_cast<std::size_t>(upper - plane_depths.begin());
  const std::size_t k0 = k1 - 1;
  const double w1 = (depth - plane_depths[k0]) / (plane_depths[k1] - plane_depths[k0]);
  weights[k1] = w1;
  weights[k0] = 1.0 - w1;
  return weights;
}

PlaneStack render_planes(const SceneInput& scene, const std::vector<double>& plane_depths) {
  if (plane_depths.empty()) throw data_error("render_planes: empty plane depth list");
  for (std::size_t i = 1; i < plane_depths.size(); ++i)
    if (!(plane_depths[i] > plane_depths[i - 1]))
      throw data_error("render_planes: plane depths must be strictly increasing");
  if (!scene.image.same_shape(scene.depth_map))
    throw data_error("render_planes: image and depth map dimensions differ");

  const int w = scene.image.width();
  const int h = scene.image.height();
  PlaneStack stack;
  stack.depths = plane_depths;
  stack.planes.assign(plane_depths.size(), RealGrid(w, h, 0.0));

  const double d_lo = plane_depths.front();
  const double d_hi = plane_depths.back();
  std::atomic<std::int64_t> clamped{0};
  parallel_rows(h, [&](int y) {
    std::int64_t row_clamped = 0;
    const double* img = scene.image.row(y);
    const double* dep = scene.depth_map.row(y);
    for (int x = 0; x < w; ++x) {
      double d = dep[x];
      if (d < d_lo || d > d_hi) {
        d = std::clamp(d, d_lo, d_hi);
        ++row_clamped;
      }
      // Inline two-plane split; same arithmetic as blend_weights.
      if (d <= d_lo) {
        stack.planes.front()(x, y) = img[x];
      } else if (d >= d_hi) {
        stack.planes.back()(x, y) = img[x];
      } else {
        const auto upper =
            std::upper_bound(plane_depths.begin(), plane_depths.end(), d);
        const std::size_t k1 = static_cast<std::size_t>(upper - plane_depths.begin());
        const std::size_t k0 = k1 - 1;
        const double w1 = (d - plane_depths[k0]) / (plane_depths[k1] - plane_depths[k0]);
        stack.planes[k1](x, y) = img[x] * w1;
        stack.planes[k0](x, y) = img[x] * (1.0 - w1);
      }
    }
    if (row_clamped) clamped.fetch_add(row_clamped, std::memory_order_relaxed);
  });
  stack.clamped_pixels = clamped.load();
  return stack;
}

RealGrid compose_panel(const PlaneStack& stack, const SubPanelLayout& layout) {
  if (stack.planes.size() > layout.tiles.size())
    throw data_error("compose_panel: more planes than tiles");
  RealGrid panel(layout.panel_width, layout.panel_height, 0.0);
  for (std::size_t k = 0; k < stack.planes.size(); ++k) {
    const auto& tile = layout.tiles[k];
    const RealGrid& plane = stack.planes[k];
    const bool same_size = plane.width() == tile.width && plane.height() == tile.height;
    parallel_rows(tile.height, [&](int ty) {
      const int py = tile.y0 + ty;
      for (int tx = 0; tx < tile.width; ++tx) {
        double v;
        if (same_size) {
          v = plane(tx, ty);
        } else {
          const int sx = std::min(plane.width() - 1,
                                  static_cast<int>(tx * static_cast<double>(plane.width()) /
                                                   tile.width));
          const int sy = std::min(plane.height() - 1,
                                  static_cast<int>(ty * static_cast<double>(plane.height()) /
                                                   tile.height));
          v = plane(sx, sy);
        }
        panel(tile.x0 + tx, py) = v;
      }
    });
  }
  return panel;
}

}  // namespace omni
