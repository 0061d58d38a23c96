#ifndef OMNI_BLEND_HPP
#define OMNI_BLEND_HPP

#include <vector>

#include "omni/grid.hpp"
#include "omni/optics.hpp"

namespace omni {

// All-in-focus image plus per-pixel depth in diopters.
struct SceneInput {
  RealGrid image;      // linear intensity in [0, 1]
  RealGrid depth_map;  // diopters
};

// Per-plane intensity images; per-pixel sums reproduce the source image.
struct PlaneStack {
  std::vector<double> depths;
  std::vector<RealGrid> planes;
  std::int64_t clamped_pixels = 0;  // depth samples clamped into the plane range
};

// Linear depth-weighted split of unit intensity at depth d across the plane
// depths: all weight on the nearest plane outside the range, otherwise split
// between the two bracketing planes in proportion to dioptric distance.
// Weights sum to exactly 1.
std::vector<double> blend_weights(double depth, const std::vector<double>& plane_depths);

// Distribute every pixel's intensity over the planes by blend_weights of its
// depth. Out-of-range depths clamp (counted in the result).
PlaneStack render_planes(const SceneInput& scene, const std::vector<double>& plane_depths);

// Write plane k's image into tile k of the layout (nearest-neighbor resample
// when sizes differ); untiled panel area stays zero.
RealGrid compose_panel(const PlaneStack& stack, const SubPanelLayout& layout);

}  // namespace omni

#endif
