#ifndef OMNI_PHASE_HPP
#define OMNI_PHASE_HPP

#include <cstdint>
#include <vector>

#include "omni/grid.hpp"
#include "omni/optics.hpp"

namespace omni {

// Continuous phase field on the modulator grid, radians, unbounded.
// Physical coordinates use pixel-center sampling: x = (col - (W-1)/2) * pitch,
// so zero sits at the grid center (even grids carry a half-pixel offset).
struct PhaseMap {
  RealGrid values;
  double pitch = 0.0;  // meters per pixel
};

// Phase wrapped into [0, 2pi) and discretized to addressable levels.
struct QuantizedPhaseMap {
  Grid2D<std::uint16_t> levels;
  double pitch = 0.0;
  int levels_count = 256;

  double phase_of_level(std::uint16_t level) const;  // 2pi * level / levels_count
};

// Off-axis Fresnel profile for one sub-panel: a quadratic term focusing to
// the modulator focal length plus a linear term steering the tile center to
// the axis. The quadratic term vanishes for an infinite focal length.
PhaseMap fresnel_phase(const SubPanelLayout::Tile& tile, double slm_focal,
                       const OpticalConfig& cfg);

// Element-wise sum of phase profiles (the naive multi-plane pattern, kept as
// a comparator for the optimizer).
PhaseMap additive_phase(const std::vector<PhaseMap>& maps);

// Phase of the weighted complex superposition: arg(sum_i w_i e^{j phi_i}).
PhaseMap superposition_phase(const std::vector<PhaseMap>& maps,
                             const std::vector<double>& weights);

// Wrap into [0, 2pi) and floor-quantize to cfg.phase_levels levels.
QuantizedPhaseMap wrap_quantize(const PhaseMap& map, const OpticalConfig& cfg);

// Continuous phase reconstructed from levels.
PhaseMap reconstruct_phase(const QuantizedPhaseMap& q);

}  // namespace omni

#endif
