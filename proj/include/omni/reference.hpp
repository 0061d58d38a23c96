#ifndef OMNI_REFERENCE_HPP
#define OMNI_REFERENCE_HPP

#include <complex>
#include <vector>

#include "omni/blend.hpp"
#include "omni/phase.hpp"

// Plain single-threaded implementations of the parallel kernels. Kept for
// testing (the OpenMP kernels must match them) and as the benchmark baseline.
namespace omni::ref {

PhaseMap fresnel_phase(const SubPanelLayout::Tile& tile, double slm_focal,
                       const OpticalConfig& cfg);

PhaseMap superposition_phase(const std::vector<PhaseMap>& maps,
                             const std::vector<double>& weights);

QuantizedPhaseMap wrap_quantize(const PhaseMap& map, const OpticalConfig& cfg);

// Single-accumulator loop in row-major order.
std::complex<double> overlap(const PhaseMap& est, const PhaseMap& target);

PlaneStack render_planes(const SceneInput& scene, const std::vector<double>& plane_depths);

// |a|^2 of every sample.
RealGrid intensity(const ComplexGrid& samples);

}  // namespace omni::ref

#endif
