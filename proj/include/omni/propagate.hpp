#ifndef OMNI_PROPAGATE_HPP
#define OMNI_PROPAGATE_HPP

#include <cstdint>
#include <vector>

#include "omni/grid.hpp"
#include "omni/optics.hpp"
#include "omni/phase.hpp"

namespace omni {

// Sampled scalar complex field with its physical pixel pitch.
struct ComplexField {
  ComplexGrid samples;
  double pitch = 0.0;       // meters per pixel
  double wavelength = 0.0;  // meters
};

// Ideal thin-lens camera observing the intermediate image volume through
// the eyepiece: focused at `focus` diopters with a circular aperture.
struct CameraModel {
  double focus = 1.5;                // diopters
  double aperture_diameter = 6e-3;   // meters at the pupil
  int sensor_width = 0;              // 0 = full simulation grid
  int sensor_height = 0;
};

struct RelayStats {
  std::int64_t total_bins = 0;
  std::int64_t out_of_aperture_bins = 0;  // Fourier bins beyond the modulator extent
};

double field_energy(const ComplexField& field);

// Coherent source model of the panel: amplitude = sqrt(intensity), flat phase.
ComplexField panel_to_field(const RealGrid& panel, const OpticalConfig& cfg);

// One transmissive pass through the 4f relay with the phase pattern at the
// Fourier plane. The grid is zero-padded 2x; each padded Fourier bin at
// frequency nu maps to the physical modulator coordinate x_f = lambda *
// sqrt(K) * nu and picks up that pixel's phase (nearest neighbor; bins
// beyond the modulator pass unmodulated and are counted).
ComplexField relay_4f(const ComplexField& input, const QuantizedPhaseMap& slm,
                      const OpticalConfig& cfg, RelayStats* stats = nullptr);

// Largest propagation distance the (2x padded) grid supports without
// transfer-function aliasing.
double angular_spectrum_max_distance(const ComplexField& field);

// Exact scalar free-space propagation: spectrum times
// e^{j 2 pi d sqrt(1/lambda^2 - nu^2)}; evanescent components are dropped.
// Grids are zero-padded 2x internally.
ComplexField propagate_angular_spectrum(const ComplexField& field, double distance);

// Intensity at each probe depth: relay output propagated to the probe's
// intermediate-image plane.
std::vector<RealGrid> simulate_depth_stack(const RealGrid& panel, const QuantizedPhaseMap& slm,
                                           const OpticalConfig& cfg,
                                           const std::vector<double>& probe_depths);

// Image seen by the camera: relay output propagated to the plane conjugate
// to cam.focus, aperture cut applied in the spectrum, intensity returned.
RealGrid camera_capture(const RealGrid& panel, const QuantizedPhaseMap& slm,
                        const OpticalConfig& cfg, const CameraModel& cam);

// Mean squared 4-neighbor Laplacian over a pixel box; the sharpness score
// used for the depth-stack experiments.
double sharpness_laplacian(const RealGrid& image, int x0, int y0, int width, int height);

}  // namespace omni

#endif
