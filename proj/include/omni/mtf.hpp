#ifndef OMNI_MTF_HPP
#define OMNI_MTF_HPP

#include <string>
#include <vector>

#include "omni/grid.hpp"
#include "omni/optics.hpp"
#include "omni/wgs.hpp"

namespace omni {

// Modulation transfer curve from a slanted-edge region. Frequencies ascend,
// modulation is normalized to 1 at DC.
struct MtfCurve {
  std::vector<double> frequency;   // cycles per mm
  std::vector<double> modulation;  // [0, 1]
};

// Contrast versus an experiment abscissa (plane spacing or focus, diopters).
struct ContrastCurve {
  std::vector<double> abscissa;
  std::vector<double> contrast;

  std::string to_csv(const std::string& abscissa_name) const;
  std::size_t argmax() const;
  bool non_increasing(double slack_fraction) const;
  bool unimodal() const;  // rises (weakly) to the peak, falls (weakly) after
};

// ISO-style slanted-edge MTF: per-row edge centroids, regression for the
// edge angle (must be 2-10 degrees from vertical), 4x oversampled ESF
// projection, central-difference LSF, Hann window, DFT magnitude normalized
// at DC with the discrete-derivative response compensated.
MtfCurve slanted_edge_mtf(const RealGrid& region, double pitch_mm);

// Linear interpolation of the curve at a frequency inside its range.
double contrast_at(const MtfCurve& curve, double frequency_lpmm);

// Slanted-edge test chart: near-vertical edge through the center, area
// antialiased over one pixel.
RealGrid make_slanted_edge(int width, int height, double angle_deg, double low, double high);

// The two contrast experiments. Both synthesize a two-plane edge stimulus
// through the full phase-synthesis + optimizer pipeline, image it with the
// camera model, and report contrast at `frequency_lpmm` normalized to each
// curve's maximum.
ContrastCurve contrast_vs_spacing(const OpticalConfig& cfg, const std::vector<double>& spacings,
                                  double focus = 1.5, double frequency_lpmm = 5.0,
                                  double aperture_diameter = 6e-3,
                                  const WgsParams& wgs_params = {});

ContrastCurve contrast_vs_accommodation(const OpticalConfig& cfg, const std::vector<double>& foci,
                                        std::pair<double, double> plane_depths = {1.0, 2.0},
                                        double frequency_lpmm = 5.0,
                                        double aperture_diameter = 6e-3,
                                        const WgsParams& wgs_params = {});

}  // namespace omni

#endif
