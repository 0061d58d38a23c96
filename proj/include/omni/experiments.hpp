#ifndef OMNI_EXPERIMENTS_HPP
#define OMNI_EXPERIMENTS_HPP

#include <string>
#include <utility>
#include <vector>

#include "omni/blend.hpp"
#include "omni/mtf.hpp"
#include "omni/optics.hpp"
#include "omni/phase.hpp"
#include "omni/propagate.hpp"
#include "omni/wgs.hpp"

namespace omni {

// Largest square mode for `plane_count` planes that both fits the pixel
// budget and tiles the sub-panel grid geometrically.
DisplayMode fitted_mode(const OpticalConfig& cfg, int plane_count,
                        std::pair<double, double> depth_range);

// Full synthesis pipeline: depths -> layout -> per-tile Fresnel profiles ->
// optimizer -> wrapped 8-bit pattern.
struct SynthesisResult {
  DepthPlan plan;
  SubPanelLayout layout;
  std::vector<PhaseMap> targets;
  WgsResult wgs;
  QuantizedPhaseMap quantized;
};
SynthesisResult synthesize_pattern(const OpticalConfig& cfg, const std::vector<double>& depths,
                                   const WgsParams& params);

// Demo scene for the mapping experiment: one letter per depth, each placed at
// its own offset inside the sub-panel so the remapped letters land in
// disjoint regions around the axis (sub-panel centers still map to the axis).
struct LetterScene {
  SceneInput scene;  // sub-panel sized
  std::vector<double> depths;
  std::string letters;
  struct Box {
    int x0 = 0, y0 = 0, width = 0, height = 0;
  };
  std::vector<Box> panel_boxes;  // output-space region of each letter
  int tile_width = 0, tile_height = 0;
};
LetterScene make_letter_scene(const OpticalConfig& cfg, const std::string& letters,
                              const std::vector<double>& depths);

// The mapping experiment: blend the letter scene onto the panel, synthesize
// the multi-depth pattern, image the stack at the probe depths, and score
// each letter's sharpness per probe.
struct LetterExperiment {
  LetterScene scene;
  RealGrid panel;
  SynthesisResult synthesis;
  std::vector<double> probes;
  std::vector<RealGrid> stack;                 // intensity per probe
  std::vector<std::vector<double>> sharpness;  // [letter][probe]
  std::vector<int> argmax_probe;               // per letter
  bool all_at_designated = false;

  std::string sharpness_csv() const;
};
LetterExperiment run_letter_experiment(const OpticalConfig& cfg, const std::string& letters,
                                       const std::vector<double>& depths,
                                       const std::vector<double>& probes,
                                       const WgsParams& params);

// Two sub-panels carrying the same slanted edge, split half/half by the
// blending pipeline and mapped to depths d1 and d2.
struct TwoPlaneStimulus {
  RealGrid panel;
  SynthesisResult synthesis;
};
TwoPlaneStimulus make_two_plane_edge_stimulus(const OpticalConfig& cfg, double d1, double d2,
                                              const WgsParams& params,
                                              double edge_angle_deg = 5.0);

// Centered square crop.
RealGrid central_roi(const RealGrid& image, int size);

// Normalize a stack to its global maximum (for export).
void normalize_stack(std::vector<RealGrid>& stack);

}  // namespace omni

#endif
