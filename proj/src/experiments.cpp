#include "omni/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "omni/letters.hpp"
#include "omni/parallel.hpp"

namespace omni {

DisplayMode fitted_mode(const OpticalConfig& cfg, int plane_count,
                        std::pair<double, double> depth_range) {
  if (plane_count < 1) throw config_error("fitted_mode: plane_count must be >= 1");
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(plane_count))));
  const int rows = (plane_count + cols - 1) / cols;
  const std::int64_t budget = cfg.panel_pixel_count();
  int side = static_cast<int>(std::floor(std::sqrt(static_cast<double>(budget) / plane_count)));
  side = std::min({side, cfg.panel_width / cols, cfg.panel_height / rows});
  if (side < 1) throw config_error("fitted_mode: no tile size fits this plane count");
  DisplayMode mode;
  mode.lateral_width = side;
  mode.lateral_height = side;
  mode.plane_count = plane_count;
  mode.plane_spacing =
      (plane_count > 1) ? (depth_range.second - depth_range.first) / (plane_count - 1) : 0.0;
  mode.frame_rate = cfg.frame_rate;
  return mode;
}

SynthesisResult synthesize_pattern(const OpticalConfig& cfg, const std::vector<double>& depths,
                                   const WgsParams& params) {
  SynthesisResult result;
  result.plan = DepthPlan::for_depths(depths, cfg);
  const DisplayMode mode =
      fitted_mode(cfg, static_cast<int>(depths.size()), {depths.front(), depths.back()});
  result.layout = subpanel_layout(cfg, mode);
  result.targets.reserve(depths.size());
  for (std::size_t i = 0; i < depths.size(); ++i)
    result.targets.push_back(
        fresnel_phase(result.layout.tiles[i], result.plan.slm_focals[i], cfg));
  result.wgs = wgs_optimize(result.targets, params);
  result.quantized = wrap_quantize(result.wgs.phase, cfg);
  return result;
}

LetterScene make_letter_scene(const OpticalConfig& cfg, const std::string& letters,
                              const std::vector<double>& depths) {
  if (letters.empty()) throw config_error("make_letter_scene: no letters");
  if (letters.size() != depths.size())
    throw config_error("make_letter_scene: letter count must match depth count");
  for (char c : letters)
    if (!letter_supported(c))
      throw config_error(std::string("make_letter_scene: unsupported letter '") + c + "'");

  const int n = static_cast<int>(letters.size());
  const DisplayMode mode = fitted_mode(cfg, n, {depths.front(), depths.back()});
  const int tw = mode.lateral_width;
  const int th = mode.lateral_height;

  LetterScene out;
  out.letters = letters;
  out.depths = depths;
  out.tile_width = tw;
  out.tile_height = th;
  out.scene.image = RealGrid(tw, th, 0.0);
  out.scene.depth_map = RealGrid(tw, th, depths.front());

  // Letters arranged on an inner grid inside the sub-panel; disjoint boxes
  // survive the mapping because every sub-panel center goes to the axis.
  const int inner_cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  const int inner_rows = (n + inner_cols - 1) / inner_cols;
  const int letter_w = std::max(8, static_cast<int>(tw * 0.20));
  const int letter_h = std::max(10, static_cast<int>(th * 0.26));
  const int pad = std::max(4, tw / 40);

  const int panel_dx = (cfg.panel_width - tw) / 2;
  const int panel_dy = (cfg.panel_height - th) / 2;
  for (int k = 0; k < n; ++k) {
    const int j = k % inner_cols;
    const int i = k / inner_cols;
    const double fx = (inner_cols == 1) ? 0.5 : (0.5 + j) / inner_cols;
    const double fy = (inner_rows == 1) ? 0.5 : (0.5 + i) / inner_rows;
    const int cx = static_cast<int>(std::lround(tw * (0.5 + (fx - 0.5) * 0.8)));
    const int cy = static_cast<int>(std::lround(th * (0.5 + (fy - 0.5) * 0.8)));
    const int x0 = cx - letter_w / 2;
    const int y0 = cy - letter_h / 2;
    draw_letter(out.scene.image, letters[k], x0, y0, letter_w, letter_h, 1.0);
    for (int y = y0; y < y0 + letter_h; ++y)
      for (int x = x0; x < x0 + letter_w; ++x)
        if (x >= 0 && x < tw && y >= 0 && y < th) out.scene.depth_map(x, y) = depths[k];

    LetterScene::Box box;
    box.x0 = x0 - pad + panel_dx;
    box.y0 = y0 - pad + panel_dy;
    box.width = letter_w + 2 * pad;
    box.height = letter_h + 2 * pad;
    out.panel_boxes.push_back(box);
  }
  return out;
}

LetterExperiment run_letter_experiment(const OpticalConfig& cfg, const std::string& letters,
                                       const std::vector<double>& depths,
                                       const std::vector<double>& probes,
                                       const WgsParams& params) {
  LetterExperiment exp;
  exp.scene = make_letter_scene(cfg, letters, depths);
  exp.probes = probes;

  const PlaneStack stack = render_planes(exp.scene.scene, depths);
  const DisplayMode mode =
      fitted_mode(cfg, static_cast<int>(depths.size()), {depths.front(), depths.back()});
  const SubPanelLayout layout = subpanel_layout(cfg, mode);
  exp.panel = compose_panel(stack, layout);
  exp.synthesis = synthesize_pattern(cfg, depths, params);
  exp.stack = simulate_depth_stack(exp.panel, exp.synthesis.quantized, cfg, probes);

  const int n = static_cast<int>(letters.size());
  exp.sharpness.assign(n, std::vector<double>(probes.size(), 0.0));
  exp.argmax_probe.assign(n, 0);
  bool all_ok = true;
  for (int k = 0; k < n; ++k) {
    const auto& box = exp.scene.panel_boxes[k];
    for (std::size_t p = 0; p < probes.size(); ++p)
      exp.sharpness[k][p] =
          sharpness_laplacian(exp.stack[p], box.x0, box.y0, box.width, box.height);
    int best = 0;
    for (std::size_t p = 1; p < probes.size(); ++p)
      if (exp.sharpness[k][p] > exp.sharpness[k][best]) best = static_cast<int>(p);
    exp.argmax_probe[k] = best;
    if (std::abs(probes[best] - depths[k]) > 1e-9) all_ok = false;
  }
  exp.all_at_designated = all_ok;
  return exp;
}

std::string LetterExperiment::sharpness_csv() const {
  std::string out = "probe_diopter";
  char buf[96];
  for (std::size_t k = 0; k < scene.letters.size(); ++k) {
    std::snprintf(buf, sizeof buf, ",sharpness_%c%zu", scene.letters[k], k);
    out += buf;
  }
  out += '\n';
  for (std::size_t p = 0; p < probes.size(); ++p) {
    std::snprintf(buf, sizeof buf, "%.17g", probes[p]);
    out += buf;
    for (std::size_t k = 0; k < scene.letters.size(); ++k) {
      std::snprintf(buf, sizeof buf, ",%.17g", sharpness[k][p]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

TwoPlaneStimulus make_two_plane_edge_stimulus(const OpticalConfig& cfg, double d1, double d2,
                                              const WgsParams& params, double edge_angle_deg) {
  if (!(d2 > d1)) throw config_error("two_plane_stimulus: depths must be ascending");
  const DisplayMode mode = fitted_mode(cfg, 2, {d1, d2});
  const SubPanelLayout layout = subpanel_layout(cfg, mode);

  SceneInput scene;
  scene.image = make_slanted_edge(mode.lateral_width, mode.lateral_height, edge_angle_deg,
                                  0.1, 1.0);
  scene.depth_map =
      RealGrid(mode.lateral_width, mode.lateral_height, 0.5 * (d1 + d2));  // dioptric midpoint
  const PlaneStack stack = render_planes(scene, {d1, d2});

  TwoPlaneStimulus stim;
  stim.panel = compose_panel(stack, layout);
  stim.synthesis = synthesize_pattern(cfg, {d1, d2}, params);
  return stim;
}

RealGrid central_roi(const RealGrid& image, int size) {
  const int s = std::min({size, image.width(), image.height()});
  RealGrid roi(s, s);
  const int x0 = (image.width() - s) / 2;
  const int y0 = (image.height() - s) / 2;
  for (int y = 0; y < s; ++y)
    for (int x = 0; x < s; ++x) roi(x, y) = image(x0 + x, y0 + y);
  return roi;
}

void normalize_stack(std::vector<RealGrid>& stack) {
  double peak = 0.0;
  for (const auto& img : stack)
    for (std::size_t i = 0; i < img.size(); ++i) peak = std::max(peak, img.data()[i]);
  if (peak <= 0.0) return;
  const double scale = 1.0 / peak;
  for (auto& img : stack)
    for (std::size_t i = 0; i < img.size(); ++i) img.data()[i] *= scale;
}

// ---- Contrast experiments (declared in mtf.hpp) ----

namespace {

double measure_edge_contrast(const RealGrid& capture, const OpticalConfig& cfg,
                             int tile_side, double frequency_lpmm) {
  const int roi_size = std::max(64, tile_side * 7 / 8);
  const RealGrid roi = central_roi(capture, roi_size);
  const MtfCurve curve = slanted_edge_mtf(roi, cfg.panel_pitch * 1e3);
  return contrast_at(curve, frequency_lpmm);
}

void normalize_curve(ContrastCurve& curve) {
  double peak = 0.0;
  for (double v : curve.contrast) peak = std::max(peak, v);
  if (peak > 0.0)
    for (double& v : curve.contrast) v /= peak;
}

}  // namespace

ContrastCurve contrast_vs_spacing(const OpticalConfig& cfg, const std::vector<double>& spacings,
                                  double focus, double frequency_lpmm,
                                  double aperture_diameter, const WgsParams& wgs_params) {
  if (spacings.empty()) throw config_error("contrast_vs_spacing: no spacings");
  ContrastCurve curve;
  for (double dz : spacings) {
    if (!(dz > 0.0)) throw config_error("contrast_vs_spacing: spacing must be positive");
    const double d1 = focus - dz / 2.0;
    const double d2 = focus + dz / 2.0;
    if (d1 < 0.0 || d2 > cfg.native_diopter)
      throw config_error("contrast_vs_spacing: plane outside [0, native]");
    const TwoPlaneStimulus stim = make_two_plane_edge_stimulus(cfg, d1, d2, wgs_params);
    CameraModel cam;
    cam.focus = focus;
    cam.aperture_diameter = aperture_diameter;
    const RealGrid capture =
        camera_capture(stim.panel, stim.synthesis.quantized, cfg, cam);
    const int tile = stim.synthesis.layout.tiles.front().width;
    curve.abscissa.push_back(dz);
    curve.contrast.push_back(measure_edge_contrast(capture, cfg, tile, frequency_lpmm));
  }
  normalize_curve(curve);
  return curve;
}

ContrastCurve contrast_vs_accommodation(const OpticalConfig& cfg, const std::vector<double>& foci,
                                        std::pair<double, double> plane_depths,
                                        double frequency_lpmm, double aperture_diameter,
                                        const WgsParams& wgs_params) {
  if (foci.empty()) throw config_error("contrast_vs_accommodation: no foci");
  const TwoPlaneStimulus stim =
      make_two_plane_edge_stimulus(cfg, plane_depths.first, plane_depths.second, wgs_params);
  const int tile = stim.synthesis.layout.tiles.front().width;

  ContrastCurve curve;
  for (double z : foci) {
    if (z < 0.0 || z > cfg.native_diopter)
      throw config_error("contrast_vs_accommodation: focus outside [0, native]");
    CameraModel cam;
    cam.focus = z;
    cam.aperture_diameter = aperture_diameter;
    const RealGrid capture =
        camera_capture(stim.panel, stim.synthesis.quantized, cfg, cam);
    curve.abscissa.push_back(z);
    curve.contrast.push_back(measure_edge_contrast(capture, cfg, tile, frequency_lpmm));
  }
  normalize_curve(curve);
  return curve;
}

}  // namespace omni
