#include "omni/propagate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <vector>

#include "omni/fft.hpp"
#include "omni/parallel.hpp"

namespace omni {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PaddedBuffer {
  AlignedComplexBuffer buf;
  int wp, hp, w, h;

  PaddedBuffer(const ComplexField& in)
      : buf(static_cast<std::size_t>(2 * in.samples.width()) * (2 * in.samples.height())),
        wp(2 * in.samples.width()),
        hp(2 * in.samples.height()),
        w(in.samples.width()),
        h(in.samples.height()) {
    std::memset(buf.data(), 0, sizeof(std::complex<double>) * buf.size());
    const int x_off = w / 2, y_off = h / 2;
    std::complex<double>* dst = buf.data();
    parallel_rows(h, [&](int y) {
      const std::complex<double>* src = in.samples.row(y);
      std::complex<double>* out = dst + static_cast<std::size_t>(y + y_off) * wp + x_off;
      std::copy(src, src + w, out);
    });
  }

  ComplexField crop(const ComplexField& like) const {
    ComplexField out;
    out.pitch = like.pitch;
    out.wavelength = like.wavelength;
    out.samples = ComplexGrid(w, h);
    const int x_off = w / 2, y_off = h / 2;
    const std::complex<double>* src = buf.data();
    parallel_rows(h, [&](int y) {
      const std::complex<double>* row = src + static_cast<std::size_t>(y + y_off) * wp + x_off;
      std::copy(row, row + w, out.samples.row(y));
    });
    return out;
  }

  // Signed frequency of bin k along an axis of n samples with pitch p.
  static double bin_frequency(int k, int n, double pitch) {
    const int signed_k = (k < (n + 1) / 2) ? k : k - n;
    return static_cast<double>(signed_k) / (static_cast<double>(n) * pitch);
  }
};

void check_field(const ComplexField& field, const char* op) {
  if (field.samples.empty()) throw data_error(std::string(op) + ": empty field");
  if (!(field.pitch > 0.0)) throw data_error(std::string(op) + ": non-positive pitch");
  if (!(field.wavelength > 0.0)) throw data_error(std::string(op) + ": non-positive wavelength");
}

double max_distance_for(double pitch, double wavelength, int padded_n) {
  const double nu_grid = 1.0 / (2.0 * pitch);
  const double nu_eff = std::min(nu_grid, 0.9 / wavelength);
  const double kappa_sq = 1.0 / (wavelength * wavelength) - nu_eff * nu_eff;
  const double kappa = std::sqrt(std::max(kappa_sq, 1e-300));
  return static_cast<double>(padded_n) * pitch * kappa / (2.0 * nu_eff);
}

}  // namespace

double field_energy(const ComplexField& field) {
  const int w = field.samples.width();
  return sum_over_rows(field.samples.height(), [&](int y) {
    const std::complex<double>* row = field.samples.row(y);
    double acc = 0.0;
    for (int x = 0; x < w; ++x) acc += std::norm(row[x]);
    return acc;
  });
}

ComplexField panel_to_field(const RealGrid& panel, const OpticalConfig& cfg) {
  if (panel.empty()) throw data_error("panel_to_field: empty panel");
  ComplexField field;
  field.pitch = cfg.panel_pitch;
  field.wavelength = cfg.wavelength;
  field.samples = ComplexGrid(panel.width(), panel.height());
  std::atomic<bool> bad{false};
  parallel_rows(panel.height(), [&](int y) {
    const double* src = panel.row(y);
    std::complex<double>* dst = field.samples.row(y);
    for (int x = 0; x < panel.width(); ++x) {
      const double v = src[x];
      if (!(v >= -1e-12 && v <= 1.0 + 1e-9) || !std::isfinite(v)) {
        bad.store(true, std::memory_order_relaxed);
        dst[x] = {0.0, 0.0};
        continue;
      }
      dst[x] = {std::sqrt(std::max(v, 0.0)), 0.0};
    }
  });
  if (bad.load()) throw data_error("panel_to_field: intensities must lie in [0, 1]");
  return field;
}

ComplexField relay_4f(const ComplexField& input, const QuantizedPhaseMap& slm,
                      const OpticalConfig& cfg, RelayStats* stats) {
  check_field(input, "relay_4f");
  if (slm.levels.empty()) throw data_error("relay_4f: empty phase map");
  if (slm.levels_count < 2) throw data_error("relay_4f: invalid levels_count");

  PaddedBuffer padded(input);
  fft2d_forward(padded.buf.data(), padded.wp, padded.hp);

  std::vector<std::complex<double>> lut(static_cast<std::size_t>(slm.levels_count));
  for (int l = 0; l < slm.levels_count; ++l)
    lut[l] = std::polar(1.0, kTwoPi * l / slm.levels_count);

  const double lam_fr = input.wavelength * cfg.relay_focal();
  const int slm_w = slm.levels.width();
  const int slm_h = slm.levels.height();
  const double slm_cx = (slm_w - 1) / 2.0;
  const double slm_cy = (slm_h - 1) / 2.0;
  const int wp = padded.wp, hp = padded.hp;
  std::complex<double>* data = padded.buf.data();

  std::vector<std::int64_t> missed(hp, 0);
  parallel_rows(hp, [&](int ky) {
    const double nu_y = PaddedBuffer::bin_frequency(ky, hp, input.pitch);
    const double yf = lam_fr * nu_y;
    const int row = static_cast<int>(std::floor(yf / slm.pitch + slm_cy + 0.5));
    std::complex<double>* line = data + static_cast<std::size_t>(ky) * wp;
    std::int64_t row_missed = 0;
    for (int kx = 0; kx < wp; ++kx) {
      const double nu_x = PaddedBuffer::bin_frequency(kx, wp, input.pitch);
      const double xf = lam_fr * nu_x;
      const int col = static_cast<int>(std::floor(xf / slm.pitch + slm_cx + 0.5));
      if (col >= 0 && col < slm_w && row >= 0 && row < slm_h) {
        line[kx] *= lut[slm.levels(col, row)];
      } else {
        ++row_missed;  // beyond the modulator: passes unmodulated
      }
    }
    missed[ky] = row_missed;
  });

  fft2d_inverse(padded.buf.data(), wp, hp);
  if (stats) {
    stats->total_bins = static_cast<std::int64_t>(wp) * hp;
    stats->out_of_aperture_bins = 0;
    for (auto m : missed) stats->out_of_aperture_bins += m;
  }
  return padded.crop(input);
}

double angular_spectrum_max_distance(const ComplexField& field) {
  check_field(field, "angular_spectrum_max_distance");
  const int padded_n = 2 * std::min(field.samples.width(), field.samples.height());
  return max_distance_for(field.pitch, field.wavelength, padded_n);
}

ComplexField propagate_angular_spectrum(const ComplexField& field, double distance) {
  check_field(field, "propagate_angular_spectrum");
  if (!std::isfinite(distance))
    throw numeric_error("propagate_angular_spectrum: non-finite distance");
  if (distance == 0.0) return field;

  const double d_max = angular_spectrum_max_distance(field);
  if (std::abs(distance) > d_max) {
    const double factor = std::abs(distance) / d_max;
    char msg[256];
    std::snprintf(msg, sizeof msg,
                  "propagate_angular_spectrum: |distance| %.3e m exceeds the grid's "
                  "aliasing limit %.3e m; pad the field by >= %.1fx (or reduce the distance)",
                  std::abs(distance), d_max, 2.0 * factor);
    throw numeric_error(msg);
  }

  PaddedBuffer padded(field);
  fft2d_forward(padded.buf.data(), padded.wp, padded.hp);

  const double inv_lambda_sq = 1.0 / (field.wavelength * field.wavelength);
  const int wp = padded.wp, hp = padded.hp;
  std::complex<double>* data = padded.buf.data();
  parallel_rows(hp, [&](int ky) {
    const double nu_y = PaddedBuffer::bin_frequency(ky, hp, field.pitch);
    std::complex<double>* line = data + static_cast<std::size_t>(ky) * wp;
    for (int kx = 0; kx < wp; ++kx) {
      const double nu_x = PaddedBuffer::bin_frequency(kx, wp, field.pitch);
      const double arg = inv_lambda_sq - nu_x * nu_x - nu_y * nu_y;
      if (arg <= 0.0) {
        line[kx] = {0.0, 0.0};  // evanescent
      } else {
        line[kx] *= std::polar(1.0, kTwoPi * distance * std::sqrt(arg));
      }
    }
  });

  fft2d_inverse(padded.buf.data(), wp, hp);
  return padded.crop(field);
}

std::vector<RealGrid> simulate_depth_stack(const RealGrid& panel, const QuantizedPhaseMap& slm,
                                           const OpticalConfig& cfg,
                                           const std::vector<double>& probe_depths) {
  for (double d : probe_depths)
    if (d < 0.0 || d > cfg.native_diopter)
      throw config_error("simulate_depth_stack: probe depth outside [0, native]");

  const ComplexField source = panel_to_field(panel, cfg);
  const ComplexField out = relay_4f(source, slm, cfg);

  std::vector<RealGrid> stack;
  stack.reserve(probe_depths.size());
  for (double d : probe_depths) {
    const double delta = axial_offset_from_native(d, cfg);
    ComplexField field = (delta == 0.0) ? out : propagate_angular_spectrum(out, delta);
    RealGrid intensity(field.samples.width(), field.samples.height());
    parallel_rows(intensity.height(), [&](int y) {
      const std::complex<double>* src = field.samples.row(y);
      double* dst = intensity.row(y);
      for (int x = 0; x < intensity.width(); ++x) dst[x] = std::norm(src[x]);
    });
    stack.push_back(std::move(intensity));
  }
  return stack;
}

RealGrid camera_capture(const RealGrid& panel, const QuantizedPhaseMap& slm,
                        const OpticalConfig& cfg, const CameraModel& cam) {
  if (cam.focus < 0.0 || cam.focus > cfg.native_diopter)
    throw config_error("camera_capture: focus outside [0, native]");
  if (!(cam.aperture_diameter > 0.0))
    throw config_error("camera_capture: aperture must be positive");

  const ComplexField source = panel_to_field(panel, cfg);
  const ComplexField out = relay_4f(source, slm, cfg);
  const double delta = axial_offset_from_native(cam.focus, cfg);

  const double d_max = angular_spectrum_max_distance(out);
  if (std::abs(delta) > d_max) {
    char msg[256];
    std::snprintf(msg, sizeof msg,
                  "camera_capture: focus offset %.3e m exceeds the grid's aliasing "
                  "limit %.3e m; pad the field or move the focus",
                  std::abs(delta), d_max);
    throw numeric_error(msg);
  }

  // Propagation to the conjugate plane and the aperture cut are both
  // Fourier multipliers; apply them in one padded pass.
  const double nu_cut = cam.aperture_diameter / (2.0 * cfg.eyepiece_focal * out.wavelength);
  const double nu_cut_sq = nu_cut * nu_cut;
  const double inv_lambda_sq = 1.0 / (out.wavelength * out.wavelength);

  PaddedBuffer padded(out);
  fft2d_forward(padded.buf.data(), padded.wp, padded.hp);
  const int wp = padded.wp, hp = padded.hp;
  std::complex<double>* data = padded.buf.data();
  parallel_rows(hp, [&](int ky) {
    const double nu_y = PaddedBuffer::bin_frequency(ky, hp, out.pitch);
    std::complex<double>* line = data + static_cast<std::size_t>(ky) * wp;
    for (int kx = 0; kx < wp; ++kx) {
      const double nu_x = PaddedBuffer::bin_frequency(kx, wp, out.pitch);
      const double nu_sq = nu_x * nu_x + nu_y * nu_y;
      const double arg = inv_lambda_sq - nu_sq;
      if (nu_sq > nu_cut_sq || arg <= 0.0) {
        line[kx] = {0.0, 0.0};
      } else if (delta != 0.0) {
        line[kx] *= std::polar(1.0, kTwoPi * delta * std::sqrt(arg));
      }
    }
  });
  fft2d_inverse(padded.buf.data(), wp, hp);
  const ComplexField focused = padded.crop(out);

  RealGrid intensity(focused.samples.width(), focused.samples.height());
  parallel_rows(intensity.height(), [&](int y) {
    const std::complex<double>* src = focused.samples.row(y);
    double* dst = intensity.row(y);
    for (int x = 0; x < intensity.width(); ++x) dst[x] = std::norm(src[x]);
  });

  if (cam.sensor_width > 0 && cam.sensor_height > 0 &&
      (cam.sensor_width < intensity.width() || cam.sensor_height < intensity.height())) {
    const int sw = std::min(cam.sensor_width, intensity.width());
    const int sh = std::min(cam.sensor_height, intensity.height());
    RealGrid cropped(sw, sh);
    const int x0 = (intensity.width() - sw) / 2;
    const int y0 = (intensity.height() - sh) / 2;
    parallel_rows(sh, [&](int y) {
      for (int x = 0; x < sw; ++x) cropped(x, y) = intensity(x0 + x, y0 + y);
    });
    return cropped;
  }
  return intensity;
}

double sharpness_laplacian(const RealGrid& image, int x0, int y0, int width, int height) {
  const int xa = std::max(x0, 1);
  const int ya = std::max(y0, 1);
  const int xb = std::min(x0 + width, image.width() - 1);
  const int yb = std::min(y0 + height, image.height() - 1);
  if (xb <= xa || yb <= ya) throw data_error("sharpness_laplacian: empty box");
  const double total = sum_over_rows(yb - ya, [&](int i) {
    const int y = ya + i;
    double acc = 0.0;
    for (int x = xa; x < xb; ++x) {
      const double lap = image(x + 1, y) + image(x - 1, y) + image(x, y + 1) +
                         image(x, y - 1) - 4.0 * image(x, y);
      acc += lap * lap;
    }
    return acc;
  });
  return total / (static_cast<double>(xb - xa) * (yb - ya));
}

}  // namespace omni
