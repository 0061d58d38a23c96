#include "omni/mtf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "omni/fft.hpp"

namespace omni {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOversample = 4;

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::string ContrastCurve::to_csv(const std::string& abscissa_name) const {
  std::string out = abscissa_name + ",contrast\n";
  char buf[80];
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", abscissa[i], contrast[i]);
    out += buf;
  }
  return out;
}

std::size_t ContrastCurve::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < contrast.size(); ++i)
    if (contrast[i] > contrast[best]) best = i;
  return best;
}

bool ContrastCurve::non_increasing(double slack_fraction) const {
  for (std::size_t i = 1; i < contrast.size(); ++i)
    if (contrast[i] > contrast[i - 1] * (1.0 + slack_fraction)) return false;
  return true;
}

bool ContrastCurve::unimodal() const {
  if (contrast.size() < 3) return true;
  const std::size_t peak = argmax();
  for (std::size_t i = 1; i <= peak; ++i)
    if (contrast[i] < contrast[i - 1]) return false;
  for (std::size_t i = peak + 1; i < contrast.size(); ++i)
    if (contrast[i] > contrast[i - 1]) return false;
  return true;
}

RealGrid make_slanted_edge(int width, int height, double angle_deg, double low, double high) {
  RealGrid img(width, height);
  const double theta = angle_deg * kPi / 180.0;
  const double tan_t = std::tan(theta);
  const double cos_t = std::cos(theta);
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double s = (x - cx - (y - cy) * tan_t) * cos_t;  // px from the edge
      const double coverage = std::clamp(0.5 + s, 0.0, 1.0);
      img(x, y) = low + (high - low) * coverage;
    }
  }
  return img;
}

MtfCurve slanted_edge_mtf(const RealGrid& region, double pitch_mm) {
  const int w = region.width();
  const int h = region.height();
  if (w < 16 || h < 16) throw data_error("slanted_edge_mtf: region too small");
  if (!(pitch_mm > 0.0)) throw data_error("slanted_edge_mtf: non-positive pitch");

  // Per-row edge position from the centroid of the squared derivative.
  std::vector<double> row_centroid(h, 0.0);
  std::vector<double> row_peak(h, 0.0);
  double global_peak = 0.0;
  for (int y = 0; y < h; ++y) {
    double wsum = 0.0, xsum = 0.0, peak = 0.0;
    for (int x = 1; x < w - 1; ++x) {
      const double d = 0.5 * (region(x + 1, y) - region(x - 1, y));
      const double wt = d * d;
      wsum += wt;
      xsum += wt * x;
      peak = std::max(peak, std::abs(d));
    }
    row_centroid[y] = (wsum > 0.0) ? xsum / wsum : -1.0;
    row_peak[y] = peak;
    global_peak = std::max(global_peak, peak);
  }
  if (global_peak <= 0.0) throw data_error("slanted_edge_mtf: no edge detected");

  int valid = 0;
  double sy = 0, syy = 0, sx = 0, sxy = 0;
  for (int y = 0; y < h; ++y) {
    if (row_peak[y] < 0.2 * global_peak || row_centroid[y] < 0.0) continue;
    ++valid;
    sy += y;
    syy += static_cast<double>(y) * y;
    sx += row_centroid[y];
    sxy += row_centroid[y] * y;
  }
  if (valid < std::max(8, h / 2)) throw data_error("slanted_edge_mtf: no edge detected");

  const double denom = valid * syy - sy * sy;
  if (std::abs(denom) < 1e-12) throw data_error("slanted_edge_mtf: degenerate edge fit");
  const double slope = (valid * sxy - sy * sx) / denom;  // px of x per px of y
  const double intercept = (sx - slope * sy) / valid;

  // Residual check: a single straight edge should fit tightly.
  double rss = 0.0;
  for (int y = 0; y < h; ++y) {
    if (row_peak[y] < 0.2 * global_peak || row_centroid[y] < 0.0) continue;
    const double r = row_centroid[y] - (intercept + slope * y);
    rss += r * r;
  }
  if (std::sqrt(rss / valid) > 2.0)
    throw data_error("slanted_edge_mtf: region does not contain a single straight edge");

  const double tilt_deg = std::abs(std::atan(slope)) * 180.0 / kPi;
  if (tilt_deg < 2.0 || tilt_deg > 10.0) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "slanted_edge_mtf: edge tilt %.2f deg outside [2, 10]",
                  tilt_deg);
    throw data_error(msg);
  }
  const double cos_t = std::cos(std::atan(slope));

  // Project every pixel onto the edge normal, binned at 4x oversampling.
  double s_min = 1e300, s_max = -1e300;
  for (int y = 0; y < h; ++y) {
    const double edge_x = intercept + slope * y;
    s_min = std::min(s_min, (0 - edge_x) * cos_t);
    s_max = std::max(s_max, (w - 1 - edge_x) * cos_t);
  }
  const int nbins = static_cast<int>(std::ceil((s_max - s_min) * kOversample)) + 1;
  std::vector<double> esf_sum(nbins, 0.0);
  std::vector<int> esf_count(nbins, 0);
  for (int y = 0; y < h; ++y) {
    const double edge_x = intercept + slope * y;
    for (int x = 0; x < w; ++x) {
      const double s = (x - edge_x) * cos_t;
      int bin = static_cast<int>(std::floor((s - s_min) * kOversample));
      bin = std::clamp(bin, 0, nbins - 1);
      esf_sum[bin] += region(x, y);
      ++esf_count[bin];
    }
  }
  std::vector<double> esf(nbins, 0.0);
  int last_filled = -1;
  for (int k = 0; k < nbins; ++k) {
    if (esf_count[k] > 0) {
      esf[k] = esf_sum[k] / esf_count[k];
      if (last_filled >= 0 && last_filled < k - 1) {
        // Fill the gap linearly.
        for (int g = last_filled + 1; g < k; ++g) {
          const double t = static_cast<double>(g - last_filled) / (k - last_filled);
          esf[g] = esf[last_filled] * (1.0 - t) + esf[k] * t;
        }
      }
      last_filled = k;
    }
  }
  if (last_filled < 0) throw data_error("slanted_edge_mtf: empty projection");

  // Line-spread function by central differences.
  const int nlsf = nbins - 2;
  if (nlsf < 16) throw data_error("slanted_edge_mtf: projection too short");
  std::vector<double> lsf(nlsf);
  for (int k = 0; k < nlsf; ++k) lsf[k] = 0.5 * (esf[k + 2] - esf[k]);

  // Center a Hann window on the LSF centroid.
  double msum = 0.0, csum = 0.0;
  for (int k = 0; k < nlsf; ++k) {
    const double m = std::abs(lsf[k]);
    msum += m;
    csum += m * k;
  }
  if (msum <= 0.0) throw data_error("slanted_edge_mtf: flat projection");
  const double center = csum / msum;
  const int half = static_cast<int>(
      std::min(center, static_cast<double>(nlsf - 1) - center));
  if (half < 8) throw data_error("slanted_edge_mtf: edge too close to the region border");
  const int k0 = static_cast<int>(std::lround(center)) - half;
  const int span = 2 * half + 1;

  const int nfft = next_pow2(std::max(4096, 2 * span));
  AlignedComplexBuffer spec(static_cast<std::size_t>(nfft));
  spec.zero();
  for (int k = 0; k < span; ++k) {
    const double t = (k - half) / static_cast<double>(span);  // [-0.5, 0.5]
    const double window = 0.5 * (1.0 + std::cos(2.0 * kPi * t));
    spec.data()[k] = lsf[k0 + k] * window;
  }
  fft1d_forward(spec.data(), nfft);

  const double bin_mm = pitch_mm / kOversample;
  const double dc = std::abs(spec.data()[0]);
  if (dc <= 0.0) throw data_error("slanted_edge_mtf: zero DC response");
  const double nyquist = 1.0 / (2.0 * pitch_mm);

  MtfCurve curve;
  for (int k = 0; k < nfft / 2; ++k) {
    const double f = k / (nfft * bin_mm);
    if (f > nyquist) break;
    double m = std::abs(spec.data()[k]) / dc;
    if (k > 0) {
      // Compensate the central-difference derivative response.
      const double a = 2.0 * kPi * f * bin_mm;
      m *= a / std::sin(a);
    }
    curve.frequency.push_back(f);
    curve.modulation.push_back(m);
  }
  curve.modulation[0] = 1.0;
  return curve;
}

double contrast_at(const MtfCurve& curve, double frequency_lpmm) {
  if (curve.frequency.empty()) throw data_error("contrast_at: empty curve");
  if (frequency_lpmm < curve.frequency.front() || frequency_lpmm > curve.frequency.back())
    throw data_error("contrast_at: frequency outside the curve range");
  const auto it =
      std::lower_bound(curve.frequency.begin(), curve.frequency.end(), frequency_lpmm);
  const std::size_t hi = static_cast<std::size_t>(it - curve.frequency.begin());
  if (hi == 0 || curve.frequency[hi] == frequency_lpmm) return curve.modulation[hi];
  const std::size_t lo = hi - 1;
  const double t =
      (frequency_lpmm - curve.frequency[lo]) / (curve.frequency[hi] - curve.frequency[lo]);
  return curve.modulation[lo] * (1.0 - t) + curve.modulation[hi] * t;
}

}  // namespace omni
