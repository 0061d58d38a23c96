#include "omni/wgs.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "omni/parallel.hpp"

namespace omni {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOverlapFloor = 1e-15;

void check_targets(const std::vector<PhaseMap>& targets) {
  if (targets.empty()) throw data_error("wgs: no targets");
  for (const auto& t : targets)
    if (!t.values.same_shape(targets.front().values))
      throw data_error("wgs: target dimension mismatch");
}

ComplexGrid to_phasor(const PhaseMap& map) {
  ComplexGrid out(map.values.width(), map.values.height());
  parallel_rows(map.values.height(), [&](int y) {
    const double* src = map.values.row(y);
    std::complex<double>* dst = out.row(y);
    for (int x = 0; x < map.values.width(); ++x)
      dst[x] = std::complex<double>(std::cos(src[x]), std::sin(src[x]));
  });
  return out;
}

std::complex<double> overlap_phasors(const ComplexGrid& est, const ComplexGrid& target) {
  const int w = est.width();
  const auto total = csum_over_rows(est.height(), [&](int y) {
    const std::complex<double>* e = est.row(y);
    const std::complex<double>* t = target.row(y);
    double re = 0.0, im = 0.0;
    for (int x = 0; x < w; ++x) {
      // e * conj(t)
      re += e[x].real() * t[x].real() + e[x].imag() * t[x].imag();
      im += e[x].imag() * t[x].real() - e[x].real() * t[x].imag();
    }
    return std::complex<double>(re, im);
  });
  return total / static_cast<double>(est.size());
}

}  // namespace

std::complex<double> overlap(const PhaseMap& est, const PhaseMap& target) {
  if (!est.values.same_shape(target.values))
    throw data_error("overlap: dimension mismatch");
  const int w = est.values.width();
  const auto total = csum_over_rows(est.values.height(), [&](int y) {
    const double* e = est.values.row(y);
    const double* t = target.values.row(y);
    double re = 0.0, im = 0.0;
    for (int x = 0; x < w; ++x) {
      const double d = e[x] - t[x];
      re += std::cos(d);
      im += std::sin(d);
    }
    return std::complex<double>(re, im);
  });
  return total / static_cast<double>(est.values.size());
}

double merit(const PhaseMap& est, const std::vector<PhaseMap>& targets) {
  check_targets(targets);
  double t = 0.0;
  for (const auto& target : targets) t += std::abs(overlap(est, target));
  return t;
}

OverlapSet compute_overlaps(const PhaseMap& est, const std::vector<PhaseMap>& targets) {
  check_targets(targets);
  OverlapSet set;
  set.values.reserve(targets.size());
  for (const auto& target : targets) {
    const auto v = overlap(est, target);
    set.values.push_back(v);
    set.merit += std::abs(v);
  }
  return set;
}

WgsResult wgs_optimize(const std::vector<PhaseMap>& targets, const WgsParams& params) {
  check_targets(targets);
  if (params.max_iters < 1) throw config_error("wgs: max_iters must be >= 1");
  if (params.tolerance < 0.0) throw config_error("wgs: tolerance must be >= 0");

  const int w = targets.front().values.width();
  const int h = targets.front().values.height();
  const std::size_t pixels = targets.front().values.size();
  const std::size_t n_targets = targets.size();

  std::vector<ComplexGrid> phasors;
  phasors.reserve(n_targets);
  for (const auto& t : targets) phasors.push_back(to_phasor(t));

  // Initial estimate.
  PhaseMap est;
  est.pitch = targets.front().pitch;
  est.values = RealGrid(w, h);
  if (params.init == WgsInit::kRandom) {
    // Explicit 53-bit mapping keeps the stream portable across libraries.
    std::mt19937_64 gen(params.seed);
    double* data = est.values.data();
    for (std::size_t i = 0; i < pixels; ++i)
      data[i] = kTwoPi * static_cast<double>(gen() >> 11) * 0x1.0p-53;
  } else {
    parallel_rows(h, [&](int y) {
      double* dst = est.values.row(y);
      for (int x = 0; x < w; ++x) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& p : phasors) acc += p(x, y);
        dst[x] = std::atan2(acc.imag(), acc.real());
      }
    });
  }

  std::vector<double> weights(n_targets, 1.0);
  WgsResult result;
  result.trace.target_count = static_cast<int>(n_targets);
  PhaseMap best = est;
  double best_merit = -1.0;
  int best_iteration = 0;

  ComplexGrid est_phasor(w, h);
  for (int iter = 1; iter <= params.max_iters; ++iter) {
    parallel_rows(h, [&](int y) {
      const double* src = est.values.row(y);
      std::complex<double>* dst = est_phasor.row(y);
      for (int x = 0; x < w; ++x)
        dst[x] = std::complex<double>(std::cos(src[x]), std::sin(src[x]));
    });

    std::vector<std::complex<double>> overlaps(n_targets);
    std::vector<double> mags(n_targets);
    double merit_now = 0.0;
    for (std::size_t i = 0; i < n_targets; ++i) {
      overlaps[i] = overlap_phasors(est_phasor, phasors[i]);
      mags[i] = std::abs(overlaps[i]);
      merit_now += mags[i];
    }

    WgsTrace::Row row;
    row.iteration = iter;
    row.merit = merit_now;
    row.overlap_mags = mags;
    row.weights = weights;
    result.trace.rows.push_back(std::move(row));

    const double prev_best = best_merit;
    if (merit_now > best_merit) {
      best_merit = merit_now;
      best = est;
      best_iteration = iter;
    }
    if (iter > 1 && params.tolerance > 0.0 && best_merit - prev_best < params.tolerance) break;
    if (iter == params.max_iters) break;

    // Uniformity-driven weight update (w <- w * mean|V| / |V|), with a
    // fallback to the mean weight when an overlap collapses.
    double mean_mag = 0.0;
    for (double m : mags) mean_mag += m;
    mean_mag /= static_cast<double>(n_targets);
    double mean_weight = 0.0;
    for (double wt : weights) mean_weight += wt;
    mean_weight /= static_cast<double>(n_targets);
    for (std::size_t i = 0; i < n_targets; ++i) {
      if (mags[i] < kOverlapFloor)
        weights[i] = mean_weight;
      else
        weights[i] *= mean_mag / mags[i];
    }
    double new_mean = 0.0;
    for (double wt : weights) new_mean += wt;
    new_mean /= static_cast<double>(n_targets);
    for (double& wt : weights) wt /= new_mean;

    // Recompose: each target re-phased by its current overlap phase.
    std::vector<std::complex<double>> coeff(n_targets);
    for (std::size_t i = 0; i < n_targets; ++i) {
      const double gamma = (mags[i] < kOverlapFloor) ? 0.0 : std::arg(overlaps[i]);
      coeff[i] = std::polar(weights[i], gamma);
    }
    parallel_rows(h, [&](int y) {
      double* dst = est.values.row(y);
      for (int x = 0; x < w; ++x) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = 0; i < n_targets; ++i) acc += coeff[i] * phasors[i](x, y);
        dst[x] = std::atan2(acc.imag(), acc.real());
      }
    });
  }

  result.phase = std::move(best);
  result.merit = best_merit;
  result.best_iteration = best_iteration;
  return result;
}

std::string WgsTrace::to_csv() const {
  std::string out = "iteration,T";
  char buf[64];
  for (int i = 1; i <= target_count; ++i) {
    std::snprintf(buf, sizeof buf, ",absV_%d", i);
    out += buf;
  }
  for (int i = 1; i <= target_count; ++i) {
    std::snprintf(buf, sizeof buf, ",w_%d", i);
    out += buf;
  }
  out += '\n';
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%d", row.iteration);
    out += buf;
    std::snprintf(buf, sizeof buf, ",%.17g", row.merit);
    out += buf;
    for (double v : row.overlap_mags) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    }
    for (double v : row.weights) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace omni
