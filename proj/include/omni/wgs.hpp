#ifndef OMNI_WGS_HPP
#define OMNI_WGS_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "omni/phase.hpp"

namespace omni {

// Per-target overlaps V_i between an estimate and the target profiles,
// with the merit T = sum_i |V_i|.
struct OverlapSet {
  std::vector<std::complex<double>> values;
  double merit = 0.0;
};

enum class WgsInit { kUniformSuperposition, kRandom };

struct WgsParams {
  int max_iters = 30;
  double tolerance = 0.0;   // stop when best-so-far merit improves by less
  std::uint64_t seed = 0;   // random initialization only
  WgsInit init = WgsInit::kUniformSuperposition;
};

// Per-iteration record: merit, per-target overlap magnitudes, and the
// weights that produced the evaluated estimate.
struct WgsTrace {
  struct Row {
    int iteration = 0;
    double merit = 0.0;
    std::vector<double> overlap_mags;
    std::vector<double> weights;
  };
  std::vector<Row> rows;
  int target_count = 0;

  std::string to_csv() const;
};

struct WgsResult {
  PhaseMap phase;     // best-so-far estimate, not the last iterate
  WgsTrace trace;
  double merit = 0.0;
  int best_iteration = 0;
};

// Normalized overlap V = (1/B) sum e^{j(phi_est - phi_target)}.
std::complex<double> overlap(const PhaseMap& est, const PhaseMap& target);

// T = sum_i |overlap(est, target_i)|.
double merit(const PhaseMap& est, const std::vector<PhaseMap>& targets);

OverlapSet compute_overlaps(const PhaseMap& est, const std::vector<PhaseMap>& targets);

// Weighted Gerchberg-Saxton: iteratively re-phase each target by its current
// overlap phase, recombine with uniformity-driven weights
// (w_i <- w_i * mean|V| / |V_i|), and keep the best iterate by merit.
WgsResult wgs_optimize(const std::vector<PhaseMap>& targets, const WgsParams& params);

}  // namespace omni

#endif
