#include "nagumo/atlas.hpp"

#include <algorithm>
#include <cmath>

#include "nagumo/error.hpp"

namespace nagumo {

const char* to_string(RegionStatus s) {
  switch (s) {
    case RegionStatus::FoldDetected: return "FOLD_DETECTED";
    case RegionStatus::CapReached: return "CAP_REACHED";
    case RegionStatus::Failed: return "FAILED";
  }
  return "?";
}

SweepConfig SweepConfig::uniform(double a_min, double a_max, int points) {
  if (points < 1) throw Error(ErrorCode::BadParams, "grid needs at least one point");
  SweepConfig config;
  config.a_grid.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    config.a_grid.push_back(a_min);
  } else {
    const double h = (a_max - a_min) / (points - 1);
    for (int i = 0; i < points; ++i) config.a_grid.push_back(a_min + i * h);
    config.a_grid.back() = a_max;
  }
  return config;
}

SweepConfig SweepConfig::defaults() { return uniform(0.025, 0.975, 41); }

void SweepConfig::validate() const {
  if (a_grid.empty()) throw Error(ErrorCode::BadParams, "empty a grid");
  for (std::size_t i = 0; i < a_grid.size(); ++i) {
    if (!(a_grid[i] > 0.0 && a_grid[i] < 1.0))
      throw Error(ErrorCode::BadParams, "grid value a = " + std::to_string(a_grid[i]) +
                                            " outside (0, 1)");
    if (i > 0 && !(a_grid[i] > a_grid[i - 1]))
      throw Error(ErrorCode::BadParams, "a grid must be strictly increasing");
  }
  if (!(d_cap > 0.0)) throw Error(ErrorCode::BadParams, "d_cap must be positive");
  if (!(bisect_tol > 0.0)) throw Error(ErrorCode::BadParams, "bisect_tol must be positive");
}

RegionSample max_continuable_d(const Word& word, double a, double d_cap,
                               double bisect_tol, const StepPolicy& policy) {
  if (!(d_cap > 0.0) || !(bisect_tol > 0.0))
    throw Error(ErrorCode::BadParams, "d_cap and bisect_tol must be positive");

  RegionSample sample;
  sample.word = word;
  sample.a = a;

  const BranchTrace trace = continue_branch(word, a, d_cap, policy);
  if (trace.reached()) {
    sample.status = RegionStatus::CapReached;
    sample.d_star = d_cap;
    return sample;
  }

  const auto reaches = [&](double d) {
    return continue_branch(word, a, d, policy).reached();
  };

  // The trace already certifies everything up to its last point. Find a
  // failing probe above it, widening if the first stop was premature.
  double lo = trace.last().d;
  double offset = bisect_tol;
  double hi = std::min(lo + offset, d_cap);
  while (reaches(hi)) {
    lo = hi;
    if (hi >= d_cap) {
      sample.status = RegionStatus::CapReached;
      sample.d_star = d_cap;
      return sample;
    }
    offset *= 2.0;
    hi = std::min(lo + offset, d_cap);
  }

  while (hi - lo > bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    (reaches(mid) ? lo : hi) = mid;
  }
  sample.status = RegionStatus::FoldDetected;
  sample.d_star = lo;
  sample.refinement = hi - lo;
  return sample;
}

std::vector<RegionSample> region_sweep(
    const Word& word, const SweepConfig& config,
    const std::function<void(const RegionSample&)>& on_sample) {
  config.validate();
  std::vector<RegionSample> samples;
  samples.reserve(config.a_grid.size());
  for (double a : config.a_grid) {
    RegionSample sample;
    try {
      sample = max_continuable_d(word, a, config.d_cap, config.bisect_tol, config.policy);
    } catch (const Error& e) {
      sample.word = word;
      sample.a = a;
      sample.status = RegionStatus::Failed;
      sample.error = e.what();
    }
    if (on_sample) on_sample(sample);
    samples.push_back(std::move(sample));
  }
  return samples;
}

}  // namespace nagumo
