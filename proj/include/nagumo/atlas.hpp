#pragma once

// Existence regions of solution types over the (a, d) half-strip, sampled as
// the largest d reachable by continuation from d = 0 at fixed a.

#include <functional>
#include <string>
#include <vector>

#include "nagumo/equilibria.hpp"
#include "nagumo/lexicon.hpp"

namespace nagumo {

enum class RegionStatus { FoldDetected, CapReached, Failed };

const char* to_string(RegionStatus s);

struct RegionSample {
  Word word;
  double a = 0;
  double d_star = 0;
  RegionStatus status = RegionStatus::CapReached;
  double refinement = 0;  // final bracket width
  std::string error;      // set when status == Failed
};

struct SweepConfig {
  std::vector<double> a_grid;
  double d_cap = 2.0;
  double bisect_tol = 1e-5;
  StepPolicy policy{};

  /// `points` uniform values in [a_min, a_max].
  static SweepConfig uniform(double a_min, double a_max, int points);
  /// 41 points in [0.025, 0.975], cap 2, tolerance 1e-5.
  static SweepConfig defaults();

  /// Throws Error(BadParams).
  void validate() const;
};

/// Bisects the end of the branch of `word` at fixed a. Every probe is a fresh
/// continuation from d = 0.
RegionSample max_continuable_d(const Word& word, double a, double d_cap,
                               double bisect_tol, const StepPolicy& policy = {});

/// One sample per grid point, in grid order. Per-point errors are stored in
/// the sample. `on_sample`, if set, is called as each sample completes.
std::vector<RegionSample> region_sweep(
    const Word& word, const SweepConfig& config,
    const std::function<void(const RegionSample&)>& on_sample = {});

}  // namespace nagumo
