#pragma once

// Time integration of du/dt = G(u; a, d) and empirical stability checks.

#include <Eigen/Dense>

#include <vector>

#include "nagumo/equilibria.hpp"
#include "nagumo/lexicon.hpp"

namespace nagumo {

struct Trajectory {
  Params params;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
};

/// Largest step accepted by `integrate`: 0.25 / (a(1-a) + 4d + 1).
double max_stable_step(const Params& p);

/// Classical RK4 with a uniform step h <= dt chosen so that t_end is hit
/// exactly. Stores t = 0, every `store_stride`-th step and the final step.
/// Throws Error(StepTooLarge) or Error(NonfiniteState).
Trajectory integrate(const Eigen::VectorXd& u0, const Params& p, double t_end,
                     double dt, int store_stride = 1);

/// Final state only; same checks as `integrate`.
Eigen::VectorXd integrate_final(const Eigen::VectorXd& u0, const Params& p,
                                double t_end, double dt);

struct SandwichReport {
  bool stable = false;
  bool departed = false;         // left the 0.25 ball or ended beyond 10 delta
  double upper_distance = 0;     // final max-norm distance, start u* + delta
  double lower_distance = 0;     // final max-norm distance, start u* - delta
  double max_excursion = 0;
  Eigen::VectorXd equilibrium;
};

struct SandwichOptions {
  double dt = 0.05;
  double departure_radius = 0.25;
  StepPolicy policy{};
};

/// Solves the equilibrium of `word` at p, then integrates from u* + delta
/// and u* - delta (constant shifts). Stable iff both end within tol of u*.
/// Throws Error(NoConvergence) when the branch cannot be continued to p.d.
SandwichReport verify_asymptotic_stability(const Word& word, const Params& p,
                                           double delta, double t_end, double tol,
                                           const SandwichOptions& options = {});

/// True iff the trajectories from u0_low <= u0_high stay ordered (up to 1e-8)
/// at every stored time.
bool monotonicity_check(const Eigen::VectorXd& u0_low, const Eigen::VectorXd& u0_high,
                        const Params& p, double t_end, double dt);

}  // namespace nagumo
