#include "nagumo/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "nagumo/error.hpp"

namespace nagumo {

namespace {

constexpr double kOrderSlack = 1e-8;

long long step_count(const Params& p, double t_end, double dt) {
  validate(p);
  if (!(dt > 0.0) || !(t_end >= dt))
    throw Error(ErrorCode::StepTooLarge, "need 0 < dt <= t_end");
  if (dt > max_stable_step(p))
    throw Error(ErrorCode::StepTooLarge, "dt = " + std::to_string(dt) +
                                             " exceeds the stability limit " +
                                             std::to_string(max_stable_step(p)));
  return static_cast<long long>(std::ceil(t_end / dt - 1e-9));
}

// Advances u by one classical RK4 step and checks for blow-up.
void rk4_step(Eigen::VectorXd& u, const Params& p, double h) {
  const Eigen::VectorXd k1 = vector_field(u, p);
  const Eigen::VectorXd k2 = vector_field((u + 0.5 * h * k1).eval(), p);
  const Eigen::VectorXd k3 = vector_field((u + 0.5 * h * k2).eval(), p);
  const Eigen::VectorXd k4 = vector_field((u + h * k3).eval(), p);
  u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!u.allFinite()) throw Error(ErrorCode::NonfiniteState, "state became non-finite");
}

}  // namespace

double max_stable_step(const Params& p) {
  return 0.25 / (p.a * (1.0 - p.a) + 4.0 * p.d + 1.0);
}

Trajectory integrate(const Eigen::VectorXd& u0, const Params& p, double t_end,
                     double dt, int store_stride) {
  detail::check_dimension(u0.size(), p.n);
  if (store_stride < 1) throw Error(ErrorCode::Domain, "store stride must be >= 1");
  const long long steps = step_count(p, t_end, dt);
  const double h = t_end / static_cast<double>(steps);

  Trajectory traj;
  traj.params = p;
  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  Eigen::VectorXd u = u0;
  for (long long s = 1; s <= steps; ++s) {
    rk4_step(u, p, h);
    if (s % store_stride == 0 || s == steps) {
      traj.times.push_back(s == steps ? t_end : static_cast<double>(s) * h);
      traj.states.push_back(u);
    }
  }
  return traj;
}

Eigen::VectorXd integrate_final(const Eigen::VectorXd& u0, const Params& p,
                                double t_end, double dt) {
  detail::check_dimension(u0.size(), p.n);
  const long long steps = step_count(p, t_end, dt);
  const double h = t_end / static_cast<double>(steps);
  Eigen::VectorXd u = u0;
  for (long long s = 0; s < steps; ++s) rk4_step(u, p, h);
  return u;
}

SandwichReport verify_asymptotic_stability(const Word& word, const Params& p,
                                           double delta, double t_end, double tol,
                                           const SandwichOptions& options) {
  validate(p);
  if (!(delta > 0.0)) throw Error(ErrorCode::Domain, "delta must be positive");
  BranchTrace trace;
  const auto eq = solve_word(word, p.a, p.d, options.policy, &trace);
  if (!eq)
    throw Error(ErrorCode::NoConvergence,
                "branch " + word.str() + " stopped at d = " +
                    std::to_string(trace.last().d) + " (" + to_string(trace.status) +
                    ") before a = " + std::to_string(p.a) + ", d = " + std::to_string(p.d));

  SandwichReport report;
  report.equilibrium = eq->state;
  const Eigen::VectorXd& star = eq->state;
  const double dt = std::min(options.dt, max_stable_step(p));
  const long long steps = step_count(p, t_end, dt);
  const double h = t_end / static_cast<double>(steps);

  const auto run = [&](double shift) {
    Eigen::VectorXd u = star.array() + shift;
    for (long long s = 0; s < steps; ++s) {
      rk4_step(u, p, h);
      const double dist = (u - star).lpNorm<Eigen::Infinity>();
      report.max_excursion = std::max(report.max_excursion, dist);
      if (dist > options.departure_radius) {
        report.departed = true;
        break;
      }
    }
    return (u - star).lpNorm<Eigen::Infinity>();
  };
  report.upper_distance = run(delta);
  report.lower_distance = run(-delta);
  if (std::max(report.upper_distance, report.lower_distance) > 10.0 * delta)
    report.departed = true;
  report.stable = !report.departed && report.upper_distance <= tol &&
                  report.lower_distance <= tol;
  return report;
}

bool monotonicity_check(const Eigen::VectorXd& u0_low, const Eigen::VectorXd& u0_high,
                        const Params& p, double t_end, double dt) {
  if (u0_low.size() != u0_high.size())
    throw Error(ErrorCode::DimensionMismatch, "initial states differ in size");
  if ((u0_low.array() > u0_high.array()).any())
    throw Error(ErrorCode::Domain, "initial states are not ordered");
  const Trajectory low = integrate(u0_low, p, t_end, dt);
  const Trajectory high = integrate(u0_high, p, t_end, dt);
  for (std::size_t i = 0; i < low.states.size(); ++i)
    if ((low.states[i].array() > high.states[i].array() + kOrderSlack).any())
      return false;
  return true;
}

}  // namespace nagumo
