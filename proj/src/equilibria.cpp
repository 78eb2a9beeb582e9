#include "nagumo/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace nagumo {

void validate(const Params& p) {
  if (!(p.a > 0.0 && p.a < 1.0))
    throw Error(ErrorCode::BadParams, "detuning a must lie in (0, 1), got " +
                                          std::to_string(p.a));
  if (!(p.d >= 0.0) || !std::isfinite(p.d))
    throw Error(ErrorCode::BadParams,
                "diffusion d must be finite and >= 0, got " + std::to_string(p.d));
  if (p.n < 1) throw Error(ErrorCode::BadParams, "period n must be >= 1");
}

Eigen::VectorXd root_state(const Word& w, double a) {
  Eigen::VectorXd u(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    switch (w.letters()[i]) {
      case Letter::Zero: u(static_cast<Eigen::Index>(i)) = 0.0; break;
      case Letter::A: u(static_cast<Eigen::Index>(i)) = a; break;
      case Letter::One: u(static_cast<Eigen::Index>(i)) = 1.0; break;
    }
  }
  return u;
}

const char* to_string(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::Converged: return "CONVERGED";
    case NewtonStatus::SingularJacobian: return "SINGULAR_JACOBIAN";
    case NewtonStatus::NoConvergence: return "NO_CONVERGENCE";
  }
  return "?";
}

const char* to_string(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::ReachedTarget: return "REACHED_TARGET";
    case TerminalStatus::FoldDetected: return "FOLD_DETECTED";
    case TerminalStatus::StepUnderflow: return "STEP_UNDERFLOW";
  }
  return "?";
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "STABLE";
    case Stability::Unstable: return "UNSTABLE";
    case Stability::Marginal: return "MARGINAL";
  }
  return "?";
}

const char* to_string(Order o) {
  switch (o) {
    case Order::StrictlyBelow: return "STRICTLY_BELOW";
    case Order::StrictlyAbove: return "STRICTLY_ABOVE";
    case Order::Equal: return "EQUAL";
    case Order::Incomparable: return "INCOMPARABLE";
  }
  return "?";
}

NewtonResult newton_solve(const Eigen::VectorXd& guess, const Params& p,
                          const NewtonOptions& options) {
  NewtonResult result;
  result.state = guess;
  Eigen::VectorXd f = vector_field(result.state, p);
  result.residual = f.lpNorm<Eigen::Infinity>();

  while (result.residual > options.tol) {
    if (result.iterations >= options.max_iter || !std::isfinite(result.residual)) {
      result.status = NewtonStatus::NoConvergence;
      return result;
    }
    ++result.iterations;

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(jacobian(result.state, p));
    const double rcond = lu.rcond();
    if (!(rcond * options.max_inverse_condition > 1.0)) {
      result.status = NewtonStatus::SingularJacobian;
      return result;
    }
    const Eigen::VectorXd step = lu.solve(-f);

    double damping = 1.0;
    bool improved = false;
    while (damping >= options.min_damping) {
      Eigen::VectorXd trial = result.state + damping * step;
      Eigen::VectorXd f_trial = vector_field(trial, p);
      const double r = f_trial.lpNorm<Eigen::Infinity>();
      if (r < result.residual) {
        result.state = std::move(trial);
        f = std::move(f_trial);
        result.residual = r;
        improved = true;
        break;
      }
      damping *= 0.5;
    }
    if (!improved) {
      result.status = NewtonStatus::NoConvergence;
      return result;
    }
  }
  result.status = NewtonStatus::Converged;
  return result;
}

SpectralInfo classify_stability(const Eigen::VectorXd& state, const Params& p,
                                double margin) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      jacobian(state, p), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::EigenFailure, "symmetric eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  SpectralInfo info;
  info.spectral_bound = ev(ev.size() - 1);
  info.smallest_singular = ev.cwiseAbs().minCoeff();
  info.unstable_dimension = static_cast<int>((ev.array() > 0.0).count());
  if (info.spectral_bound < -margin)
    info.verdict = Stability::Stable;
  else if (info.spectral_bound > margin)
    info.verdict = Stability::Unstable;
  else
    info.verdict = Stability::Marginal;
  return info;
}

namespace {

// Index maps of the rotations and reflections that move the word. The branch
// of w carries exactly the symmetries of w, so its state must stay away from
// its image under every map listed here.
std::vector<std::vector<Eigen::Index>> moving_symmetries(const Word& w) {
  const auto n = static_cast<long long>(w.size());
  std::vector<std::vector<Eigen::Index>> maps;
  const Word r = reflect(w);
  for (long long l = 0; l < n; ++l) {
    if (l != 0 && rotate(w, l) != w) {
      std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
      for (long long i = 1; i <= n; ++i) idx[i - 1] = mod1(i + l, n) - 1;
      maps.push_back(std::move(idx));
    }
    if (rotate(r, l) != w) {
      std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
      for (long long i = 1; i <= n; ++i) idx[i - 1] = mod1(1 - i - l, n) - 1;
      maps.push_back(std::move(idx));
    }
  }
  return maps;
}

bool meets_symmetric_partner(const Eigen::VectorXd& u,
                             const std::vector<std::vector<Eigen::Index>>& maps,
                             double tol) {
  for (const auto& idx : maps) {
    double dist = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i)
      dist = std::max(dist, std::abs(u(idx[static_cast<std::size_t>(i)]) - u(i)));
    if (dist < tol) return true;
  }
  return false;
}

}  // namespace

BranchTrace continue_branch(const Word& word, double a, double d_target,
                            const StepPolicy& policy) {
  if (word.empty()) throw Error(ErrorCode::BadParams, "empty word");
  const auto n = static_cast<Eigen::Index>(word.size());
  validate(Params{a, 0.0, n});
  if (!(d_target >= 0.0) || !std::isfinite(d_target))
    throw Error(ErrorCode::BadParams, "target d must be finite and >= 0");

  BranchTrace trace;
  trace.word = word;
  trace.a = a;
  trace.points.push_back({0.0, root_state(word, a)});

  double d = 0.0;
  double step = policy.initial_step;
  int streak = 0;
  bool failed_since_accept = false;
  const auto symmetries = moving_symmetries(word);
  SpectralInfo last_spectrum =
      classify_stability(trace.points.back().state, Params{a, 0.0, n});

  while (d < d_target) {
    const double remaining = d_target - d;
    const double h = std::min({step, policy.max_step, remaining});
    const double trial_d = h >= remaining ? d_target : d + h;
    const Params p{a, trial_d, n};

    const Eigen::VectorXd& previous = trace.points.back().state;
    NewtonResult corrected = newton_solve(previous, p, policy.newton);
    const bool accepted =
        corrected.converged() &&
        (corrected.state - previous).lpNorm<Eigen::Infinity>() <= policy.max_jump;

    if (accepted) {
      const SpectralInfo spectrum = classify_stability(corrected.state, p);
      if (spectrum.unstable_dimension != last_spectrum.unstable_dimension ||
          meets_symmetric_partner(corrected.state, symmetries, policy.collision_tol)) {
        trace.status = TerminalStatus::FoldDetected;
        return trace;
      }
      d = trial_d;
      trace.points.push_back({d, std::move(corrected.state)});
      last_spectrum = spectrum;
      if (spectrum.smallest_singular < policy.fold_tol) {
        trace.status = TerminalStatus::FoldDetected;
        return trace;
      }
      if (!failed_since_accept && ++streak >= policy.grow_after) {
        step *= 2.0;
        streak = 0;
      }
      failed_since_accept = false;
      continue;
    }

    streak = 0;
    failed_since_accept = true;
    step = std::min(step, h) * 0.5;
    if (step < policy.min_step) {
      trace.status = last_spectrum.smallest_singular < policy.fold_indicator
                         ? TerminalStatus::FoldDetected
                         : TerminalStatus::StepUnderflow;
      return trace;
    }
  }
  trace.status = TerminalStatus::ReachedTarget;
  return trace;
}

std::optional<Equilibrium> solve_word(const Word& word, double a, double d,
                                      const StepPolicy& policy,
                                      BranchTrace* trace_out) {
  BranchTrace trace = continue_branch(word, a, d, policy);
  std::optional<Equilibrium> eq;
  if (trace.reached()) {
    Equilibrium e;
    e.state = trace.last().state;
    e.params = Params{a, d, static_cast<Eigen::Index>(word.size())};
    e.word = word;
    e.residual = vector_field(e.state, e.params).lpNorm<Eigen::Infinity>();
    const SpectralInfo info = classify_stability(e.state, e.params);
    e.stability = info.verdict;
    e.spectral_bound = info.spectral_bound;
    eq = std::move(e);
  }
  if (trace_out) *trace_out = std::move(trace);
  return eq;
}

std::size_t BranchCensus::stable_count() const {
  return static_cast<std::size_t>(
      std::count_if(equilibria.begin(), equilibria.end(), [](const Equilibrium& e) {
        return e.stability == Stability::Stable;
      }));
}

BranchCensus solve_words(const std::vector<Word>& words, double a, double d,
                         const StepPolicy& policy) {
  BranchCensus census;
  for (const Word& w : words) {
    BranchTrace trace;
    auto eq = solve_word(w, a, d, policy, &trace);
    if (eq)
      census.equilibria.push_back(std::move(*eq));
    else
      census.failures.push_back({w, trace.status, trace.last().d});
  }
  const auto& eqs = census.equilibria;
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (std::size_t j = i + 1; j < eqs.size(); ++j)
      if ((eqs[i].state - eqs[j].state).lpNorm<Eigen::Infinity>() < kSeparationTol)
        census.collisions.emplace_back(eqs[i].word, eqs[j].word);
  return census;
}

BranchCensus all_branches(std::size_t n, double a, double d, const StepPolicy& policy) {
  return solve_words(all_words(n, Alphabet::Full), a, d, policy);
}

bool word_leq(const Word& lhs, const Word& rhs) {
  if (lhs.size() != rhs.size())
    throw Error(ErrorCode::DimensionMismatch, "words differ in length: " + lhs.str() +
                                                  " vs " + rhs.str());
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (lhs.letters()[i] > rhs.letters()[i]) return false;
  return true;
}

Order compare_equilibria(const Equilibrium& lhs, const Equilibrium& rhs, double tol) {
  if (!(lhs.params == rhs.params))
    throw Error(ErrorCode::ParamMismatch,
                "equilibria " + lhs.word.str() + " and " + rhs.word.str() +
                    " were solved at different parameters");
  const Eigen::VectorXd diff = rhs.state - lhs.state;
  if ((diff.array() > tol).all()) return Order::StrictlyBelow;
  if ((diff.array() < -tol).all()) return Order::StrictlyAbove;
  if ((diff.array().abs() <= tol).all()) return Order::Equal;
  return Order::Incomparable;
}

StablePoset stable_poset(std::size_t n, double a, double d, Symmetry symmetry,
                         const StepPolicy& policy) {
  const auto classes = enumerate_classes(n, Alphabet::Stable, symmetry, false);
  const BranchCensus census = solve_words(all_words(n, Alphabet::Stable), a, d, policy);
  if (!census.failures.empty()) {
    const auto& f = census.failures.front();
    throw Error(ErrorCode::NoConvergence,
                "stable branch " + f.word.str() + " stopped at d = " +
                    std::to_string(f.d_reached) + " (" + to_string(f.status) + ")");
  }
  std::map<Word, const Equilibrium*> solved;
  for (const auto& e : census.equilibria) solved[e.word] = &e;

  const std::size_t m = classes.size();
  StablePoset poset;
  for (const auto& c : classes) poset.nodes.push_back(c.representative);

  // below[i][j] holds the best margin of a verified pair witnessing i < j.
  std::vector<std::vector<std::optional<double>>> below(
      m, std::vector<std::optional<double>>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      for (const Word& wa : classes[i].members) {
        for (const Word& wb : classes[j].members) {
          if (!word_leq(wa, wb)) continue;
          const Equilibrium& ea = *solved.at(wa);
          const Equilibrium& eb = *solved.at(wb);
          if (compare_equilibria(ea, eb) != Order::StrictlyBelow) continue;
          const double margin = (eb.state - ea.state).minCoeff();
          if (!below[i][j] || margin > *below[i][j]) below[i][j] = margin;
        }
      }
    }
  }

  // Transitive reduction. The relation strictly increases the number of
  // ones, so it is acyclic.
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) reach[i][j] = below[i][j].has_value();
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!below[i][j]) continue;
      bool implied = false;
      for (std::size_t k = 0; k < m && !implied; ++k)
        implied = k != i && k != j && reach[i][k] && reach[k][j];
      if (!implied)
        poset.edges.push_back({classes[i].representative, classes[j].representative,
                               *below[i][j]});
    }
  }
  std::sort(poset.edges.begin(), poset.edges.end(),
            [](const PosetEdge& x, const PosetEdge& y) {
              return std::tie(x.from, x.to) < std::tie(y.from, y.to);
            });
  return poset;
}

double lde_residual(const Equilibrium& eq, long long lo, long long hi) {
  const auto n = static_cast<long long>(eq.state.size());
  const auto u = [&](long long i) { return eq.state(mod1(i, n) - 1); };
  const double a = eq.params.a;
  const double d = eq.params.d;
  double worst = 0.0;
  for (long long i = lo; i <= hi; ++i) {
    const double r = d * (u(i - 1) - 2.0 * u(i) + u(i + 1)) + nonlinearity(u(i), a);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace nagumo
