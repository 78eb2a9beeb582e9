#pragma once

// Stationary solutions of the Nagumo system on the cycle graph C_n:
//
//   G_i(u; a, d) = d (u_{i-1} - 2 u_i + u_{i+1}) + g(u_i; a),
//   g(u; a)      = u (1 - u) (u - a),
//
// with indices taken cyclically. For n = 2 both neighbours of a vertex are
// the other vertex, giving the coupling 2d (u_j - u_i); for n = 1 the
// coupling vanishes.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "nagumo/error.hpp"
#include "nagumo/lexicon.hpp"

namespace nagumo {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
struct Parameters {
  Scalar a{0.5};
  Scalar d{0};
  Eigen::Index n{1};

  friend bool operator==(const Parameters&, const Parameters&) = default;
};

using Params = Parameters<double>;

/// Throws Error(BadParams) unless 0 < a < 1, d >= 0 and n >= 1.
void validate(const Params& p);

template <typename Scalar>
Scalar nonlinearity(Scalar u, Scalar a) {
  return u * (Scalar(1) - u) * (u - a);
}

/// dg/du.
template <typename Scalar>
Scalar nonlinearity_derivative(Scalar u, Scalar a) {
  return -Scalar(3) * u * u + Scalar(2) * (Scalar(1) + a) * u - a;
}

namespace detail {
inline void check_dimension(Eigen::Index size, Eigen::Index n) {
  if (size != n || n < 1)
    throw Error(ErrorCode::DimensionMismatch,
                "state has " + std::to_string(size) + " components, expected n = " +
                    std::to_string(n));
}
}  // namespace detail

template <typename Derived>
Vector<typename Derived::Scalar> vector_field(
    const Eigen::MatrixBase<Derived>& u,
    const Parameters<typename Derived::Scalar>& p) {
  using Scalar = typename Derived::Scalar;
  detail::check_dimension(u.size(), p.n);
  const Eigen::Index n = p.n;
  Vector<Scalar> out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar left = u((i + n - 1) % n);
    const Scalar right = u((i + 1) % n);
    out(i) = p.d * (left - Scalar(2) * u(i) + right) + nonlinearity(u(i), p.a);
  }
  return out;
}

/// Symmetric Jacobian of vector_field. Coupling entries are accumulated per
/// neighbour slot, so n = 2 gets 2d off the diagonal and n = 1 gets none.
template <typename Derived>
Matrix<typename Derived::Scalar> jacobian(
    const Eigen::MatrixBase<Derived>& u,
    const Parameters<typename Derived::Scalar>& p) {
  using Scalar = typename Derived::Scalar;
  detail::check_dimension(u.size(), p.n);
  const Eigen::Index n = p.n;
  Matrix<Scalar> J = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    J(i, i) += nonlinearity_derivative(u(i), p.a) - Scalar(2) * p.d;
    J(i, (i + n - 1) % n) += p.d;
    J(i, (i + 1) % n) += p.d;
  }
  return J;
}

/// The lattice point w_a in {0, a, 1}^n named by the word.
Eigen::VectorXd root_state(const Word& w, double a);

// ---------------------------------------------------------------------------
// Newton

struct NewtonOptions {
  double tol = 1e-12;           // max-norm residual
  int max_iter = 50;
  double min_damping = 0x1p-20;
  double max_inverse_condition = 1e12;
};

enum class NewtonStatus { Converged, SingularJacobian, NoConvergence };

const char* to_string(NewtonStatus s);

struct NewtonResult {
  Eigen::VectorXd state;
  double residual = 0;
  int iterations = 0;
  NewtonStatus status = NewtonStatus::NoConvergence;

  bool converged() const noexcept { return status == NewtonStatus::Converged; }
};

/// Damped Newton with LU factorization and step halving on the max-norm
/// residual. Never throws for numerical failure; inspect `status`.
NewtonResult newton_solve(const Eigen::VectorXd& guess, const Params& p,
                          const NewtonOptions& options = {});

// ---------------------------------------------------------------------------
// Continuation in d from d = 0

/// Max-norm distance below which two branches count as collided.
inline constexpr double kSeparationTol = 1e-6;

struct StepPolicy {
  double initial_step = 1e-3;
  double max_step = 0.05;
  double min_step = 1e-10;
  int grow_after = 3;  // consecutive first-try acceptances before doubling
  double fold_tol = 1e-8;
  // On step underflow, the smallest singular value at the last accepted point
  // below this marks the stop as a fold rather than a plain solver failure.
  double fold_indicator = 1e-3;
  // Corrector displacement above this is treated as a jump to another branch.
  double max_jump = 0.1;
  double collision_tol = kSeparationTol;
  NewtonOptions newton{};
};

enum class TerminalStatus { ReachedTarget, FoldDetected, StepUnderflow };

const char* to_string(TerminalStatus s);

struct BranchPoint {
  double d = 0;
  Eigen::VectorXd state;
};

struct BranchTrace {
  Word word;
  double a = 0;
  std::vector<BranchPoint> points;
  TerminalStatus status = TerminalStatus::ReachedTarget;

  const BranchPoint& last() const { return points.back(); }
  bool reached() const noexcept { return status == TerminalStatus::ReachedTarget; }
};

/// Tracks the branch emanating from w_a at d = 0 up to d_target or the first
/// collision with another branch, reported as FOLD_DETECTED with the last
/// point before the collision retained. Collisions are recognised by
///  - a near-singular Jacobian at an accepted point,
///  - a change in the number of positive eigenvalues between accepted points,
///  - the state coming within the separation tolerance of its image under a
///    rotation or reflection that does not fix the word (the branch met its
///    symmetric partner),
///  - step underflow next to a nearly singular Jacobian.
/// Step underflow elsewhere is STEP_UNDERFLOW. Throws Error(BadParams) for a
/// outside (0, 1) or a negative target.
BranchTrace continue_branch(const Word& word, double a, double d_target,
                            const StepPolicy& policy = {});

// ---------------------------------------------------------------------------
// Stability

enum class Stability { Stable, Unstable, Marginal };

const char* to_string(Stability s);

inline constexpr double kStabilityMargin = 1e-9;

struct SpectralInfo {
  Stability verdict = Stability::Marginal;
  double spectral_bound = 0;    // largest eigenvalue of the Jacobian
  double smallest_singular = 0; // smallest |eigenvalue|
  int unstable_dimension = 0;    // eigenvalues > 0
};

/// Eigenvalues of the symmetric Jacobian. Throws Error(EigenFailure).
SpectralInfo classify_stability(const Eigen::VectorXd& state, const Params& p,
                                double margin = kStabilityMargin);

struct Equilibrium {
  Eigen::VectorXd state;
  Params params;
  Word word;
  double residual = 0;
  Stability stability = Stability::Marginal;
  double spectral_bound = 0;
};

/// Continues `word` to d and classifies the endpoint. Empty when the branch
/// does not reach d; the trace is then available through `trace_out`.
std::optional<Equilibrium> solve_word(const Word& word, double a, double d,
                                      const StepPolicy& policy = {},
                                      BranchTrace* trace_out = nullptr);

struct BranchFailure {
  Word word;
  TerminalStatus status = TerminalStatus::FoldDetected;
  double d_reached = 0;
};

struct BranchCensus {
  std::vector<Equilibrium> equilibria;  // ordered by word
  std::vector<BranchFailure> failures;
  std::vector<std::pair<Word, Word>> collisions;  // closer than kSeparationTol

  std::size_t stable_count() const;
};

/// Solves every word in `words` at (a, d). Failures are collected, not thrown.
BranchCensus solve_words(const std::vector<Word>& words, double a, double d,
                         const StepPolicy& policy = {});

/// All 3^n branches at (a, d).
BranchCensus all_branches(std::size_t n, double a, double d,
                          const StepPolicy& policy = {});

// ---------------------------------------------------------------------------
// Ordering

/// Letter-wise 0 <= a <= 1 comparison. Throws Error(DimensionMismatch).
bool word_leq(const Word& lhs, const Word& rhs);

enum class Order { StrictlyBelow, StrictlyAbove, Equal, Incomparable };

const char* to_string(Order o);

inline constexpr double kOrderTol = 1e-10;

/// Component-wise comparison of solved states. Throws Error(ParamMismatch).
Order compare_equilibria(const Equilibrium& lhs, const Equilibrium& rhs,
                         double tol = kOrderTol);

struct PosetEdge {
  Word from;
  Word to;
  double margin = 0;  // min_i (u_to - u_from)_i over the witnessing pair
};

struct StablePoset {
  std::vector<Word> nodes;      // class representatives, sorted
  std::vector<PosetEdge> edges; // transitively reduced, sorted
};

/// Hasse diagram of the stable symmetry classes of period n.
StablePoset stable_poset(std::size_t n, double a, double d, Symmetry symmetry,
                         const StepPolicy& policy = {});

/// Max residual of the lattice equation for the periodic extension of the
/// state over indices lo..hi.
double lde_residual(const Equilibrium& eq, long long lo, long long hi);

}  // namespace nagumo
