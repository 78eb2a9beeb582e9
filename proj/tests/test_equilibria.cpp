#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "nagumo/equilibria.hpp"
#include "nagumo/error.hpp"
#include "oracles.hpp"

using namespace nagumo;

namespace {

Word W(const char* s) { return Word::parse(s); }

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Equilibrium solved(const char* word, double a, double d) {
  auto eq = solve_word(W(word), a, d);
  REQUIRE(eq.has_value());
  return *eq;
}

Eigen::VectorXd permuted(const Eigen::VectorXd& u, const Word& w, bool reflected, long long l) {
  // Same index maps the lexicon applies to words.
  const auto n = static_cast<long long>(u.size());
  Eigen::VectorXd out(u.size());
  for (long long i = 1; i <= n; ++i)
    out(i - 1) = reflected ? u(mod1(1 - i - l, n) - 1) : u(mod1(i + l, n) - 1);
  (void)w;
  return out;
}

}  // namespace

TEST_SUITE("equilibria") {

TEST_CASE("nonlinearity roots and slopes") {
  for (double a : {0.1, 0.37, 0.5, 0.9}) {
    CHECK(nonlinearity(0.0, a) == 0.0);
    CHECK(nonlinearity(1.0, a) == 0.0);
    CHECK(nonlinearity(a, a) == 0.0);
    CHECK(nonlinearity_derivative(0.0, a) == doctest::Approx(-a));
    CHECK(nonlinearity_derivative(1.0, a) == doctest::Approx(a - 1.0));
    CHECK(nonlinearity_derivative(a, a) == doctest::Approx(a * (1.0 - a)));
  }
  CHECK(nonlinearity(0.5, 0.5) == 0.0);
}

TEST_CASE("vector field: lattice points are zeros at d = 0") {
  for (const Word& w : all_words(4, Alphabet::Full)) {
    const Params p{0.3, 0.0, 4};
    CHECK(vector_field(root_state(w, 0.3), p).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("vector field: worked values") {
  const Eigen::VectorXd f2 = vector_field(vec({0.0, 1.0}), Params{0.5, 0.1, 2});
  CHECK(f2(0) == doctest::Approx(0.2));
  CHECK(f2(1) == doctest::Approx(-0.2));

  const Eigen::VectorXd f4 = vector_field(vec({0, 0, 0, 1}), Params{0.3, 0.05, 4});
  CHECK(f4(0) == doctest::Approx(0.05));
  CHECK(f4(1) == doctest::Approx(0.0));
  CHECK(f4(2) == doctest::Approx(0.05));
  CHECK(f4(3) == doctest::Approx(-0.1));

  // n = 1: coupling vanishes.
  CHECK(vector_field(vec({0.7}), Params{0.4, 3.0, 1})(0) == doctest::Approx(nonlinearity(0.7, 0.4)));

  CHECK_THROWS_AS(vector_field(vec({0, 1, 0}), Params{0.5, 0.1, 4}), Error);
}

TEST_CASE("vector field is minus the gradient of the lattice energy") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unit(-0.2, 1.2);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 7);
    Eigen::VectorXd u(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = unit(rng);
    const double a = 0.05 + 0.9 * std::uniform_real_distribution<double>()(rng);
    const double d = 0.5 * std::uniform_real_distribution<double>()(rng);
    const Eigen::VectorXd ref = oracle::potential_gradient_field(u, a, d);
    CHECK((vector_field(u, Params{a, d, n}) - ref).lpNorm<Eigen::Infinity>() < 1e-8);
  }
}

TEST_CASE("jacobian structure") {
  const Eigen::MatrixXd J = jacobian(vec({0, 0, 0}), Params{0.4, 0.1, 3});
  for (int i = 0; i < 3; ++i) CHECK(J(i, i) == doctest::Approx(-0.6));
  CHECK(J(0, 1) == doctest::Approx(0.1));
  CHECK(J(0, 2) == doctest::Approx(0.1));
  CHECK(J(2, 1) == doctest::Approx(0.1));

  const Eigen::MatrixXd J2 = jacobian(vec({0.2, 0.9}), Params{0.5, 0.1, 2});
  CHECK(J2(0, 1) == doctest::Approx(0.2));
  CHECK(J2(0, 0) == doctest::Approx(nonlinearity_derivative(0.2, 0.5) - 0.2));

  const Eigen::MatrixXd J1 = jacobian(vec({0.2}), Params{0.5, 7.0, 1});
  CHECK(J1(0, 0) == doctest::Approx(nonlinearity_derivative(0.2, 0.5)));

  const Word w = W("0a1");
  const Eigen::MatrixXd D = jacobian(root_state(w, 0.4), Params{0.4, 0.0, 3});
  CHECK(D(0, 0) == doctest::Approx(-0.4));
  CHECK(D(1, 1) == doctest::Approx(0.24));
  CHECK(D(2, 2) == doctest::Approx(-0.6));
  CHECK(D(0, 1) == 0.0);
}

TEST_CASE("jacobian is symmetric and matches finite differences") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 8);
    Eigen::VectorXd u(n);
    for (Eigen::Index i = 0; i < n; ++i) u(i) = -0.1 + 1.2 * unit(rng);
    const Params p{0.02 + 0.96 * unit(rng), unit(rng), n};
    const Eigen::MatrixXd J = jacobian(u, p);
    CHECK((J - J.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::MatrixXd F = oracle::fd_jacobian(u, p);
    CHECK((J - F).norm() <= 1e-6 * std::max(1.0, J.norm()));
  }
}

TEST_CASE("newton_solve") {
  SUBCASE("exact root is returned unchanged") {
    const Eigen::VectorXd root = root_state(W("0a1a"), 0.3);
    const auto r = newton_solve(root, Params{0.3, 0.0, 4});
    CHECK(r.converged());
    CHECK(r.iterations == 0);
    CHECK(r.residual == 0.0);
    CHECK(r.state == root);
  }
  SUBCASE("small coupling stays near the lattice point") {
    const auto r = newton_solve(vec({0, 0, 1}), Params{0.5, 0.01, 3});
    REQUIRE(r.converged());
    CHECK(r.residual <= 1e-12);
    CHECK((r.state - vec({0, 0, 1})).lpNorm<Eigen::Infinity>() < 0.05);
  }
  SUBCASE("far guess with huge coupling") {
    const auto r = newton_solve(vec({5.0, -4.0, 3.0}), Params{0.5, 1e6, 3});
    if (r.converged()) {
      const double c = r.state(0);
      CHECK((r.state.array() - c).abs().maxCoeff() < 1e-6);
      CHECK((std::abs(c) < 1e-6 || std::abs(c - 0.5) < 1e-6 || std::abs(c - 1.0) < 1e-6));
    } else {
      CHECK(r.status != NewtonStatus::Converged);
    }
  }
  SUBCASE("singular jacobian is reported") {
    // u = (1 + a)/3 +- ... : choose the point where g'(u) = 0 for n = 1.
    const double a = 0.5;
    const double u = ((1 + a) - std::sqrt((1 + a) * (1 + a) - 3 * a)) / 3.0;
    const auto r = newton_solve(vec({u}), Params{a, 0.0, 1});
    CHECK(r.status == NewtonStatus::SingularJacobian);
  }
}

TEST_CASE("continue_branch") {
  SUBCASE("homogeneous zero persists") {
    const auto trace = continue_branch(W("0"), 0.3, 1.0);
    CHECK(trace.status == TerminalStatus::ReachedTarget);
    CHECK(trace.last().d == 1.0);
    for (const auto& p : trace.points) CHECK(p.state.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("points start at the root and increase in d") {
    const auto trace = continue_branch(W("0011"), 0.5, 0.01);
    CHECK(trace.status == TerminalStatus::ReachedTarget);
    CHECK(trace.points.front().d == 0.0);
    CHECK(trace.points.front().state == root_state(W("0011"), 0.5));
    for (std::size_t i = 1; i < trace.points.size(); ++i)
      CHECK(trace.points[i].d > trace.points[i - 1].d);
    CHECK((trace.last().state - vec({0, 0, 1, 1})).lpNorm<Eigen::Infinity>() < 0.05);
    CHECK(vector_field(trace.last().state, Params{0.5, 0.01, 4}).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
  SUBCASE("n = 2 alternating branch collides at the symmetry-breaking pitchfork") {
    // On u = (1/2 + v, 1/2 - v) the equations reduce to v^2 = 1/4 - 4d and the
    // symmetric-mode eigenvalue g'(u) = 1/4 - 3 v^2 = -1/2 + 12 d vanishes at
    // d = 1/24, where the 0a and a1 branches meet this one.
    const auto trace = continue_branch(W("01"), 0.5, 2.0);
    CHECK(trace.status == TerminalStatus::FoldDetected);
    const double d_last = trace.last().d;
    CHECK(d_last < 1.0 / 24.0);
    CHECK(d_last > 0.03);  // last accepted point; the atlas refines the bracket
    const double v = std::sqrt(0.25 - 4 * d_last);
    CHECK((trace.last().state - vec({0.5 - v, 0.5 + v})).lpNorm<Eigen::Infinity>() < 1e-9);
  }
  SUBCASE("bad parameters") {
    CHECK_THROWS_AS(continue_branch(W("01"), 1.0, 0.1), Error);
    CHECK_THROWS_AS(continue_branch(W("01"), 0.0, 0.1), Error);
    CHECK_THROWS_AS(continue_branch(W("01"), 0.5, -0.1), Error);
  }
  SUBCASE("zero target returns the root") {
    const auto trace = continue_branch(W("a1"), 0.4, 0.0);
    CHECK(trace.reached());
    CHECK(trace.points.size() == 1);
  }
}

TEST_CASE("stability classification") {
  const SpectralInfo root = classify_stability(root_state(W("0a1"), 0.4), Params{0.4, 0.0, 3});
  CHECK(root.spectral_bound == doctest::Approx(0.24));
  CHECK(root.verdict == Stability::Unstable);
  CHECK(root.unstable_dimension == 1);

  CHECK(solved("0011", 0.5, 0.005).stability == Stability::Stable);
  CHECK(solved("1", 0.3, 0.005).stability == Stability::Stable);
  CHECK(solved("0a11", 0.5, 0.005).stability == Stability::Unstable);
  CHECK(solved("aaa", 0.7, 0.005).stability == Stability::Unstable);
}

TEST_CASE("all_branches at small d") {
  SUBCASE("n = 3") {
    const auto census = all_branches(3, 0.5, 0.005);
    CHECK(census.equilibria.size() == 27);
    CHECK(census.stable_count() == 8);
    CHECK(census.failures.empty());
    CHECK(census.collisions.empty());
  }
  SUBCASE("n = 2") {
    const auto census = all_branches(2, 0.5, 0.005);
    CHECK(census.equilibria.size() == 9);
    CHECK(census.stable_count() == 4);
  }
  SUBCASE("n = 1 at any d") {
    for (double d : {0.0, 0.5, 10.0}) {
      const auto census = all_branches(1, 0.3, d);
      REQUIRE(census.equilibria.size() == 3);
      CHECK(census.equilibria[0].state(0) == 0.0);
      CHECK(census.equilibria[1].state(0) == 0.3);
      CHECK(census.equilibria[2].state(0) == 1.0);
    }
  }
  SUBCASE("d = 0 gives the lattice points exactly") {
    const auto census = all_branches(3, 0.4, 0.0);
    REQUIRE(census.equilibria.size() == 27);
    for (const auto& e : census.equilibria) {
      CHECK(e.residual == 0.0);
      CHECK(e.state == root_state(e.word, 0.4));
    }
  }
}

TEST_CASE("stability count at d = 1e-3") {
  for (double a : {0.3, 0.5, 0.7}) {
    for (std::size_t n = 2; n <= 5; ++n) {
      const auto census = all_branches(n, a, 1e-3);
      REQUIRE(census.equilibria.size() == static_cast<std::size_t>(std::pow(3, n)));
      std::size_t stable = 0, unstable = 0, marginal = 0;
      for (const auto& e : census.equilibria) {
        stable += e.stability == Stability::Stable;
        unstable += e.stability == Stability::Unstable;
        marginal += e.stability == Stability::Marginal;
        CHECK((e.stability == Stability::Stable) == e.word.is_stable());
      }
      CHECK(stable == static_cast<std::size_t>(std::pow(2, n)));
      CHECK(unstable == static_cast<std::size_t>(std::pow(3, n) - std::pow(2, n)));
      CHECK(marginal == 0);
    }
  }
}

TEST_CASE("distance from the lattice point scales with d") {
  for (double d : {1e-4, 3e-4, 1e-3}) {
    for (const Word& w : all_words(4, Alphabet::Full)) {
      auto eq = solve_word(w, 0.5, d);
      REQUIRE(eq.has_value());
      CHECK((eq->state - root_state(w, 0.5)).lpNorm<Eigen::Infinity>() <= 10.0 * d);
    }
  }
}

TEST_CASE("equivariance under rotation and reflection") {
  const auto census = all_branches(4, 0.5, 0.005);
  for (const auto& e : census.equilibria) {
    for (long long l = 0; l < 4; ++l) {
      for (bool refl : {false, true}) {
        const Eigen::VectorXd u = permuted(e.state, e.word, refl, l);
        CHECK(vector_field(u, e.params).lpNorm<Eigen::Infinity>() <= 1e-12);
        // The image is the solution of the image word.
        const Word img = refl ? rotate(reflect(e.word), l) : rotate(e.word, l);
        const auto& other = census.equilibria[static_cast<std::size_t>(
            std::find_if(census.equilibria.begin(), census.equilibria.end(),
                         [&](const Equilibrium& x) { return x.word == img; }) -
            census.equilibria.begin())];
        CHECK((other.state - u).lpNorm<Eigen::Infinity>() < 1e-9);
      }
    }
  }
}

TEST_CASE("word_leq") {
  CHECK(word_leq(W("0001"), W("0101")));
  CHECK_FALSE(word_leq(W("0011"), W("0101")));
  CHECK(word_leq(W("0a1"), W("0a1")));
  CHECK(word_leq(W("0a0"), W("1a1")));
  CHECK_THROWS_AS(word_leq(W("01"), W("011")), Error);
}

TEST_CASE("compare_equilibria") {
  CHECK(compare_equilibria(solved("001", 0.5, 0.005), solved("011", 0.5, 0.005)) ==
        Order::StrictlyBelow);
  CHECK(compare_equilibria(solved("011", 0.5, 0.005), solved("001", 0.5, 0.005)) ==
        Order::StrictlyAbove);
  CHECK(compare_equilibria(solved("0", 0.5, 0.005), solved("1", 0.5, 0.005)) ==
        Order::StrictlyBelow);
  CHECK(compare_equilibria(solved("0011", 0.5, 0.005), solved("0101", 0.5, 0.005)) ==
        Order::Incomparable);
  CHECK(compare_equilibria(solved("0a1", 0.5, 0.005), solved("0a1", 0.5, 0.005)) ==
        Order::Equal);
  CHECK_THROWS_AS(compare_equilibria(solved("01", 0.5, 0.005), solved("01", 0.5, 0.004)),
                  Error);
}

TEST_CASE("ordered words give strictly ordered solutions") {
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto census = all_branches(n, 0.4, 0.002);
    REQUIRE(census.failures.empty());
    for (const auto& x : census.equilibria) {
      for (const auto& y : census.equilibria) {
        if (x.word == y.word || !word_leq(x.word, y.word)) continue;
        if (!x.word.is_stable() && !y.word.is_stable()) continue;
        CHECK(compare_equilibria(x, y) == Order::StrictlyBelow);
      }
    }
  }
}

TEST_CASE("stable_poset") {
  const auto chain = stable_poset(3, 0.5, 0.005, Symmetry::Translation);
  REQUIRE(chain.nodes.size() == 4);
  REQUIRE(chain.edges.size() == 3);
  CHECK(chain.edges[0].from == W("0"));
  CHECK(chain.edges[0].to == W("001"));
  CHECK(chain.edges[1].from == W("001"));
  CHECK(chain.edges[1].to == W("011"));
  CHECK(chain.edges[2].from == W("011"));
  CHECK(chain.edges[2].to == W("1"));

  const auto four = stable_poset(4, 0.5, 0.005, Symmetry::Translation);
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& e : four.edges) {
    edges.emplace(e.from.str(), e.to.str());
    CHECK(e.margin > 1e-10);
  }
  const std::set<std::pair<std::string, std::string>> expected{
      {"0", "0001"}, {"0001", "0011"}, {"0001", "01"},
      {"0011", "0111"}, {"01", "0111"}, {"0111", "1"}};
  CHECK(edges == expected);

  const auto one = stable_poset(1, 0.3, 0.1, Symmetry::TranslationReflection);
  REQUIRE(one.edges.size() == 1);
  CHECK(one.edges[0].from == W("0"));
  CHECK(one.edges[0].to == W("1"));
}

TEST_CASE("periodic extension solves the lattice equation") {
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    const auto census = all_branches(n, 0.3, 0.005);
    for (const auto& e : census.equilibria) {
      const double r = lde_residual(e, -100, 100);
      CHECK(r <= 10 * 1e-12);
      CHECK(std::abs(r - e.residual) < 1e-14);
    }
  }
  CHECK(lde_residual(solved("0", 0.5, 0.2), -50, 50) == 0.0);
}

TEST_CASE("n = 2 equals the single-edge graph system with doubled coupling") {
  const auto census = all_branches(2, 0.5, 0.005);
  for (const auto& e : census.equilibria) {
    const double d_graph = 2.0 * e.params.d;
    for (int i = 0; i < 2; ++i) {
      const double r = d_graph * (e.state(1 - i) - e.state(i)) + nonlinearity(e.state(i), 0.5);
      CHECK(std::abs(r) <= 1e-12);
    }
  }
}

}  // TEST_SUITE
