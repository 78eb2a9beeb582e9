#pragma once

// Reference computations used only by the tests. Each one follows a
// different route from the library code it checks.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "nagumo/equilibria.hpp"

namespace oracle {

inline long long totient(long long m) {
  long long count = 0;
  for (long long i = 1; i <= m; ++i)
    if (std::gcd(i, m) == 1) ++count;
  return count;
}

// mu(1) = 1 and sum_{d | m} mu(d) = 0 for m > 1.
inline int mobius(long long m) {
  if (m == 1) return 1;
  int sum = 0;
  for (long long d = 1; d < m; ++d)
    if (m % d == 0) sum += mobius(d);
  return -sum;
}

struct ClassCounts {
  std::uint64_t necklaces = 0, lyndon = 0, bracelets = 0, lyndon_bracelets = 0;
};

inline bool string_primitive(const std::string& s) {
  return (s + s).find(s, 1) == s.size();
}

inline std::string min_rotation(const std::string& s) {
  std::string best = s;
  for (std::size_t r = 1; r < s.size(); ++r)
    best = std::min(best, s.substr(r) + s.substr(0, r));
  return best;
}

/// Counts classes by collecting canonical strings in std::set.
inline ClassCounts brute_class_counts(int n, const std::string& alphabet) {
  std::set<std::string> necklaces, bracelets;
  std::string s(static_cast<std::size_t>(n), alphabet[0]);
  std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
  while (true) {
    for (int i = 0; i < n; ++i) s[i] = alphabet[digit[i]];
    const std::string neck = min_rotation(s);
    std::string rev = s;
    std::reverse(rev.begin(), rev.end());
    necklaces.insert(neck);
    bracelets.insert(std::min(neck, min_rotation(rev)));
    int i = n - 1;
    while (i >= 0 && ++digit[i] == alphabet.size()) digit[i--] = 0;
    if (i < 0) break;
  }
  ClassCounts c;
  c.necklaces = necklaces.size();
  c.bracelets = bracelets.size();
  for (const auto& x : necklaces) c.lyndon += string_primitive(x);
  for (const auto& x : bracelets) c.lyndon_bracelets += string_primitive(x);
  return c;
}

/// E(u) = d/2 sum_i (u_{i+1} - u_i)^2 - sum_i int_0^{u_i} g(s; a) ds, summed
/// over the n cyclic edges i -> i+1. The vector field is -grad E.
inline double potential(const Eigen::VectorXd& u, double a, double d) {
  const Eigen::Index n = u.size();
  double e = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double du = u((i + 1) % n) - u(i);
    const double x = u(i);
    e += 0.5 * d * du * du;
    e -= -x * x * x * x / 4.0 + (1.0 + a) * x * x * x / 3.0 - a * x * x / 2.0;
  }
  return e;
}

inline Eigen::VectorXd potential_gradient_field(const Eigen::VectorXd& u, double a,
                                                double d, double h = 1e-6) {
  Eigen::VectorXd f(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    Eigen::VectorXd up = u, dn = u;
    up(i) += h;
    dn(i) -= h;
    f(i) = -(potential(up, a, d) - potential(dn, a, d)) / (2.0 * h);
  }
  return f;
}

inline Eigen::MatrixXd fd_jacobian(const Eigen::VectorXd& u, const nagumo::Params& p,
                                   double h = 1e-7) {
  Eigen::MatrixXd J(u.size(), u.size());
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    Eigen::VectorXd up = u, dn = u;
    up(j) += h;
    dn(j) -= h;
    J.col(j) = (nagumo::vector_field(up, p) - nagumo::vector_field(dn, p)) / (2.0 * h);
  }
  return J;
}

/// Scalar bistable ODE du/dt = u(1-u)(u-a) by explicit midpoint.
inline double scalar_flow(double u, double a, double t_end, double h = 1e-4) {
  const auto g = [a](double x) { return x * (1.0 - x) * (x - a); };
  const long steps = std::lround(t_end / h);
  for (long s = 0; s < steps; ++s) u += h * g(u + 0.5 * h * g(u));
  return u;
}

}  // namespace oracle
