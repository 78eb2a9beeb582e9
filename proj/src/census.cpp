#include "nagumo/census.hpp"

#include <algorithm>

#include "nagumo/error.hpp"

namespace nagumo {

namespace {

using Signed = __int128;

constexpr Count kSignedMax = static_cast<Count>(-1) >> 1;

void require_positive(long long m, const char* what) {
  if (m < 1)
    throw Error(ErrorCode::Domain,
                std::string(what) + " requires m >= 1, got " + std::to_string(m));
}

void require_kn(int k, int n) {
  if (k < 2) throw Error(ErrorCode::Domain, "alphabet size k must be at least 2");
  if (n < 1) throw Error(ErrorCode::Domain, "period n must be at least 1");
}

Count gcd(Count a, Count b) {
  while (b != 0) {
    Count t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Count exact_div(Signed num, long long den, const char* what) {
  if (num < 0 || num % den != 0)
    throw Error(ErrorCode::Overflow,
                std::string(what) + ": divisor sum not divisible as expected");
  return static_cast<Count>(num / den);
}

}  // namespace

std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string s;
  while (value != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

long long totient(long long m) {
  require_positive(m, "totient");
  long long result = m;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

int mobius(long long m) {
  require_positive(m, "mobius");
  int sign = 1;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return 0;
    sign = -sign;
  }
  if (m > 1) sign = -sign;
  return sign;
}

std::vector<long long> divisors(long long m) {
  require_positive(m, "divisors");
  std::vector<long long> out;
  for (long long d = 1; d <= m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

Count checked_power(int k, int n) {
  require_kn(k, n);
  const Count limit = kSignedMax / static_cast<Count>(n);
  Count value = 1;
  for (int i = 0; i < n; ++i) {
    if (value > limit / static_cast<Count>(k))
      throw Error(ErrorCode::Overflow, std::to_string(k) + "^" + std::to_string(n) +
                                           " exceeds 128-bit counting range");
    value *= static_cast<Count>(k);
  }
  return value;
}

Count necklace_count(int k, int n) {
  checked_power(k, n);
  Signed sum = 0;
  for (long long d : divisors(n))
    sum += static_cast<Signed>(totient(d)) *
           static_cast<Signed>(checked_power(k, static_cast<int>(n / d)));
  return exact_div(sum, n, "necklace_count");
}

Count lyndon_count(int k, int n) {
  checked_power(k, n);
  Signed sum = 0;
  for (long long d : divisors(n))
    sum += mobius(d) * static_cast<Signed>(checked_power(k, static_cast<int>(n / d)));
  return exact_div(sum, n, "lyndon_count");
}

Count bracelet_count(int k, int n) {
  const Count necklaces = necklace_count(k, n);
  // B = (N + (k+1)/2 k^{n/2}) / 2 for even n, (N + k^{(n+1)/2}) / 2 for odd n.
  if (n % 2 == 0) {
    const Signed twice = 2 * static_cast<Signed>(necklaces) +
                         static_cast<Signed>(k + 1) *
                             static_cast<Signed>(checked_power(k, n / 2));
    return exact_div(twice, 4, "bracelet_count");
  }
  const Signed twice = static_cast<Signed>(necklaces) +
                       static_cast<Signed>(checked_power(k, (n + 1) / 2));
  return exact_div(twice, 2, "bracelet_count");
}

Count lyndon_bracelet_count(int k, int n) {
  checked_power(k, n);
  Signed sum = 0;
  for (long long d : divisors(n))
    sum += mobius(d) *
           static_cast<Signed>(bracelet_count(k, static_cast<int>(n / d)));
  return exact_div(sum, 1, "lyndon_bracelet_count");
}

std::vector<CountRow> census_table(int n_max, int k) {
  if (n_max < 1) throw Error(ErrorCode::Domain, "n_max must be at least 1");
  std::vector<CountRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    CountRow row;
    row.n = n;
    row.k = k;
    row.total = checked_power(k, n);
    row.necklaces = necklace_count(k, n);
    row.lyndon = lyndon_count(k, n);
    row.bracelets = bracelet_count(k, n);
    row.lyndon_bracelets = lyndon_bracelet_count(k, n);
    rows.push_back(row);
  }
  return rows;
}

Rational make_rational(Count num, Count den) {
  if (den == 0) throw Error(ErrorCode::Domain, "zero denominator");
  const Count g = gcd(num, den);
  return {num / g, den / g};
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num) /
                             static_cast<long double>(den));
}

Rational asymptotic_ratio(int k, int n, CountKind which) {
  const Count total = checked_power(k, n);
  switch (which) {
    case CountKind::Necklace:
      return make_rational(necklace_count(k, n) * n, total);
    case CountKind::Lyndon:
      return make_rational(lyndon_count(k, n) * n, total);
    case CountKind::Bracelet:
      return make_rational(bracelet_count(k, n) * 2 * n, total);
    case CountKind::LyndonBracelet:
      return make_rational(lyndon_bracelet_count(k, n) * 2 * n, total);
  }
  return {};
}

}  // namespace nagumo
