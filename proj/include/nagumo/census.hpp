#pragma once

// Closed-form counts of necklaces, Lyndon words, bracelets and Lyndon
// bracelets over a k-letter alphabet.

#include <string>
#include <vector>

namespace nagumo {

using Count = unsigned __int128;

std::string to_string(Count value);

long long totient(long long m);
int mobius(long long m);

/// Divisors of m in increasing order.
std::vector<long long> divisors(long long m);

/// k^n exactly, or Error(Overflow) if n * k^n does not fit in 127 bits.
Count checked_power(int k, int n);

Count necklace_count(int k, int n);
Count lyndon_count(int k, int n);
Count bracelet_count(int k, int n);
Count lyndon_bracelet_count(int k, int n);

struct CountRow {
  int n = 0;
  int k = 0;
  Count total = 0;
  Count necklaces = 0;
  Count lyndon = 0;
  Count bracelets = 0;
  Count lyndon_bracelets = 0;
};

std::vector<CountRow> census_table(int n_max, int k);

/// Reduced non-negative fraction.
struct Rational {
  Count num = 0;
  Count den = 1;

  double to_double() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(Count num, Count den);

enum class CountKind { Necklace, Lyndon, Bracelet, LyndonBracelet };

/// count * n / k^n for necklaces and Lyndon words, count * 2n / k^n for the
/// bracelet counts. Tends to 1 as n grows.
Rational asymptotic_ratio(int k, int n, CountKind which);

}  // namespace nagumo
