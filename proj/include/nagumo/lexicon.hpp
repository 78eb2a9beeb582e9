#pragma once

// Words over the root alphabet {0, a, 1}, their rotation/reflection
// symmetries and the equivalence classes those symmetries induce.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nagumo {

/// One root of g(.; a). The enumerator order is the numeric order 0 < a < 1.
enum class Letter : std::uint8_t { Zero = 0, A = 1, One = 2 };

char to_char(Letter l);
Letter letter_from_char(char c);

enum class Alphabet { Full, Stable };

/// Alphabet size k: 3 for {0,a,1}, 2 for {0,1}.
int alphabet_size(Alphabet alphabet);

enum class Symmetry { Translation, TranslationReflection };

/// A finite word. Positions are 1-based and taken modulo the length, so
/// `at(0)` is the last letter and `at(n + 1)` the first.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  /// Parses the ASCII encoding '0', 'a', '1'. Throws Error(ParseError).
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  Letter at(long long i) const;
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  /// True when every letter is 0 or 1.
  bool is_stable() const noexcept;

  std::string str() const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// 1-based modulo with values in {1, ..., n}.
long long mod1(long long i, long long n);

Word rotate(const Word& w, long long shift);
Word reflect(const Word& w);

bool is_primitive(const Word& w);
Word primitive_root(const Word& w);

/// Smallest member of the orbit, reduced to its primitive root.
Word canonical(const Word& w, Symmetry symmetry);

/// Distinct orbit members in lexicographic order.
std::vector<Word> orbit(const Word& w, Symmetry symmetry);

struct SymmetryClass {
  Word representative;
  Symmetry symmetry = Symmetry::Translation;
  std::vector<Word> members;  // full-length words, sorted
  std::size_t period = 0;     // ambient length n

  std::size_t orbit_size() const noexcept { return members.size(); }
  bool primitive() const noexcept { return representative.size() == period; }
};

/// Upper bound on k^n for exhaustive enumeration.
inline constexpr std::uint64_t kEnumerationBudget = std::uint64_t{1} << 24;

/// All words of length n over the alphabet, in lexicographic order.
/// Throws Error(BudgetExceeded) above kEnumerationBudget.
std::vector<Word> all_words(std::size_t n, Alphabet alphabet);

/// Classes partitioning the k^n words of length n, sorted by representative.
/// With `primitive_only`, classes whose words are periodic are dropped.
std::vector<SymmetryClass> enumerate_classes(std::size_t n, Alphabet alphabet,
                                             Symmetry symmetry,
                                             bool primitive_only);

}  // namespace nagumo
