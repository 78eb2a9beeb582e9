#include "nagumo/lexicon.hpp"

#include <algorithm>

#include "nagumo/error.hpp"

namespace nagumo {

char to_char(Letter l) {
  switch (l) {
    case Letter::Zero: return '0';
    case Letter::A: return 'a';
    case Letter::One: return '1';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (c) {
    case '0': return Letter::Zero;
    case 'a': return Letter::A;
    case '1': return Letter::One;
    default:
      throw Error(ErrorCode::ParseError,
                  std::string("invalid letter '") + c + "', expected 0, a or 1");
  }
}

int alphabet_size(Alphabet alphabet) {
  return alphabet == Alphabet::Full ? 3 : 2;
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

Word Word::parse(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty word");
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(letter_from_char(c));
  return Word(std::move(letters));
}

long long mod1(long long i, long long n) {
  long long r = i % n;
  if (r <= 0) r += n;
  return r;
}

Letter Word::at(long long i) const {
  const auto n = static_cast<long long>(letters_.size());
  return letters_[static_cast<std::size_t>(mod1(i, n) - 1)];
}

bool Word::is_stable() const noexcept {
  return std::none_of(letters_.begin(), letters_.end(),
                      [](Letter l) { return l == Letter::A; });
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(to_char(l));
  return s;
}

Word rotate(const Word& w, long long shift) {
  const auto n = static_cast<long long>(w.size());
  std::vector<Letter> out(w.size());
  for (long long i = 1; i <= n; ++i) out[i - 1] = w.at(i + shift);
  return Word(std::move(out));
}

Word reflect(const Word& w) {
  const auto n = static_cast<long long>(w.size());
  std::vector<Letter> out(w.size());
  for (long long i = 1; i <= n; ++i) out[i - 1] = w.at(1 - i);
  return Word(std::move(out));
}

namespace {

std::size_t smallest_period(const std::vector<Letter>& s) {
  const std::size_t n = s.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = s[i] == s[i - p];
    if (periodic) return p;
  }
  return n;
}

// Lexicographic comparison of the image of s under i -> s[(sign*i + shift) mod n]
// against s itself, without materializing the image.
int compare_image(const std::vector<Letter>& s, std::size_t shift, bool reversed) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = reversed ? (shift + n - i) % n : (shift + i) % n;
    if (s[j] != s[i]) return s[j] < s[i] ? -1 : 1;
  }
  return 0;
}

bool is_orbit_minimum(const std::vector<Letter>& s, Symmetry symmetry) {
  const std::size_t n = s.size();
  for (std::size_t r = 1; r < n; ++r)
    if (compare_image(s, r, false) < 0) return false;
  if (symmetry == Symmetry::TranslationReflection)
    for (std::size_t r = 0; r < n; ++r)
      if (compare_image(s, r, true) < 0) return false;
  return true;
}

}  // namespace

bool is_primitive(const Word& w) {
  return smallest_period(w.letters()) == w.size();
}

Word primitive_root(const Word& w) {
  const auto& s = w.letters();
  const std::size_t p = smallest_period(s);
  return Word(std::vector<Letter>(s.begin(), s.begin() + static_cast<long>(p)));
}

std::vector<Word> orbit(const Word& w, Symmetry symmetry) {
  std::vector<Word> members;
  const auto n = static_cast<long long>(w.size());
  members.reserve(static_cast<std::size_t>(2 * n));
  for (long long l = 0; l < n; ++l) members.push_back(rotate(w, l));
  if (symmetry == Symmetry::TranslationReflection) {
    const Word r = reflect(w);
    for (long long l = 0; l < n; ++l) members.push_back(rotate(r, l));
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

Word canonical(const Word& w, Symmetry symmetry) {
  if (w.empty()) return w;
  const auto members = orbit(w, symmetry);
  return primitive_root(members.front());
}

namespace {

std::uint64_t checked_word_count(std::size_t n, int k) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<std::uint64_t>(k);
    if (total > kEnumerationBudget)
      throw Error(ErrorCode::BudgetExceeded,
                  std::to_string(k) + "^" + std::to_string(n) +
                      " words exceed the enumeration budget of 2^24");
  }
  return total;
}

// Advances an odometer over the alphabet, last position fastest, so words
// come out in lexicographic order. Returns false after the last word.
bool next_word(std::vector<Letter>& s, Alphabet alphabet) {
  for (std::size_t i = s.size(); i-- > 0;) {
    if (alphabet == Alphabet::Stable) {
      if (s[i] == Letter::Zero) {
        s[i] = Letter::One;
        return true;
      }
    } else if (s[i] != Letter::One) {
      s[i] = static_cast<Letter>(static_cast<int>(s[i]) + 1);
      return true;
    }
    s[i] = Letter::Zero;
  }
  return false;
}

}  // namespace

std::vector<Word> all_words(std::size_t n, Alphabet alphabet) {
  if (n == 0) throw Error(ErrorCode::Domain, "word length must be at least 1");
  const auto total = checked_word_count(n, alphabet_size(alphabet));
  std::vector<Word> words;
  words.reserve(total);
  std::vector<Letter> s(n, Letter::Zero);
  do {
    words.emplace_back(s);
  } while (next_word(s, alphabet));
  return words;
}

std::vector<SymmetryClass> enumerate_classes(std::size_t n, Alphabet alphabet,
                                             Symmetry symmetry,
                                             bool primitive_only) {
  if (n == 0) throw Error(ErrorCode::Domain, "word length must be at least 1");
  checked_word_count(n, alphabet_size(alphabet));

  std::vector<SymmetryClass> classes;
  std::vector<Letter> s(n, Letter::Zero);
  do {
    // Each class is visited exactly once: at its lexicographically
    // smallest member.
    if (!is_orbit_minimum(s, symmetry)) continue;
    const std::size_t p = smallest_period(s);
    if (primitive_only && p != n) continue;
    SymmetryClass c;
    c.representative =
        Word(std::vector<Letter>(s.begin(), s.begin() + static_cast<long>(p)));
    c.symmetry = symmetry;
    c.members = orbit(Word(s), symmetry);
    c.period = n;
    classes.push_back(std::move(c));
  } while (next_word(s, alphabet));

  std::sort(classes.begin(), classes.end(),
            [](const SymmetryClass& x, const SymmetryClass& y) {
              return x.representative < y.representative;
            });
  return classes;
}

}  // namespace nagumo
