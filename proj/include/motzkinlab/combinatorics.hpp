#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace motzkin {

using CountInt = mpz_class;
using Rational = mpq_class;

// Letter codes double as base-3 digits for full-space indexing; the numeric
// order 0 < l < r is the lexicographic order used everywhere.
enum class Letter : std::uint8_t { Zero = 0, Left = 1, Right = 2 };

char to_char(Letter letter);
Letter letter_from_char(char c);

class SpinString {
 public:
  SpinString() = default;
  explicit SpinString(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static SpinString parse(std::string_view text);

  std::size_t size() const { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const { return letters_; }
  std::string str() const;

  auto operator<=>(const SpinString&) const = default;

 private:
  std::vector<Letter> letters_;
};

// Balanced string over {l, r}. Stored as text since Dyck words are mostly
// concatenated, split and hashed.
class DyckWord {
 public:
  DyckWord() = default;

  static DyckWord parse(std::string_view text);
  // Wraps text already known to be balanced.
  static DyckWord trusted(std::string text);

  std::size_t semilength() const { return text_.size() / 2; }
  bool empty() const { return text_.empty(); }
  const std::string& str() const { return text_; }

  auto operator<=>(const DyckWord&) const = default;

 private:
  explicit DyckWord(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

bool is_dyck(std::string_view text);

// Class C_{p,q}: p unmatched right brackets, q unmatched left brackets.
struct SectorLabel {
  int p = 0;
  int q = 0;
  int excess() const { return p + q; }
  auto operator<=>(const SectorLabel&) const = default;
};

std::string to_string(SectorLabel label);

inline constexpr unsigned kDefaultEnumerationCap = 16;

SectorLabel classify(std::span<const Letter> letters);
inline SectorLabel classify(const SpinString& s) { return classify(s.letters()); }
SectorLabel classify(std::string_view text);

CountInt binomial(unsigned n, unsigned k);
CountInt catalan(unsigned k);
CountInt motzkin_number(unsigned n);
// M_0 .. M_{n_max} by the three-term recurrence.
std::vector<CountInt> motzkin_numbers(unsigned n_max);

// D_{n,k}: strings of length 2n+k with k unmatched left brackets and none
// unmatched on the right.
CountInt ballot_count(unsigned n, unsigned k);

// |C_{0,m}(n)| by the reflection sum over the number of matched pairs.
CountInt class_size(unsigned n, unsigned m);
inline CountInt class_size(unsigned n, SectorLabel label) {
  return class_size(n, static_cast<unsigned>(label.excess()));
}

// All |C_{0,m}(n)|, m = 0..n, from the trinomial row (1 + x + x^2)^n via
// |C_{0,m}(n)| = T(n, m) - T(n, m + 2). Linear in n bigint steps.
std::vector<CountInt> class_size_row(unsigned n);

// Coefficients of (1 + x + x^2)^n, index 0..2n.
std::vector<CountInt> trinomial_row(unsigned n);

std::vector<SpinString> enumerate_class(unsigned n, SectorLabel label,
                                        unsigned cap = kDefaultEnumerationCap);
std::vector<DyckWord> enumerate_dyck(unsigned semilength);

// Dense lexicographic ranking of one class C_{p,q}(n).
class ClassRanker {
 public:
  ClassRanker(unsigned n, SectorLabel label);

  unsigned n() const { return n_; }
  SectorLabel label() const { return label_; }
  std::uint64_t size() const { return size_; }

  // Throws InputError when the letters are not in the class.
  std::uint64_t rank(std::span<const Letter> letters) const;
  std::uint64_t rank(const SpinString& s) const { return rank(s.letters()); }
  // Returns size() instead of throwing; used on hot paths.
  std::uint64_t try_rank(std::span<const Letter> letters) const;

  SpinString unrank(std::uint64_t index) const;
  void unrank_into(std::uint64_t index, std::span<Letter> out) const;

 private:
  std::uint64_t completions(unsigned remaining, unsigned height, int rights_needed) const;

  unsigned n_;
  SectorLabel label_;
  std::uint64_t size_ = 0;
  // completions_[(L * (n+1) + h) * (p+1) + d]
  std::vector<std::uint64_t> completions_;
};

// Lexicographic rank of a Dyck word within D_k.
std::uint64_t dyck_rank(const DyckWord& word);
DyckWord dyck_unrank(unsigned semilength, std::uint64_t index);

// 1/3 <= M_n / M_{n+1} <= 1 for every n <= n_max, in integers.
bool motzkin_ratio_bounds(unsigned n_max);

// M_n * n^{3/2} / 3^n.
double motzkin_asymptotic_constant(unsigned n);

// Natural log of a positive big integer, accurate to double precision.
double log_count(const CountInt& value);

}  // namespace motzkin
