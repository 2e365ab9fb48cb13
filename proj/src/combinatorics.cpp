#include "motzkinlab/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "motzkinlab/errors.hpp"

namespace motzkin {

char to_char(Letter letter) {
  switch (letter) {
    case Letter::Zero: return '0';
    case Letter::Left: return 'l';
    case Letter::Right: return 'r';
  }
  return '?';
}

Letter letter_from_char(char c) {
  switch (c) {
    case '0': return Letter::Zero;
    case 'l': return Letter::Left;
    case 'r': return Letter::Right;
    default:
      throw InputError(std::string("invalid spin letter '") + c + "' (expected 0, l or r)");
  }
}

SpinString SpinString::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(letter_from_char(c));
  return SpinString(std::move(letters));
}

std::string SpinString::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Letter l : letters_) out.push_back(to_char(l));
  return out;
}

bool is_dyck(std::string_view text) {
  long height = 0;
  for (char c : text) {
    if (c == 'l') {
      ++height;
    } else if (c == 'r') {
      if (--height < 0) return false;
    } else {
      return false;
    }
  }
  return height == 0;
}

DyckWord DyckWord::parse(std::string_view text) {
  if (!is_dyck(text)) throw InputError("not a Dyck word: '" + std::string(text) + "'");
  return DyckWord(std::string(text));
}

DyckWord DyckWord::trusted(std::string text) { return DyckWord(std::move(text)); }

std::string to_string(SectorLabel label) {
  return std::to_string(label.p) + ":" + std::to_string(label.q);
}

SectorLabel classify(std::span<const Letter> letters) {
  // Height scan: an r at height zero is unmatched and leaves the height at zero.
  SectorLabel out;
  int height = 0;
  for (Letter l : letters) {
    if (l == Letter::Left) {
      ++height;
    } else if (l == Letter::Right) {
      if (height == 0) {
        ++out.p;
      } else {
        --height;
      }
    }
  }
  out.q = height;
  return out;
}

SectorLabel classify(std::string_view text) { return classify(SpinString::parse(text)); }

CountInt binomial(unsigned n, unsigned k) {
  CountInt out;
  if (k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

CountInt catalan(unsigned k) {
  CountInt out = binomial(2 * k, k);
  out /= (k + 1);
  return out;
}

std::vector<CountInt> motzkin_numbers(unsigned n_max) {
  std::vector<CountInt> m(n_max + 1);
  m[0] = 1;
  if (n_max >= 1) m[1] = 1;
  // (n + 2) M_n = (2n + 1) M_{n-1} + 3 (n - 1) M_{n-2}
  for (unsigned n = 2; n <= n_max; ++n) {
    m[n] = (2 * n + 1) * m[n - 1] + 3 * (n - 1) * m[n - 2];
    mpz_divexact_ui(m[n].get_mpz_t(), m[n].get_mpz_t(), n + 2);
  }
  return m;
}

CountInt motzkin_number(unsigned n) {
  CountInt a = 1, b = 1;  // M_{k-2}, M_{k-1}
  if (n < 2) return 1;
  for (unsigned k = 2; k <= n; ++k) {
    CountInt c = (2 * k + 1) * b + 3 * (k - 1) * a;
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k + 2);
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

CountInt ballot_count(unsigned n, unsigned k) {
  CountInt out = binomial(2 * n + k, n) * (k + 1);
  mpz_divexact_ui(out.get_mpz_t(), out.get_mpz_t(), n + k + 1);
  return out;
}

CountInt class_size(unsigned n, unsigned m) {
  if (m > n) throw InputError("class_size: excess m exceeds n");
  // sum_i (m+1)/(i+m+1) C(n, 2i+m) C(2i+m, i) = sum_i C(n, 2i+m) D_{i,m}
  CountInt total;
  for (unsigned i = 0; 2 * i + m <= n; ++i) total += binomial(n, 2 * i + m) * ballot_count(i, m);
  return total;
}

std::vector<CountInt> trinomial_row(unsigned n) {
  std::vector<CountInt> a(2 * n + 1);
  a[0] = 1;
  if (n == 0) return a;
  a[1] = n;
  // Coefficient identity from f' g = n g' f with g = 1 + x + x^2:
  // (j+1) a_{j+1} = (n - j) a_j + (2n - j + 1) a_{j-1}
  CountInt tmp;
  for (unsigned j = 1; j < 2 * n; ++j) {
    tmp = a[j - 1] * (2 * n - j + 1);
    if (j <= n) {
      tmp += a[j] * (n - j);
    } else {
      tmp -= a[j] * (j - n);
    }
    mpz_divexact_ui(a[j + 1].get_mpz_t(), tmp.get_mpz_t(), j + 1);
  }
  return a;
}

std::vector<CountInt> class_size_row(unsigned n) {
  const auto t = trinomial_row(n);
  std::vector<CountInt> out(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    out[m] = t[n + m];
    if (n + m + 2 <= 2 * n) out[m] -= t[n + m + 2];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ranking

namespace {

struct ScanState {
  unsigned height;
  int rights;  // unmatched rights seen so far
};

inline bool step(ScanState& st, Letter l) {
  if (l == Letter::Left) {
    ++st.height;
  } else if (l == Letter::Right) {
    if (st.height == 0) {
      ++st.rights;
    } else {
      --st.height;
    }
  }
  return true;
}

}  // namespace

ClassRanker::ClassRanker(unsigned n, SectorLabel label) : n_(n), label_(label) {
  if (label.p < 0 || label.q < 0 || label.excess() > static_cast<int>(n))
    throw InputError("sector label (" + to_string(label) + ") invalid for n=" + std::to_string(n));
  if (n > 39) throw ResourceError("ClassRanker: n > 39 overflows 64-bit ranks");
  const unsigned hp = n + 1;
  const unsigned dp = static_cast<unsigned>(label.p) + 1;
  completions_.assign(static_cast<std::size_t>(n + 1) * hp * dp, 0);
  auto at = [&](unsigned len, unsigned h, unsigned d) -> std::uint64_t& {
    return completions_[(static_cast<std::size_t>(len) * hp + h) * dp + d];
  };
  at(0, static_cast<unsigned>(label.q), 0) = 1;
  for (unsigned len = 1; len <= n; ++len) {
    for (unsigned h = 0; h <= n; ++h) {
      for (unsigned d = 0; d < dp; ++d) {
        std::uint64_t c = at(len - 1, h, d);                  // 0
        if (h + 1 <= n) c += at(len - 1, h + 1, d);           // l
        if (h > 0) {
          c += at(len - 1, h - 1, d);                         // matched r
        } else if (d > 0) {
          c += at(len - 1, 0, d - 1);                         // unmatched r
        }
        at(len, h, d) = c;
      }
    }
  }
  size_ = at(n, 0, static_cast<unsigned>(label.p));
}

std::uint64_t ClassRanker::completions(unsigned remaining, unsigned height,
                                       int rights_needed) const {
  if (rights_needed < 0 || rights_needed > label_.p || height > n_) return 0;
  const unsigned hp = n_ + 1;
  const unsigned dp = static_cast<unsigned>(label_.p) + 1;
  return completions_[(static_cast<std::size_t>(remaining) * hp + height) * dp +
                      static_cast<unsigned>(rights_needed)];
}

std::uint64_t ClassRanker::try_rank(std::span<const Letter> letters) const {
  if (letters.size() != n_) return size_;
  std::uint64_t r = 0;
  ScanState st{0, 0};
  for (unsigned i = 0; i < n_; ++i) {
    const Letter cur = letters[i];
    for (std::uint8_t c = 0; c < static_cast<std::uint8_t>(cur); ++c) {
      ScanState alt = st;
      step(alt, static_cast<Letter>(c));
      r += completions(n_ - i - 1, alt.height, label_.p - alt.rights);
    }
    step(st, cur);
    if (st.rights > label_.p) return size_;
  }
  if (st.rights != label_.p || static_cast<int>(st.height) != label_.q) return size_;
  return r;
}

std::uint64_t ClassRanker::rank(std::span<const Letter> letters) const {
  const auto r = try_rank(letters);
  if (r >= size_) {
    throw InputError("string " + SpinString({letters.begin(), letters.end()}).str() +
                     " is not in class C_{" + to_string(label_) + "}(" + std::to_string(n_) + ")");
  }
  return r;
}

void ClassRanker::unrank_into(std::uint64_t index, std::span<Letter> out) const {
  if (index >= size_) throw InputError("unrank: index out of range");
  ScanState st{0, 0};
  for (unsigned i = 0; i < n_; ++i) {
    for (std::uint8_t c = 0; c < 3; ++c) {
      ScanState alt = st;
      step(alt, static_cast<Letter>(c));
      const auto cnt = completions(n_ - i - 1, alt.height, label_.p - alt.rights);
      if (index < cnt) {
        out[i] = static_cast<Letter>(c);
        st = alt;
        break;
      }
      index -= cnt;
    }
  }
}

SpinString ClassRanker::unrank(std::uint64_t index) const {
  std::vector<Letter> letters(n_);
  unrank_into(index, letters);
  return SpinString(std::move(letters));
}

std::vector<SpinString> enumerate_class(unsigned n, SectorLabel label, unsigned cap) {
  if (n > cap) {
    throw ResourceError("enumerate_class: n=" + std::to_string(n) + " exceeds enumeration cap " +
                        std::to_string(cap));
  }
  const ClassRanker ranker(n, label);
  std::vector<SpinString> out;
  out.reserve(ranker.size());
  for (std::uint64_t i = 0; i < ranker.size(); ++i) out.push_back(ranker.unrank(i));
  return out;
}

namespace {

void dyck_rec(std::string& prefix, unsigned open, unsigned close, unsigned k,
              std::vector<DyckWord>& out) {
  if (prefix.size() == 2 * k) {
    out.push_back(DyckWord::trusted(prefix));
    return;
  }
  if (open < k) {
    prefix.push_back('l');
    dyck_rec(prefix, open + 1, close, k, out);
    prefix.pop_back();
  }
  if (close < open) {
    prefix.push_back('r');
    dyck_rec(prefix, open, close + 1, k, out);
    prefix.pop_back();
  }
}

// Number of ways to finish a Dyck word with `remaining` letters from `height`.
std::uint64_t dyck_completions(unsigned remaining, unsigned height) {
  if (height > remaining || (remaining - height) % 2 != 0) return 0;
  const unsigned pairs = (remaining - height) / 2;
  return ballot_count(pairs, height).get_ui();
}

}  // namespace

std::vector<DyckWord> enumerate_dyck(unsigned semilength) {
  std::vector<DyckWord> out;
  std::string prefix;
  prefix.reserve(2 * semilength);
  dyck_rec(prefix, 0, 0, semilength, out);
  return out;
}

std::uint64_t dyck_rank(const DyckWord& word) {
  const auto& s = word.str();
  const unsigned len = static_cast<unsigned>(s.size());
  std::uint64_t r = 0;
  unsigned h = 0;
  for (unsigned i = 0; i < len; ++i) {
    if (s[i] == 'r') r += dyck_completions(len - i - 1, h + 1);  // 'l' < 'r'
    h = s[i] == 'l' ? h + 1 : h - 1;
  }
  return r;
}

DyckWord dyck_unrank(unsigned semilength, std::uint64_t index) {
  const unsigned len = 2 * semilength;
  if (index >= catalan(semilength).get_ui()) throw InputError("dyck_unrank: index out of range");
  std::string s;
  unsigned h = 0;
  for (unsigned i = 0; i < len; ++i) {
    const auto with_l = dyck_completions(len - i - 1, h + 1);
    if (index < with_l) {
      s.push_back('l');
      ++h;
    } else {
      index -= with_l;
      s.push_back('r');
      --h;
    }
  }
  return DyckWord::trusted(std::move(s));
}

double log_count(const CountInt& value) {
  if (sgn(value) <= 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

bool motzkin_ratio_bounds(unsigned n_max) {
  const auto m = motzkin_numbers(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) {
    if (3 * m[n] < m[n + 1] || m[n] > m[n + 1]) return false;
  }
  return true;
}

double motzkin_asymptotic_constant(unsigned n) {
  const double log_c =
      log_count(motzkin_number(n)) + 1.5 * std::log(static_cast<double>(n)) - n * std::log(3.0);
  return std::exp(log_c);
}

}  // namespace motzkin
