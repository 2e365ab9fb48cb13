#pragma once

// Independent reference computations shared by the unit tests. Nothing here
// calls into the library except for basic types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Every string over {0,l,r} of length n in lexicographic order.
inline std::vector<std::string> all_strings(unsigned n) {
  std::vector<std::string> out{""};
  for (unsigned i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& s : out)
      for (char c : {'0', 'l', 'r'}) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

// (unmatched r, unmatched l) by a left-to-right height scan.
inline std::pair<int, int> unmatched(const std::string& s) {
  int open = 0, bad_right = 0;
  for (char c : s) {
    if (c == 'l') {
      ++open;
    } else if (c == 'r') {
      if (open > 0) {
        --open;
      } else {
        ++bad_right;
      }
    }
  }
  return {bad_right, open};
}

inline std::string dyck_part(const std::string& s) {
  std::string d;
  for (char c : s)
    if (c != '0') d += c;
  return d;
}

inline int digit(char c) { return c == '0' ? 0 : c == 'l' ? 1 : 2; }

inline std::size_t index_of(const std::string& s) {
  std::size_t idx = 0;
  for (char c : s) idx = 3 * idx + digit(c);
  return idx;
}

// Two-site projectors written out directly: move terms from
// (|0l> - |l0>)/sqrt2 and (|0r> - |r0>)/sqrt2, interaction from (|00> - |lr>)/sqrt2.
inline Eigen::Matrix<double, 9, 9> local_term(double move, double interaction) {
  Eigen::Matrix<double, 9, 9> m = Eigen::Matrix<double, 9, 9>::Zero();
  auto add = [&m](int a, int b, double w) {
    Eigen::Matrix<double, 9, 1> v = Eigen::Matrix<double, 9, 1>::Zero();
    v(a) = 1.0 / std::sqrt(2.0);
    v(b) = -1.0 / std::sqrt(2.0);
    m += w * v * v.transpose();
  };
  add(0 * 3 + 1, 1 * 3 + 0, move);
  add(0 * 3 + 2, 2 * 3 + 0, move);
  add(0 * 3 + 0, 1 * 3 + 2, interaction);
  return m;
}

// Dense chain Hamiltonian on all 3^n strings.
inline Eigen::MatrixXd dense_chain(unsigned n, double move = 1.0, double interaction = 1.0, double left_wall = 1.0,
                                   double right_wall = 1.0) {
  const auto strings = all_strings(n);
  const std::size_t dim = strings.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const auto local = local_term(move, interaction);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& s = strings[i];
    if (s.front() == 'r') h(i, i) += left_wall;
    if (s.back() == 'l') h(i, i) += right_wall;
    for (unsigned j = 0; j + 1 < n; ++j) {
      const int in = 3 * digit(s[j]) + digit(s[j + 1]);
      for (int out = 0; out < 9; ++out) {
        if (local(out, in) == 0.0) continue;
        std::string t = s;
        t[j] = "0lr"[out / 3];
        t[j + 1] = "0lr"[out % 3];
        h(index_of(t), i) += local(out, in);
      }
    }
  }
  return h;
}

inline std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

inline double binom(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Motzkin numbers by counting all strings with no unmatched brackets.
inline std::uint64_t motzkin_by_count(unsigned n) {
  std::uint64_t c = 0;
  for (const auto& s : all_strings(n))
    if (unmatched(s) == std::pair<int, int>{0, 0}) ++c;
  return c;
}

// Random string over {0,l,r}.
inline std::string random_string(std::mt19937_64& rng, unsigned n) {
  std::uniform_int_distribution<int> d(0, 2);
  std::string s;
  for (unsigned i = 0; i < n; ++i) s += "0lr"[d(rng)];
  return s;
}

// Random Dyck word of given semilength by rejection on shuffled brackets.
inline std::string random_dyck(std::mt19937_64& rng, unsigned k) {
  std::string s(k, 'l');
  s += std::string(k, 'r');
  while (true) {
    std::shuffle(s.begin(), s.end(), rng);
    if (unmatched(s) == std::pair<int, int>{0, 0}) return s;
  }
}

}  // namespace oracle
