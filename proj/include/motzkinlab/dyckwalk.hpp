#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/SparseCore>

#include "motzkinlab/combinatorics.hpp"
#include "motzkinlab/sparse_operator.hpp"

namespace motzkin {

// All Dyck words of semilength 0..floor(n/2), grouped by level, each level in
// lexicographic order.
class DyckBasis {
 public:
  explicit DyckBasis(unsigned n);

  unsigned n() const { return n_; }
  unsigned max_level() const { return n_ / 2; }
  std::size_t size() const { return words_.size(); }
  const DyckWord& word(std::size_t i) const { return words_[i]; }
  const std::vector<DyckWord>& words() const { return words_; }
  unsigned level(std::size_t i) const { return static_cast<unsigned>(words_[i].semilength()); }
  std::size_t level_begin(unsigned k) const { return offsets_[k]; }
  std::size_t level_end(unsigned k) const { return offsets_[k + 1]; }

  // Index of a word, or size() if it is not in the basis.
  std::size_t find(const std::string& text) const;

 private:
  unsigned n_;
  std::vector<DyckWord> words_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Neighbour of a Dyck word under one lr insertion or removal, with the number
// of distinct adjacent "lr" factors that realise the move.
struct DyckMove {
  std::size_t target;
  unsigned multiplicity;
};

// Words reachable by inserting one adjacent "lr" (within the basis).
std::vector<DyckMove> insertions(const DyckBasis& basis, std::size_t index);
// Words reachable by deleting one adjacent "lr" factor.
std::vector<DyckMove> removals(const DyckBasis& basis, std::size_t index);
// Number of adjacent "lr" factors.
unsigned lr_factors(const std::string& word);

// Columns V|s> = C(n,2m)^{-1/2} sum_{Dyck(u)=s} |u>; rows follow the
// ClassRanker order of the Motzkin space.
Eigen::SparseMatrix<double> build_isometry(unsigned n);
// max |V^T V - I|.
double isometry_defect(unsigned n);

// Closed-form effective Hamiltonian from zero-placement counting.
SparseOperator build_heff(unsigned n);
// V^T H_int V evaluated as a matrix product; n <= 14.
SparseOperator build_heff_product(unsigned n);

// Amplitudes sqrt(C(n,2m)/M_n) on the Dyck basis.
std::vector<double> dyck_ground_state(unsigned n);
// pi(s) = C(n,2m)/M_n, exact.
std::vector<Rational> dyck_stationary(unsigned n);

struct WalkEntry {
  std::uint32_t col;
  Rational value;
};

struct WalkMatrix {
  DyckBasis states;
  std::vector<Rational> pi;
  std::vector<std::vector<WalkEntry>> rows;  // sorted by column, diagonal included

  Rational at(std::size_t s, std::size_t t) const;
  bool rows_sum_to_one() const;
  bool detailed_balance() const;
  bool stationary() const;  // pi P == pi exactly
  Eigen::MatrixXd to_dense() const;
};

// P(s,t) = delta - (1/n) <s|H_eff|t> sqrt(pi(t)/pi(s)), in closed form.
WalkMatrix build_walk(unsigned n);

struct WalkBounds {
  unsigned n = 0;
  Rational min_insert;   // smallest P(s,t) with |t| = |s| + 1
  Rational min_remove;   // smallest P(s,t) with |t| = |s| - 1
  Rational min_diagonal;
  bool insert_ok = false;    // min_insert >= 1/(2 n^3)
  bool remove_ok = false;    // min_remove >= 1/(2 n^2)
  bool diagonal_ok = false;  // min_diagonal >= 1/2
};

WalkBounds walk_bounds(const WalkMatrix& walk);

struct WalkGap {
  unsigned n = 0;
  std::size_t dim = 0;
  double lambda2_p = 0.0;
  double gap_p = 0.0;  // 1 - lambda2(P)
  double lambda2_heff = 0.0;
  double identity_residual = 0.0;  // |lambda2(H_eff) - n (1 - lambda2(P))|
  Rational min_insert;
  Rational min_remove;
};

// lambda2(P) from the nonsymmetric dense P; lambda2(H_eff) from a separate
// symmetric solve.
WalkGap walk_gap(unsigned n);

struct EpsilonComparison {
  unsigned n = 0;
  double eps = 0.0;
  double lambda2_h = 0.0;
  double lambda2_heps = 0.0;
};

// Second eigenvalue of H and of H_move + eps H_int (both walls) on the full
// space; the first dominates the second for eps <= 1.
EpsilonComparison epsilon_comparison(unsigned n, double eps);

}  // namespace motzkin
