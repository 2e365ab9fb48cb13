#include "motzkinlab/dyckwalk.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>

#include "motzkinlab/eigensolve.hpp"
#include "motzkinlab/errors.hpp"
#include "motzkinlab/hamiltonian.hpp"

namespace motzkin {

namespace {

constexpr unsigned kWalkCap = 16;

void require_chain(unsigned n, unsigned cap, const char* who) {
  if (n < 2) throw InputError(std::string(who) + ": n must be at least 2");
  if (n > cap) throw ResourceError(std::string(who) + ": n exceeds " + std::to_string(cap));
}

// C(n, k) with C(n, k) = 0 for k < 0.
CountInt choose(unsigned n, int k) { return k < 0 ? CountInt(0) : binomial(n, static_cast<unsigned>(k)); }

// Diagonal of H_eff at a word of semilength k with L adjacent lr factors:
// every 00 window and every lr window of a preimage contributes 1/2.
Rational heff_diagonal(unsigned n, unsigned k, unsigned L) {
  const int two_k = static_cast<int>(2 * k);
  Rational d(CountInt(n - 1) * choose(n - 2, two_k) + CountInt(L) * choose(n - 1, two_k - 1),
             2 * choose(n, two_k));
  d.canonicalize();
  return d;
}

std::vector<DyckMove> collect(const DyckBasis& basis, const std::vector<std::string>& targets) {
  std::map<std::size_t, unsigned> counts;
  for (const auto& t : targets) {
    const std::size_t j = basis.find(t);
    if (j != basis.size()) ++counts[j];
  }
  std::vector<DyckMove> out;
  out.reserve(counts.size());
  for (const auto& [j, c] : counts) out.push_back({j, c});
  return out;
}

}  // namespace

DyckBasis::DyckBasis(unsigned n) : n_(n) {
  offsets_.push_back(0);
  for (unsigned k = 0; k <= n / 2; ++k) {
    auto level = enumerate_dyck(k);
    std::sort(level.begin(), level.end());
    for (auto& w : level) {
      index_.emplace(w.str(), words_.size());
      words_.push_back(std::move(w));
    }
    offsets_.push_back(words_.size());
  }
}

std::size_t DyckBasis::find(const std::string& text) const {
  const auto it = index_.find(text);
  return it == index_.end() ? words_.size() : it->second;
}

unsigned lr_factors(const std::string& word) {
  unsigned c = 0;
  for (std::size_t i = 0; i + 1 < word.size(); ++i) c += (word[i] == 'l' && word[i + 1] == 'r');
  return c;
}

std::vector<DyckMove> insertions(const DyckBasis& basis, std::size_t index) {
  const std::string& s = basis.word(index).str();
  std::vector<std::string> targets;
  for (std::size_t i = 0; i <= s.size(); ++i) targets.push_back(s.substr(0, i) + "lr" + s.substr(i));
  return collect(basis, targets);
}

std::vector<DyckMove> removals(const DyckBasis& basis, std::size_t index) {
  const std::string& s = basis.word(index).str();
  std::vector<std::string> targets;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == 'l' && s[i + 1] == 'r') targets.push_back(s.substr(0, i) + s.substr(i + 2));
  }
  return collect(basis, targets);
}

Eigen::SparseMatrix<double> build_isometry(unsigned n) {
  require_chain(n, kFullSpaceCap, "build_isometry");
  const DyckBasis basis(n);
  const ClassRanker ranker(n, {0, 0});
  std::vector<double> column_value(n / 2 + 1);
  for (unsigned k = 0; k <= n / 2; ++k) column_value[k] = 1.0 / std::sqrt(binomial(n, 2 * k).get_d());

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(ranker.size());
  std::vector<Letter> u(n);
  std::string dyck;
  for (std::uint64_t r = 0; r < ranker.size(); ++r) {
    ranker.unrank_into(r, u);
    dyck.clear();
    for (Letter x : u) {
      if (x != Letter::Zero) dyck.push_back(to_char(x));
    }
    const std::size_t col = basis.find(dyck);
    if (col == basis.size()) throw InternalError("build_isometry: Dyck image outside the basis");
    entries.emplace_back(static_cast<int>(r), static_cast<int>(col), column_value[dyck.size() / 2]);
  }
  Eigen::SparseMatrix<double> v(static_cast<Eigen::Index>(ranker.size()), static_cast<Eigen::Index>(basis.size()));
  v.setFromTriplets(entries.begin(), entries.end());
  return v;
}

double isometry_defect(unsigned n) {
  const auto v = build_isometry(n);
  const Eigen::MatrixXd g = Eigen::MatrixXd(v.transpose() * v);
  return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

SparseOperator build_heff(unsigned n) {
  require_chain(n, 64, "build_heff");
  const DyckBasis basis(n);
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const unsigned k = basis.level(i);
    entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i),
                       heff_diagonal(n, k, lr_factors(basis.word(i).str())).get_d()});
    // Gluing the inserted pair leaves n-1 slots holding 2k+1 letters.
    const CountInt glued = binomial(n - 1, 2 * k + 1);
    for (const auto& mv : insertions(basis, i)) {
      Rational sq(CountInt(mv.multiplicity) * mv.multiplicity * glued * glued,
                  4 * binomial(n, 2 * k) * binomial(n, 2 * k + 2));
      sq.canonicalize();
      const double value = -std::sqrt(sq.get_d());
      entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(mv.target), value});
      entries.push_back({static_cast<std::uint32_t>(mv.target), static_cast<std::uint32_t>(i), value});
    }
  }
  return SparseOperator(basis.size(), std::move(entries), BasisInfo{n, std::nullopt, "dyck"});
}

SparseOperator build_heff_product(unsigned n) {
  const auto v = build_isometry(n);
  const auto hint = assemble(n, SectorLabel{0, 0}, ChainTerms::uniform(n, 0.0, 1.0, 0.0, 0.0));
  std::vector<Eigen::Triplet<double>> h_entries;
  for (const auto& t : hint.triplets()) h_entries.emplace_back(t.row, t.col, t.value);
  Eigen::SparseMatrix<double> h(v.rows(), v.rows());
  h.setFromTriplets(h_entries.begin(), h_entries.end());
  Eigen::SparseMatrix<double> prod = (Eigen::SparseMatrix<double>(v.transpose()) * h * v).pruned(1e-15);
  std::vector<Triplet> entries;
  for (int c = 0; c < prod.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(prod, c); it; ++it) {
      entries.push_back({static_cast<std::uint32_t>(it.row()), static_cast<std::uint32_t>(it.col()), it.value()});
    }
  }
  return SparseOperator(static_cast<std::size_t>(prod.rows()), std::move(entries), BasisInfo{n, std::nullopt, "dyck"});
}

std::vector<Rational> dyck_stationary(unsigned n) {
  require_chain(n, 64, "dyck_stationary");
  const DyckBasis basis(n);
  const CountInt total = motzkin_number(n);
  std::vector<Rational> pi;
  pi.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Rational x(binomial(n, 2 * basis.level(i)), total);
    x.canonicalize();
    pi.push_back(std::move(x));
  }
  return pi;
}

std::vector<double> dyck_ground_state(unsigned n) {
  const auto pi = dyck_stationary(n);
  std::vector<double> out;
  out.reserve(pi.size());
  for (const auto& x : pi) out.push_back(std::sqrt(x.get_d()));
  return out;
}

Rational WalkMatrix::at(std::size_t s, std::size_t t) const {
  const auto& row = rows[s];
  const auto it = std::lower_bound(row.begin(), row.end(), t,
                                   [](const WalkEntry& e, std::size_t c) { return e.col < c; });
  return (it != row.end() && it->col == t) ? it->value : Rational(0);
}

bool WalkMatrix::rows_sum_to_one() const {
  for (const auto& row : rows) {
    Rational s = 0;
    for (const auto& e : row) s += e.value;
    if (s != 1) return false;
  }
  return true;
}

bool WalkMatrix::detailed_balance() const {
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (const auto& e : rows[s]) {
      if (pi[s] * e.value != pi[e.col] * at(e.col, s)) return false;
    }
  }
  return true;
}

bool WalkMatrix::stationary() const {
  std::vector<Rational> image(pi.size(), Rational(0));
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (const auto& e : rows[s]) image[e.col] += pi[s] * e.value;
  }
  return image == pi;
}

Eigen::MatrixXd WalkMatrix::to_dense() const {
  const auto d = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (const auto& e : rows[s]) m(static_cast<Eigen::Index>(s), e.col) = e.value.get_d();
  }
  return m;
}

WalkMatrix build_walk(unsigned n) {
  require_chain(n, kWalkCap, "build_walk");
  WalkMatrix w{DyckBasis(n), dyck_stationary(n), {}};
  const DyckBasis& basis = w.states;
  w.rows.resize(basis.size());
  const Rational inv_n(1, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const unsigned k = basis.level(i);
    const CountInt denom = 2 * CountInt(n) * binomial(n, 2 * k);
    auto& row = w.rows[i];
    for (const auto& mv : insertions(basis, i)) {
      Rational p(CountInt(mv.multiplicity) * binomial(n - 1, 2 * k + 1), denom);
      p.canonicalize();
      row.push_back({static_cast<std::uint32_t>(mv.target), p});
    }
    for (const auto& mv : removals(basis, i)) {
      Rational p(CountInt(mv.multiplicity) * choose(n - 1, static_cast<int>(2 * k) - 1), denom);
      p.canonicalize();
      row.push_back({static_cast<std::uint32_t>(mv.target), p});
    }
    Rational diag = 1 - heff_diagonal(n, k, lr_factors(basis.word(i).str())) * inv_n;
    row.push_back({static_cast<std::uint32_t>(i), diag});
    std::sort(row.begin(), row.end(), [](const WalkEntry& a, const WalkEntry& b) { return a.col < b.col; });
  }
  return w;
}

WalkBounds walk_bounds(const WalkMatrix& walk) {
  WalkBounds b;
  b.n = walk.states.n();
  b.min_insert = b.min_remove = b.min_diagonal = 1;
  for (std::size_t s = 0; s < walk.rows.size(); ++s) {
    const unsigned ls = walk.states.level(s);
    for (const auto& e : walk.rows[s]) {
      const unsigned lt = walk.states.level(e.col);
      if (e.col == s) {
        b.min_diagonal = std::min(b.min_diagonal, e.value);
      } else if (lt == ls + 1) {
        b.min_insert = std::min(b.min_insert, e.value);
      } else {
        b.min_remove = std::min(b.min_remove, e.value);
      }
    }
  }
  const CountInt n = b.n;
  b.insert_ok = b.min_insert >= Rational(1, 2 * n * n * n);
  b.remove_ok = b.min_remove >= Rational(1, 2 * n * n);
  b.diagonal_ok = b.min_diagonal >= Rational(1, 2);
  return b;
}

WalkGap walk_gap(unsigned n) {
  const WalkMatrix walk = build_walk(n);
  WalkGap g;
  g.n = n;
  g.dim = walk.rows.size();
  const auto bounds = walk_bounds(walk);
  g.min_insert = bounds.min_insert;
  g.min_remove = bounds.min_remove;

  Eigen::EigenSolver<Eigen::MatrixXd> es(walk.to_dense(), false);
  std::vector<double> ev;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()[i].real());
  std::sort(ev.rbegin(), ev.rend());
  g.lambda2_p = ev.size() > 1 ? ev[1] : ev[0];
  g.gap_p = 1.0 - g.lambda2_p;

  const auto heff = dense_eigenpairs(build_heff(n).to_dense(), 2, false);
  g.lambda2_heff = heff.values.size() > 1 ? heff.values[1] : heff.values[0];
  g.identity_residual = std::abs(g.lambda2_heff - n * g.gap_p);
  return g;
}

EpsilonComparison epsilon_comparison(unsigned n, double eps) {
  if (n < 2 || n > 10) throw InputError("epsilon_comparison: n must lie in [2, 10]");
  EpsilonComparison c;
  c.n = n;
  c.eps = eps;
  c.lambda2_h = lowest_eigenpairs(build_hamiltonian(n), 2, kDefaultTol).values[1];
  c.lambda2_heps = lowest_eigenpairs(build_heps(n, eps), 2, kDefaultTol).values[1];
  return c;
}

}  // namespace motzkin
