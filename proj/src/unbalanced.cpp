#include "motzkinlab/unbalanced.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "motzkinlab/eigensolve.hpp"
#include "motzkinlab/errors.hpp"

namespace motzkin {

namespace {

constexpr unsigned kMarkedCap = 12;

void require_marked(unsigned n, unsigned p) {
  if (n < 1) throw InputError("marked strings: n must be positive");
  if (p < 1 || p > n) throw InputError("marked strings: need 1 <= p <= n");
  if (n > kMarkedCap) throw ResourceError("marked strings: n <= " + std::to_string(kMarkedCap));
}

// Rank-one swap projector onto (|ab> - |ba'>)/sqrt(2), for each listed pair.
struct SwapRule {
  const char* left;
  const char* right;
};

constexpr SwapRule kPiRules[] = {{"00", "lr"}, {"0l", "l0"}, {"0r", "r0"}};
constexpr SwapRule kThetaX[] = {{"0x", "x0"}};
constexpr SwapRule kThetaY[] = {{"0y", "y0"}};

void add_swaps(const std::string& s, std::size_t row, std::size_t bond, double weight,
               std::span<const SwapRule> rules, const std::unordered_map<std::string, std::uint32_t>& index,
               std::vector<Triplet>& out) {
  if (weight == 0.0) return;
  const char a = s[bond], b = s[bond + 1];
  for (const auto& rule : rules) {
    for (int side = 0; side < 2; ++side) {
      const char* here = side == 0 ? rule.left : rule.right;
      const char* there = side == 0 ? rule.right : rule.left;
      if (a != here[0] || b != here[1]) continue;
      std::string t = s;
      t[bond] = there[0];
      t[bond + 1] = there[1];
      const auto it = index.find(t);
      if (it == index.end()) throw InternalError("marked_operator: move leaves the basis at " + s);
      const auto r = static_cast<std::uint32_t>(row);
      out.push_back({r, r, 0.5 * weight});
      out.push_back({r, it->second, -0.5 * weight});
    }
  }
}

// Compares two operators on the same basis entry by entry.
double operator_distance(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& t : a.triplets()) worst = std::max(worst, std::abs(t.value - b.at(t.row, t.col)));
  for (const auto& t : b.triplets()) worst = std::max(worst, std::abs(t.value - a.at(t.row, t.col)));
  return worst;
}

std::vector<std::size_t> x_positions(const std::vector<std::string>& basis) {
  std::vector<std::size_t> pos;
  pos.reserve(basis.size());
  for (const auto& s : basis) pos.push_back(s.find('x'));
  return pos;
}

void require_hopping(unsigned n) {
  if (n < 2) throw InputError("hopping chain: n must be at least 2");
}

}  // namespace

std::string mark_unmatched(std::string_view s) {
  std::string out(s);
  int depth = 0;
  bool first = true;
  for (char& c : out) {
    if (c == 'l') {
      ++depth;
    } else if (c == 'r') {
      if (depth > 0) {
        --depth;
      } else {
        c = first ? 'x' : 'y';
        first = false;
      }
    }
  }
  return out;
}

std::vector<std::string> marked_basis(unsigned n, unsigned p) {
  require_marked(n, p);
  const ClassRanker ranker(n, {static_cast<int>(p), 0});
  std::vector<std::string> out;
  out.reserve(ranker.size());
  for (std::uint64_t r = 0; r < ranker.size(); ++r) out.push_back(mark_unmatched(ranker.unrank(r).str()));
  return out;
}

MarkedTerms MarkedTerms::uniform(unsigned n, double x_wall, double pi, double theta_x, double theta_y) {
  const std::size_t bonds = n > 0 ? n - 1 : 0;
  return {x_wall, std::vector<double>(bonds, pi), std::vector<double>(bonds, theta_x),
          std::vector<double>(bonds, theta_y)};
}

SparseOperator marked_operator(unsigned n, unsigned p, const MarkedTerms& terms) {
  const auto basis = marked_basis(n, p);
  if (terms.pi.size() != n - 1 || terms.theta_x.size() != n - 1 || terms.theta_y.size() != n - 1) {
    throw InputError("marked_operator: bond weight vectors need n-1 entries");
  }
  std::unordered_map<std::string, std::uint32_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<std::uint32_t>(i));
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string& s = basis[i];
    if (s[0] == 'x' && terms.x_wall != 0.0) {
      entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), terms.x_wall});
    }
    for (std::size_t b = 0; b + 1 < n; ++b) {
      add_swaps(s, i, b, terms.pi[b], kPiRules, index, entries);
      add_swaps(s, i, b, terms.theta_x[b], kThetaX, index, entries);
      add_swaps(s, i, b, terms.theta_y[b], kThetaY, index, entries);
    }
  }
  return SparseOperator(basis.size(), std::move(entries),
                        BasisInfo{n, SectorLabel{static_cast<int>(p), 0}, "marked"});
}

SparseOperator build_htilde(unsigned n, unsigned p) {
  return marked_operator(n, p, MarkedTerms::uniform(n, 1.0, 1.0, 1.0, 1.0));
}

SparseOperator build_hx(unsigned n) { return marked_operator(n, 1, MarkedTerms::uniform(n, 1.0, 1.0, 1.0, 0.0)); }

SparseOperator build_hx0(unsigned n) { return marked_operator(n, 1, MarkedTerms::uniform(n, 0.0, 1.0, 0.0, 0.0)); }

double marked_equivalence_defect(unsigned n, unsigned p) {
  const auto tilde = build_htilde(n, p);
  const auto block = sector_block(n, {static_cast<int>(p), 0}, Variant::Simplified);
  return operator_distance(tilde, block);
}

Hx0Structure hx0_structure(unsigned n) {
  if (n < 2 || n > 9) throw InputError("hx0_structure: n must lie in [2, 9]");
  Hx0Structure h;
  h.n = n;
  const auto basis = marked_basis(n, 1);
  const auto op = build_hx0(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.to_dense());
  const auto& ev = es.eigenvalues();
  while (h.zero_modes < static_cast<std::size_t>(ev.size()) && ev[static_cast<Eigen::Index>(h.zero_modes)] < 1e-9) {
    ++h.zero_modes;
  }
  h.lambda_next = h.zero_modes < static_cast<std::size_t>(ev.size()) ? ev[static_cast<Eigen::Index>(h.zero_modes)]
                                                                     : std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd zero_space = es.eigenvectors().leftCols(static_cast<Eigen::Index>(h.zero_modes));
  const auto pos = x_positions(basis);
  for (unsigned j = 0; j < n; ++j) {
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (pos[i] == j) psi[static_cast<Eigen::Index>(i)] = 1.0;
    }
    psi.normalize();
    h.ground_overlap_defect = std::max(h.ground_overlap_defect, 1.0 - (zero_space.transpose() * psi).squaredNorm());
  }
  // Lowest nonzero level of the bulk chain on each side of x.
  std::vector<double> interval_gap(n, std::numeric_limits<double>::infinity());
  for (unsigned len = 2; len < n; ++len) {
    const auto values = dense_eigenpairs(sector_block(len, {0, 0}, Variant::Bulk).to_dense(), 2, false).values;
    interval_gap[len] = values.at(1);
  }
  h.interval_minimum = std::numeric_limits<double>::infinity();
  for (unsigned j = 1; j <= n; ++j) {
    h.interval_minimum = std::min({h.interval_minimum, interval_gap[j - 1], interval_gap[n - j]});
  }
  return h;
}

SparseOperator HoppingChain::to_operator(bool with_potential) const {
  std::vector<Triplet> entries;
  if (with_potential) entries.push_back({0, 0, 1.0});
  for (unsigned j = 0; j + 1 < n; ++j) {
    const double a2 = alpha_sq[j].get_d(), b2 = beta_sq[j].get_d();
    const double ab = std::sqrt(a2 * b2);
    entries.push_back({j, j, a2});
    entries.push_back({j + 1, j + 1, b2});
    entries.push_back({j, j + 1, -ab});
    entries.push_back({j + 1, j, -ab});
  }
  return SparseOperator(n, std::move(entries), BasisInfo{n, std::nullopt, "hopping"});
}

bool HoppingChain::amplitudes_in_range() const {
  const Rational lo(1, 6), hi(1, 2);
  for (unsigned j = 0; j + 1 < n; ++j) {
    if (alpha_sq[j] < lo || alpha_sq[j] > hi || beta_sq[j] < lo || beta_sq[j] > hi) return false;
  }
  return true;
}

std::vector<Rational> HoppingChain::gamma_weights() const {
  std::vector<Rational> out;
  for (unsigned j = 0; j + 1 < n; ++j) out.push_back(alpha_sq[j] + beta_sq[j]);
  return out;
}

std::size_t HoppingChain::idempotent_gammas() const {
  std::size_t c = 0;
  for (unsigned j = 0; j + 1 < n; ++j) c += (alpha_sq[j] + beta_sq[j] == 1);
  return c;
}

HoppingChain build_hopping(unsigned n) {
  require_hopping(n);
  const auto m = motzkin_numbers(n);
  HoppingChain h;
  h.n = n;
  for (unsigned j = 1; j < n; ++j) {
    Rational a(m[n - j - 1], 2 * m[n - j]);
    Rational b(m[j - 1], 2 * m[j]);
    a.canonicalize();
    b.canonicalize();
    h.alpha_sq.push_back(std::move(a));
    h.beta_sq.push_back(std::move(b));
  }
  return h;
}

bool hopping_amplitudes_bounded(unsigned n_max) {
  require_hopping(n_max);
  const auto m = motzkin_numbers(n_max);
  for (unsigned k = 1; k + 1 <= n_max; ++k) {
    // 1/6 <= M_{k-1}/(2 M_k) <= 1/2  <=>  M_k <= 3 M_{k-1} and M_{k-1} <= M_k
    if (m[k] > 3 * m[k - 1] || m[k - 1] > m[k]) return false;
  }
  return true;
}

FirstOrderCheck first_order_check(unsigned n) {
  if (n < 2 || n > 10) throw InputError("first_order_check: n must lie in [2, 10]");
  const auto basis = marked_basis(n, 1);
  const auto pos = x_positions(basis);
  const auto hop = build_hopping(n);
  std::vector<long> support(n, 0);
  for (auto p : pos) ++support[p];

  FirstOrderCheck c;
  c.n = n;
  c.diagonal_alpha = c.diagonal_beta = c.off_diagonal = true;
  for (unsigned j = 0; j + 1 < n; ++j) {
    MarkedTerms bond = MarkedTerms::uniform(n, 0.0, 0.0, 0.0, 0.0);
    bond.theta_x[j] = 1.0;
    const auto theta = marked_operator(n, 1, bond);
    // Twice every entry is an integer, so these sums are exact.
    long twice_jj = 0, twice_kk = 0, twice_jk = 0;
    for (const auto& t : theta.triplets()) {
      const long v = std::lround(2.0 * t.value);
      if (pos[t.row] == j && pos[t.col] == j) twice_jj += v;
      if (pos[t.row] == j + 1 && pos[t.col] == j + 1) twice_kk += v;
      if (pos[t.row] == j && pos[t.col] == j + 1) twice_jk += v;
    }
    Rational diag_j(twice_jj, 2 * support[j]);
    Rational diag_k(twice_kk, 2 * support[j + 1]);
    diag_j.canonicalize();
    diag_k.canonicalize();
    if (diag_j != hop.alpha_sq[j]) c.diagonal_alpha = false;
    if (diag_k != hop.beta_sq[j]) c.diagonal_beta = false;
    Rational off_sq(CountInt(twice_jk) * twice_jk, 4 * CountInt(support[j]) * support[j + 1]);
    off_sq.canonicalize();
    if (twice_jk >= 0 || off_sq != hop.alpha_sq[j] * hop.beta_sq[j]) c.off_diagonal = false;
  }
  return c;
}

std::vector<Rational> hopping_stationary(unsigned n) {
  require_hopping(n);
  const auto m = motzkin_numbers(n);
  std::vector<Rational> pi;
  CountInt total = 0;
  for (unsigned j = 1; j <= n; ++j) total += m[j - 1] * m[n - j];
  for (unsigned j = 1; j <= n; ++j) {
    Rational x(m[j - 1] * m[n - j], total);
    x.canonicalize();
    pi.push_back(std::move(x));
  }
  return pi;
}

std::vector<double> hopping_ground(unsigned n) {
  std::vector<double> g;
  for (const auto& x : hopping_stationary(n)) g.push_back(std::sqrt(x.get_d()));
  return g;
}

HoppingWalk hopping_walk(unsigned n) {
  const auto hop = build_hopping(n);
  HoppingWalk w;
  w.n = n;
  w.pi = hopping_stationary(n);
  w.up = hop.alpha_sq;
  w.down = hop.beta_sq;
  w.stay.assign(n, Rational(1));
  for (unsigned j = 0; j + 1 < n; ++j) {
    w.stay[j] -= w.up[j];
    w.stay[j + 1] -= w.down[j];
  }
  return w;
}

bool HoppingWalk::rows_sum_to_one() const {
  for (unsigned j = 0; j < n; ++j) {
    Rational s = stay[j];
    if (j + 1 < n) s += up[j];
    if (j > 0) s += down[j - 1];
    if (s != 1 || sgn(stay[j]) < 0) return false;
  }
  return true;
}

bool HoppingWalk::stationary() const {
  for (unsigned k = 0; k < n; ++k) {
    Rational s = pi[k] * stay[k];
    if (k > 0) s += pi[k - 1] * up[k - 1];
    if (k + 1 < n) s += pi[k + 1] * down[k];
    if (s != pi[k]) return false;
  }
  return true;
}

bool HoppingWalk::detailed_balance() const {
  for (unsigned j = 0; j + 1 < n; ++j) {
    if (pi[j] * up[j] != pi[j + 1] * down[j]) return false;
  }
  return true;
}

HoppingGap hopping_gap(unsigned n) {
  if (n < 2 || n > 2000) throw InputError("hopping_gap: n must lie in [2, 2000]");
  const auto walk = hopping_walk(n);
  HoppingGap g;
  g.n = n;
  const auto d = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    p(j, j) = walk.stay[static_cast<std::size_t>(j)].get_d();
    if (j + 1 < d) {
      p(j, j + 1) = walk.up[static_cast<std::size_t>(j)].get_d();
      p(j + 1, j) = walk.down[static_cast<std::size_t>(j)].get_d();
    }
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(p, false);
  std::vector<double> ev;
  for (Eigen::Index i = 0; i < d; ++i) ev.push_back(es.eigenvalues()[i].real());
  std::sort(ev.rbegin(), ev.rend());
  g.gap = 1.0 - ev.at(1);

  const auto hop = build_hopping(n);
  g.lambda2_move = dense_eigenpairs(hop.to_operator(false).to_dense(), 2, false).values.at(1);
  g.lambda1_with_potential = dense_eigenpairs(hop.to_operator(true).to_dense(), 1, false).values.at(0);

  // Straight-line paths: edge (a, a+1) carries every pair s <= a < t.
  std::vector<Rational> prefix(n + 1, Rational(0));
  for (unsigned j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + walk.pi[j];
  g.rho = 0;
  for (unsigned a = 0; a + 1 < n; ++a) {
    const Rational carried = prefix[a + 1] * (1 - prefix[a + 1]);
    g.rho = std::max(g.rho, Rational(carried / (walk.pi[a] * walk.up[a])));
    g.rho = std::max(g.rho, Rational(carried / (walk.pi[a + 1] * walk.down[a])));
  }
  g.bound = 1.0 / (g.rho.get_d() * (n - 1));
  const auto [lo, hi] = std::minmax_element(walk.pi.begin(), walk.pi.end());
  g.pi_first = walk.pi.front().get_d();
  g.pi_ratio = Rational(*hi / *lo).get_d();
  return g;
}

SectorEnergy sector_energy(unsigned n, SectorLabel label, Variant variant) {
  if (label.p < 0 || label.q < 0 || label.excess() == 0) throw InputError("sector_energy: need p + q >= 1");
  SectorEnergy e;
  e.n = n;
  e.label = label;
  e.variant = variant;
  const auto block = sector_block(n, label, variant);
  e.dim = block.dim();
  e.lambda1 = lowest_eigenpairs(block, 1).values.front();
  return e;
}

std::vector<double> sector_spectrum(unsigned n, SectorLabel label, Variant variant) {
  const auto block = sector_block(n, label, variant);
  if (block.dim() > 4000) throw ResourceError("sector_spectrum: block dimension above 4000");
  return dense_eigenpairs(block.to_dense(), static_cast<int>(block.dim()), false).values;
}

double spectrum_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace motzkin
