#pragma once

#include <string>
#include <vector>

#include "motzkinlab/combinatorics.hpp"
#include "motzkinlab/hamiltonian.hpp"
#include "motzkinlab/sparse_operator.hpp"

namespace motzkin {

// ---- marked strings ----

// Class C_{p,0}(n) rewritten over {0,l,r,x,y}: the first unmatched right
// bracket becomes x, the others y. Order follows ClassRanker on C_{p,0}.
std::vector<std::string> marked_basis(unsigned n, unsigned p);
std::string mark_unmatched(std::string_view s);

struct MarkedTerms {
  double x_wall = 1.0;  // |x><x| on the first site
  std::vector<double> pi;       // n-1 bond weights for Pi
  std::vector<double> theta_x;  // n-1 bond weights for the 0x <-> x0 projector
  std::vector<double> theta_y;  // n-1 bond weights for the 0y <-> y0 projector

  static MarkedTerms uniform(unsigned n, double x_wall, double pi, double theta_x, double theta_y);
};

SparseOperator marked_operator(unsigned n, unsigned p, const MarkedTerms& terms);

// All terms: the marked image of the simplified Hamiltonian on C_{p,0}.
SparseOperator build_htilde(unsigned n, unsigned p);
// |x><x|_1 + sum Pi + Theta^x on the single-x space (p = 1).
SparseOperator build_hx(unsigned n);
// sum Pi alone on the single-x space.
SparseOperator build_hx0(unsigned n);

// max |<s|H|t> - <s~|H~|t~>| against the simplified sector block C_{p,0}.
double marked_equivalence_defect(unsigned n, unsigned p);

struct Hx0Structure {
  unsigned n = 0;
  std::size_t zero_modes = 0;     // eigenvalues below 1e-9; expected n
  double lambda_next = 0.0;       // smallest eigenvalue above the zero modes
  double interval_minimum = 0.0;  // min over x positions of the two interval gaps
  double ground_overlap_defect = 0.0;  // 1 - weight of the |psi_j> inside the zero space
};

Hx0Structure hx0_structure(unsigned n);

// ---- hopping chain ----

struct HoppingChain {
  unsigned n = 0;
  std::vector<Rational> alpha_sq;  // j = 1..n-1 at index j-1
  std::vector<Rational> beta_sq;

  // |1><1| (if with_potential) + sum_j Gamma_{j,j+1}.
  SparseOperator to_operator(bool with_potential = true) const;
  bool amplitudes_in_range() const;  // all in [1/6, 1/2]
  // Gamma_j = w w^T with w = (alpha_j, -beta_j), so its one nonzero
  // eigenvalue is alpha_j^2 + beta_j^2 and Gamma_j^2 = that times Gamma_j.
  std::vector<Rational> gamma_weights() const;
  // Number of bonds whose Gamma is idempotent.
  std::size_t idempotent_gammas() const;
};

HoppingChain build_hopping(unsigned n);

// Every alpha^2 and beta^2 for chains of n <= n_max lies in [1/6, 1/2]; each
// value is M_{k-1}/(2 M_k) for some 1 <= k <= n_max - 1.
bool hopping_amplitudes_bounded(unsigned n_max);

struct FirstOrderCheck {
  unsigned n = 0;
  bool diagonal_alpha = false;  // <psi_j|Theta_j|psi_j> = alpha_j^2
  bool diagonal_beta = false;   // <psi_{j+1}|Theta_j|psi_{j+1}> = beta_j^2
  bool off_diagonal = false;    // <psi_j|Theta_j|psi_{j+1}> = -alpha_j beta_j (squared, with sign)
  bool ok() const { return diagonal_alpha && diagonal_beta && off_diagonal; }
};

// Contracts single-bond Theta^x operators from the marked space with the
// |psi_j>, exactly.
FirstOrderCheck first_order_check(unsigned n);

// |g> ~ sum_j sqrt(M_{j-1} M_{n-j}) |j>, normalized.
std::vector<double> hopping_ground(unsigned n);
std::vector<Rational> hopping_stationary(unsigned n);

struct HoppingWalk {
  unsigned n = 0;
  std::vector<Rational> pi;
  std::vector<Rational> up;    // P(j, j+1), index j-1
  std::vector<Rational> down;  // P(j+1, j), index j-1
  std::vector<Rational> stay;  // P(j, j), index j-1

  bool rows_sum_to_one() const;
  bool stationary() const;
  bool detailed_balance() const;
};

HoppingWalk hopping_walk(unsigned n);

struct HoppingGap {
  unsigned n = 0;
  double gap = 0.0;        // 1 - lambda2(P)
  double lambda2_move = 0.0;
  Rational rho;            // straight-line canonical paths
  double bound = 0.0;      // 1 / (rho (n-1))
  double lambda1_with_potential = 0.0;
  double pi_first = 0.0;   // pi(1)
  double pi_ratio = 0.0;   // max pi / min pi
};

HoppingGap hopping_gap(unsigned n);

// ---- sectors ----

struct SectorEnergy {
  unsigned n = 0;
  SectorLabel label;
  Variant variant = Variant::Full;
  double lambda1 = 0.0;
  std::size_t dim = 0;
};

SectorEnergy sector_energy(unsigned n, SectorLabel label, Variant variant = Variant::Simplified);

// Full ascending spectrum of one sector block (dense); dim <= 4000.
std::vector<double> sector_spectrum(unsigned n, SectorLabel label, Variant variant);

// max over eigenvalues of |spectrum(a) - spectrum(b)|; +inf when dimensions differ.
double spectrum_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace motzkin
