#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "motzkinlab/combinatorics.hpp"
#include "motzkinlab/sparse_operator.hpp"

namespace motzkin {

inline constexpr unsigned kFullSpaceCap = 14;

// Two-site operator on C^3 (x) C^3, index 3a + b with letter codes a, b.
struct LocalProjector {
  Eigen::Matrix<double, 9, 9> matrix;
  int declared_rank;

  int numerical_rank(double tol = 1e-12) const;
  bool is_idempotent(double tol = 1e-14) const;
};

LocalProjector projector_pi();
LocalProjector projector_move();
LocalProjector projector_int();

// Per-term weights of the chain. Bond vectors have n-1 entries (bond j joins
// sites j and j+1, 0-based). A zero weight drops the term.
struct ChainTerms {
  double left_wall = 1.0;   // |r><r| on the first site
  double right_wall = 1.0;  // |l><l| on the last site
  std::vector<double> move;
  std::vector<double> interaction;

  static ChainTerms uniform(unsigned n, double move, double interaction, double left_wall,
                            double right_wall);
};

// full: both boundary terms; simplified: first-site |r><r| only; bulk: none.
enum class Variant { Full, Simplified, Bulk };

Variant parse_variant(std::string_view name);
const char* variant_name(Variant v);
ChainTerms chain_terms(unsigned n, Variant v);

// Assemble on the full space (sector == nullopt) or on one class C_{p,q}.
SparseOperator assemble(unsigned n, std::optional<SectorLabel> sector, const ChainTerms& terms,
                        unsigned cap = kDefaultEnumerationCap);

// weights = g_0..g_n (n+1 entries, each >= 1); empty means all ones.
SparseOperator build_hamiltonian(unsigned n, std::span<const double> weights = {});
SparseOperator build_hmove(unsigned n);
SparseOperator build_hint(unsigned n);
// H_move + eps H_int plus both boundary terms, so the Motzkin state stays the
// unique ground state on the full space.
SparseOperator build_heps(unsigned n, double eps);

SparseOperator sector_block(unsigned n, SectorLabel label, Variant variant = Variant::Full,
                            unsigned cap = kDefaultEnumerationCap);

std::uint64_t full_index(std::span<const Letter> letters);
void decode_full_index(std::uint64_t index, std::span<Letter> out);

// Normalized uniform superposition of C_{p,q}(n), in the full-space basis.
std::vector<double> class_state_full(unsigned n, SectorLabel label);
inline std::vector<double> motzkin_state_full(unsigned n) { return class_state_full(n, {0, 0}); }

}  // namespace motzkin
