#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "motzkinlab/sparse_operator.hpp"

namespace motzkin {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kClusterTol = 1e-9;
inline constexpr std::size_t kDenseThreshold = 2000;

struct EigenOptions {
  int k = 1;
  double tol = kDefaultTol;
  std::uint64_t seed = 20110622;
  bool want_vectors = true;
  std::size_t dense_threshold = kDenseThreshold;
  // Krylov basis size before a thick restart; 0 picks a default.
  int max_basis = 0;
  // Restart cycles; 0 means 50 k log(dim).
  long max_restarts = 0;
};

struct SpectrumResult {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // empty unless requested
  std::vector<double> residuals;             // ||H v - lambda v||
  long restarts = 0;
  long matvecs = 0;
  bool dense = false;
};

SpectrumResult lowest_eigenpairs(const SparseOperator& op, const EigenOptions& opts);
SpectrumResult lowest_eigenpairs(const SparseOperator& op, int k, double tol = kDefaultTol,
                                 std::uint64_t seed = EigenOptions{}.seed);
// Forces the Krylov path regardless of dimension.
SpectrumResult lanczos_eigenpairs(const SparseOperator& op, const EigenOptions& opts);
// Full dense symmetric diagonalization; returns the k lowest pairs.
SpectrumResult dense_eigenpairs(const Eigen::MatrixXd& m, int k, bool want_vectors = true);

// Groups sorted values whose neighbours lie within tol.
std::vector<std::vector<double>> cluster_values(const std::vector<double>& sorted, double tol = kClusterTol);

// Distance from the lowest cluster to the next one; nullopt if only one cluster.
std::optional<double> cluster_gap(const std::vector<double>& sorted, double tol = kClusterTol);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
  std::size_t points = 0;
};

// Unweighted least squares y = intercept + slope x. Needs two points.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);
// Fit of ln(y) against ln(x).
LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

enum class GapMethod { Sectors, FullSpace };

struct GapRow {
  unsigned n = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap = 0.0;
  // Sectors whose lowest excitation lies in the bottom cluster, e.g. "0:1|1:0".
  std::string sector_of_first_excited;
  bool one_unmatched = false;
  double residual = 0.0;
};

struct GapFit {
  std::vector<GapRow> rows;
  std::optional<LinearFit> fit;  // natural-log fit, n >= 3 only
};

// eps scales the interaction term (1 gives the standard chain); seed fixes
// the Krylov start vectors.
GapRow gap_at(unsigned n, GapMethod method = GapMethod::Sectors, double tol = kDefaultTol, double eps = 1.0,
              std::uint64_t seed = EigenOptions{}.seed);
GapFit gap_scan(unsigned n_min, unsigned n_max, GapMethod method = GapMethod::Sectors,
                double tol = kDefaultTol, double eps = 1.0, std::uint64_t seed = EigenOptions{}.seed);

struct HeisenbergCheck {
  unsigned n = 0;
  double numeric = 0.0;
  double analytic = 0.0;
  double difference = 0.0;
};

// Smallest nonzero eigenvalue of H_move on the Motzkin space against 1 - cos(pi/n).
HeisenbergCheck heisenberg_gap_check(unsigned n);

}  // namespace motzkin
