#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "motzkinlab/combinatorics.hpp"

namespace motzkin {

// Which basis the operator's indices refer to: the full space Sigma^n with
// mixed-radix indices, one class C_{p,q}(n) with ClassRanker indices, or an
// ad-hoc basis described by `name`.
struct BasisInfo {
  unsigned n = 0;
  std::optional<SectorLabel> sector;
  std::string name = "full";
};

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  double value;
};

// Real symmetric operator in compressed-row form. Unit-weight chain
// Hamiltonians only produce multiples of 1/2, which doubles hold exactly.
class SparseOperator {
 public:
  SparseOperator() = default;
  // Duplicates are summed, zeros dropped.
  SparseOperator(std::size_t dim, std::vector<Triplet> entries, BasisInfo basis = {});
  // Takes prepared CSR arrays (rows sorted, no duplicates).
  SparseOperator(std::size_t dim, std::vector<std::uint64_t> row_ptr, std::vector<std::uint32_t> cols,
                 std::vector<double> values, BasisInfo basis);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return values_.size(); }
  const BasisInfo& basis() const { return basis_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;
  double expectation(std::span<const double> x) const;

  double at(std::size_t row, std::size_t col) const;
  std::vector<Triplet> triplets() const;

  std::span<const std::uint64_t> row_ptr() const { return row_ptr_; }
  std::span<const std::uint32_t> cols() const { return cols_; }
  std::span<const double> values() const { return values_; }

  bool is_symmetric(double tol = 0.0) const;
  double max_abs_entry() const;
  // Max absolute row sum; bounds the spectral radius.
  double gershgorin_bound() const;

  SparseOperator shifted(double c) const;
  SparseOperator scaled(double c) const;
  Eigen::MatrixXd to_dense() const;

  // Coordinate text format: "dim nnz" header, then "row col value" lines.
  void write_coordinate(std::ostream& os) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> row_ptr_{0};
  std::vector<std::uint32_t> cols_;
  std::vector<double> values_;
  BasisInfo basis_;
};

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

}  // namespace motzkin
