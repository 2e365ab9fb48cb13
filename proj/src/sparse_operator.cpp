#include "motzkinlab/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "motzkinlab/errors.hpp"

namespace motzkin {

SparseOperator::SparseOperator(std::size_t dim, std::vector<Triplet> entries, BasisInfo basis)
    : dim_(dim), basis_(std::move(basis)) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr_.assign(dim + 1, 0);
  for (std::size_t i = 0; i < entries.size();) {
    const auto& e = entries[i];
    if (e.row >= dim || e.col >= dim) throw InputError("SparseOperator: entry outside dimension");
    double v = 0.0;
    std::size_t j = i;
    while (j < entries.size() && entries[j].row == e.row && entries[j].col == e.col) v += entries[j++].value;
    if (v != 0.0) {
      cols_.push_back(e.col);
      values_.push_back(v);
      ++row_ptr_[e.row + 1];
    }
    i = j;
  }
  for (std::size_t r = 0; r < dim; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

SparseOperator::SparseOperator(std::size_t dim, std::vector<std::uint64_t> row_ptr,
                               std::vector<std::uint32_t> cols, std::vector<double> values,
                               BasisInfo basis)
    : dim_(dim),
      row_ptr_(std::move(row_ptr)),
      cols_(std::move(cols)),
      values_(std::move(values)),
      basis_(std::move(basis)) {
  if (row_ptr_.size() != dim + 1 || cols_.size() != values_.size() || row_ptr_.back() != cols_.size())
    throw InputError("SparseOperator: inconsistent CSR arrays");
}

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    double acc = 0.0;
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * x[cols_[k]];
    y[r] = acc;
  }
}

std::vector<double> SparseOperator::apply(std::span<const double> x) const {
  std::vector<double> y(dim_);
  apply(x, y);
  return y;
}

double SparseOperator::expectation(std::span<const double> x) const {
  const auto y = apply(x);
  return dot(x, y);
}

double SparseOperator::at(std::size_t row, std::size_t col) const {
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(col));
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < dim_; ++r)
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      out.push_back({static_cast<std::uint32_t>(r), cols_[k], values_[k]});
  return out;
}

bool SparseOperator::is_symmetric(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      if (std::abs(at(cols_[k], r) - values_[k]) > tol) return false;
  return true;
}

double SparseOperator::max_abs_entry() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SparseOperator::gershgorin_bound() const {
  double m = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += std::abs(values_[k]);
    m = std::max(m, s);
  }
  return m;
}

SparseOperator SparseOperator::shifted(double c) const {
  auto t = triplets();
  for (std::size_t i = 0; i < dim_; ++i) t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), c});
  return SparseOperator(dim_, std::move(t), basis_);
}

SparseOperator SparseOperator::scaled(double c) const {
  auto v = values_;
  for (double& x : v) x *= c;
  return SparseOperator(dim_, row_ptr_, cols_, std::move(v), basis_);
}

Eigen::MatrixXd SparseOperator::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (std::size_t r = 0; r < dim_; ++r)
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      m(static_cast<Eigen::Index>(r), cols_[k]) = values_[k];
  return m;
}

void SparseOperator::write_coordinate(std::ostream& os) const {
  os << dim_ << ' ' << nnz() << '\n';
  os << std::setprecision(17);
  for (std::size_t r = 0; r < dim_; ++r)
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) os << r << ' ' << cols_[k] << ' ' << values_[k] << '\n';
}

SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim()) throw InputError("operator+: dimension mismatch");
  auto t = a.triplets();
  auto tb = b.triplets();
  t.insert(t.end(), tb.begin(), tb.end());
  return SparseOperator(a.dim(), std::move(t), a.basis());
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace motzkin
