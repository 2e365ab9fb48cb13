#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "motzkinlab/eigensolve.hpp"
#include "motzkinlab/errors.hpp"
#include "motzkinlab/hamiltonian.hpp"
#include "oracles.hpp"

using namespace motzkin;

namespace {

// Sparse symmetric matrix with a few random off-diagonals per row.
SparseOperator random_symmetric(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> col(0, dim - 1);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < dim; ++i) {
    t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), 4.0 * u(rng)});
    for (int k = 0; k < 3; ++k) {
      const auto j = col(rng);
      const double v = u(rng);
      t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), v});
      t.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i), v});
    }
  }
  return SparseOperator(dim, std::move(t));
}

}  // namespace

TEST_CASE("Krylov solver agrees with dense diagonalization on random matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t dim = 300 + 97 * trial;
    const auto op = random_symmetric(rng, dim);
    const auto exact = oracle::sorted_eigenvalues(op.to_dense());
    EigenOptions opts;
    opts.k = 3;
    const auto res = lanczos_eigenpairs(op, opts);
    CHECK_FALSE(res.dense);
    for (int i = 0; i < 3; ++i) {
      CHECK(res.values[i] == doctest::Approx(exact[i]).epsilon(1e-9));
      CHECK(res.residuals[i] < 1e-8);
      const auto hv = op.apply(res.vectors[i]);
      double r = 0.0;
      for (std::size_t j = 0; j < dim; ++j) r = std::max(r, std::abs(hv[j] - res.values[i] * res.vectors[i][j]));
      CHECK(r < 1e-8);
    }
  }
}

TEST_CASE("solver rejects bad arguments") {
  const auto h = build_hamiltonian(3);
  CHECK_THROWS_AS(lowest_eigenpairs(h, 0), InputError);
  CHECK_THROWS_AS(lowest_eigenpairs(h, 1, -1.0), InputError);
  CHECK_THROWS_AS(gap_at(1), InputError);
  CHECK_THROWS_AS(gap_at(4, GapMethod::Sectors, kDefaultTol, 1.5), InputError);
  CHECK_THROWS_AS(gap_scan(5, 4), InputError);
}

TEST_CASE("seeded runs are reproducible") {
  const auto h = build_hamiltonian(8);
  EigenOptions opts;
  opts.k = 2;
  const auto a = lanczos_eigenpairs(h, opts);
  const auto b = lanczos_eigenpairs(h, opts);
  CHECK(a.values == b.values);
  CHECK(a.vectors == b.vectors);
}

TEST_CASE("least squares recovers exact lines") {
  const auto fit = least_squares({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.rms < 1e-14);
  const auto ll = loglog_fit({2, 4, 8}, {0.5, 0.125, 0.03125});
  CHECK(ll.slope == doctest::Approx(-2.0));
  CHECK_THROWS_AS(least_squares({1}, {1}), InputError);
}

TEST_CASE("clustering") {
  const auto c = cluster_values({0.0, 1e-12, 0.5, 0.5 + 1e-11, 2.0});
  REQUIRE(c.size() == 3);
  CHECK(c[0].size() == 2);
  CHECK(c[1].size() == 2);
  CHECK(*cluster_gap({0.0, 1e-12, 0.5}) == doctest::Approx(0.5));
  CHECK_FALSE(cluster_gap({1.0, 1.0}).has_value());
}

TEST_CASE("gap at n = 3") {
  const auto row = gap_at(3);
  CHECK(row.gap == doctest::Approx(0.0809969).epsilon(1e-6));
  CHECK(std::abs(row.lambda1) < 1e-12);
  CHECK(row.one_unmatched);
  CHECK(row.sector_of_first_excited == "0:1|1:0");
}

TEST_CASE("sector-restricted gaps equal dense full-space gaps") {
  for (unsigned n = 2; n <= 6; ++n) {
    const auto exact = oracle::sorted_eigenvalues(oracle::dense_chain(n));
    const auto row = gap_at(n);
    CHECK(row.lambda1 == doctest::Approx(exact[0]).epsilon(1e-10));
    CHECK(row.lambda2 == doctest::Approx(exact[1]).epsilon(1e-10));
    const auto full = gap_at(n, GapMethod::FullSpace);
    CHECK(full.gap == doctest::Approx(row.gap).epsilon(1e-10));
  }
}

TEST_CASE("eps variant gaps") {
  for (unsigned n = 3; n <= 5; ++n) {
    const auto exact = oracle::sorted_eigenvalues(oracle::dense_chain(n, 1.0, 0.5, 1.0, 1.0));
    CHECK(gap_at(n, GapMethod::Sectors, kDefaultTol, 0.5).gap == doctest::Approx(exact[1] - exact[0]).epsilon(1e-10));
    CHECK(gap_at(n, GapMethod::FullSpace, kDefaultTol, 0.5).gap ==
          doctest::Approx(exact[1] - exact[0]).epsilon(1e-10));
  }
}

TEST_CASE("gap scan fit") {
  const auto single = gap_scan(3, 3);
  CHECK(single.rows.size() == 1);
  CHECK_FALSE(single.fit.has_value());
  const auto scan = gap_scan(3, 9);
  REQUIRE(scan.fit.has_value());
  CHECK(scan.fit->points == 7);
  CHECK(scan.fit->slope < -2.6);
  CHECK(scan.fit->slope > -3.2);
  for (std::size_t i = 1; i < scan.rows.size(); ++i) CHECK(scan.rows[i].gap < scan.rows[i - 1].gap);
}

TEST_CASE("H_move gap on the Motzkin space is the Heisenberg gap") {
  for (unsigned n = 4; n <= 10; ++n) {
    const auto c = heisenberg_gap_check(n);
    CHECK(c.analytic == doctest::Approx(1.0 - std::cos(std::acos(-1.0) / n)));
    CHECK(std::abs(c.difference) < 1e-9);
  }
}
