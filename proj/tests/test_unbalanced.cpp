#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "motzkinlab/errors.hpp"
#include "motzkinlab/unbalanced.hpp"
#include "oracles.hpp"

using namespace motzkin;

namespace {

// Dense restriction of a hand-built chain operator to the class (p, q).
Eigen::MatrixXd dense_class_block(unsigned n, int p, int q, double left_wall, double right_wall) {
  const auto strings = oracle::all_strings(n);
  const auto full = oracle::dense_chain(n, 1.0, 1.0, left_wall, right_wall);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < strings.size(); ++i)
    if (oracle::unmatched(strings[i]) == std::pair<int, int>{p, q}) keep.push_back(i);
  Eigen::MatrixXd out(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) out(i, j) = full(keep[i], keep[j]);
  return out;
}

double spectral_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const auto ea = oracle::sorted_eigenvalues(a), eb = oracle::sorted_eigenvalues(b);
  if (ea.size() != eb.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) d = std::max(d, std::abs(ea[i] - eb[i]));
  return d;
}

}  // namespace

TEST_CASE("marking unmatched brackets") {
  CHECK(mark_unmatched("rlr0r") == "xlr0y");
  CHECK(mark_unmatched("0lr") == "0lr");
  const auto basis = marked_basis(4, 2);
  for (const auto& s : basis) {
    CHECK(std::count(s.begin(), s.end(), 'x') == 1);
    CHECK(std::count(s.begin(), s.end(), 'y') == 1);
    CHECK(s.find('x') < s.find('y'));
  }
  CHECK_THROWS_AS(marked_basis(4, 0), InputError);
}

TEST_CASE("marked Hamiltonian reproduces the simplified sector block") {
  for (unsigned n = 1; n <= 7; ++n) {
    for (unsigned p = 1; p <= std::min(n, 3u); ++p) {
      CHECK(marked_equivalence_defect(n, p) < 1e-14);
      const auto oracle_block = dense_class_block(n, static_cast<int>(p), 0, 1.0, 0.0);
      CHECK(spectral_distance(build_htilde(n, p).to_dense(), oracle_block) < 1e-12);
    }
  }
}

TEST_CASE("single-x operator without walls has one zero mode per x position") {
  for (unsigned n = 2; n <= 8; ++n) {
    const auto h = hx0_structure(n);
    CHECK(h.zero_modes == n);
    CHECK(h.ground_overlap_defect < 1e-12);
    CHECK(h.lambda_next >= h.interval_minimum - 1e-12);
  }
}

TEST_CASE("hopping chain amplitudes") {
  for (unsigned n = 2; n <= 30; ++n) {
    const auto hop = build_hopping(n);
    CHECK(hop.amplitudes_in_range());
    for (unsigned j = 1; j < n; ++j) {
      Rational a(motzkin_number(n - j - 1), 2 * motzkin_number(n - j));
      Rational b(motzkin_number(j - 1), 2 * motzkin_number(j));
      a.canonicalize();
      b.canonicalize();
      REQUIRE(hop.alpha_sq[j - 1] == a);
      REQUIRE(hop.beta_sq[j - 1] == b);
    }
  }
  CHECK(hopping_amplitudes_bounded(5000));
}

TEST_CASE("bond operators are rank one but not projectors in general") {
  for (unsigned n = 2; n <= 20; ++n) {
    const auto hop = build_hopping(n);
    const auto w = hop.gamma_weights();
    std::size_t idempotent = 0;
    for (unsigned j = 0; j + 1 < n; ++j) {
      const double a = std::sqrt(hop.alpha_sq[j].get_d()), b = std::sqrt(hop.beta_sq[j].get_d());
      Eigen::Matrix2d g;
      g << a * a, -a * b, -a * b, b * b;
      CHECK((g * g - w[j].get_d() * g).cwiseAbs().maxCoeff() < 1e-15);
      if (w[j] == 1) ++idempotent;
    }
    CHECK(hop.idempotent_gammas() == idempotent);
  }
  // M_0/(2 M_1) + M_0/(2 M_1) = 1 at n = 2: the single bond is a projector.
  CHECK(build_hopping(2).idempotent_gammas() == 1);
  CHECK(build_hopping(6).idempotent_gammas() < 5);
}

TEST_CASE("hopping ground state") {
  const auto g2 = hopping_ground(2);
  CHECK(g2[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(g2[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  for (unsigned n = 2; n <= 40; ++n) {
    const auto g = hopping_ground(n);
    CHECK(norm(build_hopping(n).to_operator(false).apply(g)) < 1e-12);
    Rational total = 0;
    for (const auto& x : hopping_stationary(n)) total += x;
    CHECK(total == 1);
  }
}

TEST_CASE("first-order elements are exact") {
  for (unsigned n = 2; n <= 8; ++n) CHECK(first_order_check(n).ok());
}

TEST_CASE("hopping walk") {
  for (unsigned n = 2; n <= 60; ++n) {
    const auto w = hopping_walk(n);
    CHECK(w.rows_sum_to_one());
    CHECK(w.stationary());
    CHECK(w.detailed_balance());
  }
  for (unsigned n : {5u, 20u, 100u}) {
    const auto g = hopping_gap(n);
    CHECK(g.bound <= g.gap);
    CHECK(g.lambda1_with_potential > 0.0);
    CHECK(g.lambda2_move > 0.0);
  }
}

TEST_CASE("unbalanced sectors have positive energy") {
  for (unsigned n = 1; n <= 6; ++n) {
    for (int e = 1; e <= static_cast<int>(n); ++e) {
      for (int p = 0; p <= e; ++p) {
        const auto full = sector_energy(n, {p, e - p}, Variant::Full);
        CHECK(full.lambda1 > 0.0);
        CHECK(full.dim == class_size(n, static_cast<unsigned>(e)).get_ui());
        const auto simplified = sector_energy(n, {p, e - p}, Variant::Simplified);
        CHECK(full.lambda1 >= simplified.lambda1 - 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(sector_energy(4, {0, 0}), InputError);
}

TEST_CASE("simplified spectra depend only on the excess when p > 0") {
  for (unsigned n = 2; n <= 7; ++n) {
    for (int e = 2; e <= static_cast<int>(n); ++e) {
      const auto reference = sector_spectrum(n, {e, 0}, Variant::Simplified);
      for (int p = 1; p < e; ++p)
        CHECK(spectrum_distance(reference, sector_spectrum(n, {p, e - p}, Variant::Simplified)) < 1e-10);
    }
  }
  // (1,1) against (2,0) through the dense oracle.
  CHECK(spectral_distance(dense_class_block(6, 1, 1, 1.0, 0.0), dense_class_block(6, 2, 0, 1.0, 0.0)) < 1e-10);
  CHECK(spectrum_distance({1.0}, {1.0, 2.0}) == INFINITY);
}
