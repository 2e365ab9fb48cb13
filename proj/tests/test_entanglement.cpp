#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "motzkinlab/eigensolve.hpp"
#include "motzkinlab/entanglement.hpp"
#include "motzkinlab/errors.hpp"
#include "oracles.hpp"

using namespace motzkin;

namespace {

// Number of paths of length len with up/down/flat steps that stay >= 0 and
// end at height m, in doubles.
std::vector<double> left_half_counts(unsigned len) {
  std::vector<double> h(len + 2, 0.0);
  h[0] = 1.0;
  for (unsigned step = 0; step < len; ++step) {
    std::vector<double> next(len + 2, 0.0);
    for (unsigned k = 0; k <= len; ++k) {
      if (h[k] == 0.0) continue;
      next[k] += h[k];
      next[k + 1] += h[k];
      if (k > 0) next[k - 1] += h[k];
    }
    h = std::move(next);
  }
  h.resize(len + 1);
  return h;
}

double entropy_from_counts(const std::vector<double>& c) {
  double total = 0.0;
  for (double x : c) total += x * x;
  double s = 0.0;
  for (double x : c) {
    if (x == 0.0) continue;
    const double p = x * x / total;
    s -= p * std::log2(p);
  }
  return s;
}

}  // namespace

TEST_CASE("n = 4 Schmidt coefficients") {
  const auto s = schmidt_spectrum(4);
  REQUIRE(s.p.size() == 3);
  CHECK(s.p[0] == Rational(4, 9));
  CHECK(s.p[1] == Rational(4, 9));
  CHECK(s.p[2] == Rational(1, 9));
  CHECK(s.schmidt_rank() == 3);
}

TEST_CASE("Schmidt coefficients from brute-force half-chain counts") {
  for (unsigned n = 2; n <= 14; n += 2) {
    std::map<int, unsigned long> left;
    for (const auto& s : oracle::all_strings(n / 2)) {
      const auto [p, q] = oracle::unmatched(s);
      if (p == 0) ++left[q];
    }
    const auto spectrum = schmidt_spectrum(n);
    for (const auto& [m, c] : left) {
      Rational expect(static_cast<unsigned long>(c * c), oracle::motzkin_by_count(n));
      expect.canonicalize();
      CHECK(spectrum.p[m] == expect);
    }
  }
}

TEST_CASE("spectra are normalized with full rank") {
  for (unsigned n = 2; n <= 300; n += 2) {
    const auto s = schmidt_spectrum(n);
    REQUIRE(s.sums_to_one());
    REQUIRE(s.schmidt_rank() == n / 2 + 1);
  }
  CHECK_THROWS_AS(schmidt_spectrum(5), InputError);
}

TEST_CASE("entropy matches an independent path-count computation") {
  for (unsigned n = 2; n <= 400; n += 26) {
    const auto e = entropy(n);
    const double ref = entropy_from_counts(left_half_counts(n / 2));
    CHECK(e.entropy_bits == doctest::Approx(ref).epsilon(1e-10));
    CHECK(e.c_n == doctest::Approx(ref - 0.5 * std::log2(n)).epsilon(1e-10));
    CHECK(e.normalization_exact);
    CHECK(e.schmidt_rank == n / 2 + 1);
  }
}

TEST_CASE("entropy constant at moderate n") {
  const auto e = entropy(1000);
  CHECK(e.c_n > 0.10);
  CHECK(e.c_n < 0.20);
  const auto f = entropy(10000);
  CHECK(f.c_n < e.c_n);
  CHECK(f.c_n > 0.13);
  CHECK(f.c_n < 0.16);
}

TEST_CASE("p_m approaches the m^2 exp(-3m^2/n) profile") {
  const auto a = pm_asymptotic_check(1000);
  const auto b = pm_asymptotic_check(10000);
  CHECK(b.max_relative_deviation < a.max_relative_deviation);
  CHECK(b.argmax_ratio == doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_AS(pm_asymptotic_check(50), InputError);
}

TEST_CASE("reduced density spectrum equals the counted coefficients") {
  for (unsigned n = 2; n <= 10; n += 2) {
    auto counted = schmidt_spectrum(n).as_doubles();
    std::sort(counted.rbegin(), counted.rend());
    const auto rho = reduced_density_spectrum(n);
    for (std::size_t i = 0; i < rho.size(); ++i) {
      CHECK(std::abs(rho[i] - (i < counted.size() ? counted[i] : 0.0)) < 1e-12);
    }
    CHECK(schmidt_reconstruction_error(n) < 1e-14);
  }
  CHECK_THROWS_AS(reduced_density_spectrum(14), ResourceError);
}

TEST_CASE("twisted state is orthogonal and variationally above lambda2") {
  double prev = 2.0;
  for (unsigned n = 2; n <= 10; n += 2) {
    const auto t = twisted_state_energy(n);
    CHECK(t.orthogonality < 1e-12);
    CHECK(t.energy >= gap_at(n).lambda2 - 1e-12);
    CHECK(t.energy < prev);
    prev = t.energy;
  }
  CHECK(twisted_state_energy(4).energy == doctest::Approx(0.675).epsilon(1e-9));
}
