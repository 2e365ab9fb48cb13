#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "motzkinlab/errors.hpp"
#include "motzkinlab/hamiltonian.hpp"
#include "oracles.hpp"

using namespace motzkin;

namespace {

double max_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("local projectors") {
  const auto pi = projector_pi();
  const auto move = projector_move();
  const auto inter = projector_int();
  CHECK(pi.declared_rank == 3);
  CHECK(pi.numerical_rank() == 3);
  CHECK(move.numerical_rank() == 2);
  CHECK(inter.numerical_rank() == 1);
  CHECK(pi.is_idempotent());
  CHECK(move.is_idempotent());
  CHECK(inter.is_idempotent());
  CHECK(max_diff(pi.matrix, move.matrix + inter.matrix) < 1e-15);
  CHECK(max_diff(pi.matrix, oracle::local_term(1.0, 1.0)) < 1e-15);
}

TEST_CASE("full Hamiltonian matches a hand-built dense matrix") {
  for (unsigned n = 2; n <= 5; ++n) {
    CHECK(max_diff(build_hamiltonian(n).to_dense(), oracle::dense_chain(n)) < 1e-14);
    CHECK(max_diff(build_hmove(n).to_dense(), oracle::dense_chain(n, 1.0, 0.0, 0.0, 0.0)) < 1e-14);
    CHECK(max_diff(build_hint(n).to_dense(), oracle::dense_chain(n, 0.0, 1.0, 0.0, 0.0)) < 1e-14);
    CHECK(max_diff(build_heps(n, 0.25).to_dense(), oracle::dense_chain(n, 1.0, 0.25, 1.0, 1.0)) < 1e-14);
  }
}

TEST_CASE("sector blocks are restrictions of the full operator") {
  for (unsigned n = 2; n <= 6; ++n) {
    const auto full = build_hamiltonian(n);
    for (int p = 0; p <= static_cast<int>(n); ++p) {
      for (int q = 0; p + q <= static_cast<int>(n); ++q) {
        const auto block = sector_block(n, {p, q});
        const auto strings = enumerate_class(n, {p, q});
        REQUIRE(block.dim() == strings.size());
        for (std::size_t i = 0; i < strings.size(); ++i) {
          for (std::size_t j = 0; j < strings.size(); ++j) {
            REQUIRE(block.at(i, j) == full.at(full_index(strings[i].letters()), full_index(strings[j].letters())));
          }
        }
      }
    }
  }
}

TEST_CASE("variants drop boundary terms") {
  const unsigned n = 5;
  const auto simplified = assemble(n, std::nullopt, chain_terms(n, Variant::Simplified)).to_dense();
  const auto bulk = assemble(n, std::nullopt, chain_terms(n, Variant::Bulk)).to_dense();
  CHECK(max_diff(simplified, oracle::dense_chain(n, 1.0, 1.0, 1.0, 0.0)) < 1e-14);
  CHECK(max_diff(bulk, oracle::dense_chain(n, 1.0, 1.0, 0.0, 0.0)) < 1e-14);
  CHECK(parse_variant("bulk") == Variant::Bulk);
  CHECK_THROWS_AS(parse_variant("eps"), InputError);
}

TEST_CASE("unit-weight entries are multiples of one half") {
  for (unsigned n = 2; n <= 8; ++n) {
    const auto h = build_hamiltonian(n);
    CHECK(h.is_symmetric());
    for (double v : h.values()) REQUIRE(2.0 * v == std::round(2.0 * v));
  }
}

TEST_CASE("the Motzkin state is annihilated") {
  for (unsigned n = 2; n <= 10; ++n) {
    const auto h = build_hamiltonian(n);
    const auto psi = motzkin_state_full(n);
    CHECK(norm(psi) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm(h.apply(psi)) < 1e-13);
  }
}

TEST_CASE("weighted chains keep the Motzkin ground state") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> w(1.0, 4.0);
  for (unsigned n = 3; n <= 7; ++n) {
    std::vector<double> g(n + 1);
    for (auto& x : g) x = w(rng);
    const auto h = build_hamiltonian(n, g);
    CHECK(norm(h.apply(motzkin_state_full(n))) < 1e-12);
  }
  const std::vector<double> bad{1.0, 0.5, 1.0};
  CHECK_THROWS_AS(build_hamiltonian(2, bad), InputError);
}

TEST_CASE("reflection with l and r exchanged is a symmetry") {
  for (unsigned n = 2; n <= 6; ++n) {
    const auto strings = oracle::all_strings(n);
    const auto h = build_hamiltonian(n).to_dense();
    std::vector<std::size_t> image(strings.size());
    for (std::size_t i = 0; i < strings.size(); ++i) {
      std::string t(strings[i].rbegin(), strings[i].rend());
      for (auto& c : t) c = c == 'l' ? 'r' : c == 'r' ? 'l' : c;
      image[i] = oracle::index_of(t);
    }
    for (std::size_t i = 0; i < strings.size(); ++i)
      for (std::size_t j = 0; j < strings.size(); ++j) REQUIRE(h(i, j) == h(image[i], image[j]));
  }
}

TEST_CASE("full index round-trips") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = oracle::random_string(rng, 9);
    const auto spin = SpinString::parse(s);
    const auto idx = full_index(spin.letters());
    CHECK(idx == oracle::index_of(s));
    std::vector<Letter> back(9);
    decode_full_index(idx, back);
    CHECK(SpinString(back) == spin);
  }
}

TEST_CASE("operator algebra helpers") {
  const auto h = build_hamiltonian(3);
  const auto dense = h.to_dense();
  CHECK(max_diff((h + h).to_dense(), 2.0 * dense) == 0.0);
  CHECK(max_diff(h.scaled(3.0).to_dense(), 3.0 * dense) == 0.0);
  CHECK(max_diff(h.shifted(1.0).to_dense(), dense + Eigen::MatrixXd::Identity(27, 27)) == 0.0);
  CHECK(h.gershgorin_bound() >= oracle::sorted_eigenvalues(dense).back());
  std::ostringstream os;
  h.write_coordinate(os);
  std::istringstream is(os.str());
  std::size_t dim = 0, nnz = 0;
  is >> dim >> nnz;
  CHECK(dim == 27);
  CHECK(nnz == h.nnz());
  CHECK_THROWS_AS(class_state_full(15, {0, 0}), ResourceError);
}
