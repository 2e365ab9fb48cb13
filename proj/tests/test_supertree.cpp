#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "motzkinlab/errors.hpp"
#include "motzkinlab/flow.hpp"
#include "motzkinlab/supertree.hpp"
#include "oracles.hpp"

using namespace motzkin;

namespace {

std::set<std::string> one_pair_removals(const std::string& w) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 'l') continue;
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[j] != 'r') continue;
      std::string t = w.substr(0, i) + w.substr(i + 1, j - i - 1) + w.substr(j + 1);
      if (oracle::unmatched(t) == std::pair<int, int>{0, 0}) out.insert(t);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("bounded flow honours lower bounds") {
  // source 0, sink 3, two middle nodes; arc 0->1 must carry at least 2.
  BoundedFlow f(4);
  const auto a = f.add_arc(0, 1, 2, 3);
  const auto b = f.add_arc(0, 2, 0, 1);
  const auto c = f.add_arc(1, 3, 0, 2);
  const auto d = f.add_arc(2, 3, 1, 1);
  REQUIRE(f.solve(0, 3));
  CHECK(f.flow(a) >= 2);
  CHECK(f.flow(a) == f.flow(c));
  CHECK(f.flow(b) == f.flow(d));
  CHECK(f.flow(d) == 1);

  BoundedFlow g(3);
  g.add_arc(0, 1, 2, 2);
  g.add_arc(1, 2, 0, 1);
  CHECK_FALSE(g.solve(0, 2));
}

TEST_CASE("split probabilities against the forward recurrence") {
  // p_1 = X_n - X_{n-1}; p_{i+1} = (X_n - (1 - p_i) X_{n-i-1}) / X_{i+1}.
  for (unsigned n = 3; n <= 80; ++n) {
    Rational p = growth_ratio(n) - growth_ratio(n - 1);
    CHECK(split_probability(n, 1) == p);
    for (unsigned i = 1; i + 2 <= n - 1; ++i) {
      p = (growth_ratio(n) - (1 - p) * growth_ratio(n - i - 1)) / growth_ratio(i + 1);
      REQUIRE(split_probability(n, i + 1) == p);
    }
  }
  // Middle index of odd n sits at 1/2 by symmetry.
  for (unsigned n = 3; n <= 41; n += 2) CHECK(split_probability(n, (n - 1) / 2) == Rational(1, 2));
  CHECK(growth_ratio(3) == Rational(5, 2));
  CHECK_THROWS_AS(split_probability(5, 4), InputError);
}

TEST_CASE("split conditions hold exactly") {
  for (unsigned n = 1; n <= 200; ++n) REQUIRE(split_conditions(n).all());
}

TEST_CASE("stochastic parent map has uniform marginals") {
  StochasticParentMap map;
  for (unsigned n = 1; n <= 8; ++n) {
    const auto c = check_stochastic_level(n, map);
    CHECK(c.normalized);
    CHECK(c.single_removal);
    CHECK(c.uniform_marginal);
    CHECK(c.min_marginal == growth_ratio(n));
    CHECK(c.max_marginal == growth_ratio(n));
  }
}

TEST_CASE("supertrees satisfy the parent conditions") {
  for (auto build : {flow_supertree, recursive_supertree}) {
    const auto tree = build(8);
    const auto check = check_supertree(tree);
    CHECK(check.ok());
    CHECK(check.max_children <= 4);
    const std::vector<std::size_t> head{1, 1, 2, 5, 14, 42};
    CHECK(std::equal(head.begin(), head.end(), check.level_sizes.begin()));
    // Independent check of the single-removal property and child counts.
    for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
      const auto& w = tree.nodes.word(i).str();
      REQUIRE(one_pair_removals(w).count(tree.nodes.word(tree.parent[i]).str()) == 1);
    }
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      if (tree.nodes.level(i) == tree.k_max()) continue;
      REQUIRE(!tree.children[i].empty());
      REQUIRE(tree.children[i].size() <= 4);
    }
    CHECK(tree.parent[0] == kNoParent);
  }
  CHECK_THROWS_AS(flow_supertree(10), ResourceError);
}

TEST_CASE("recursive tree picks one of the two rule parents") {
  const auto tree = recursive_supertree(6);
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    const auto& b = tree.nodes.word(i).str();
    // b = l s r t with l s r the first irreducible block.
    int h = 0;
    std::size_t close = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      h += b[j] == 'l' ? 1 : -1;
      if (h == 0) {
        close = j;
        break;
      }
    }
    const std::string s = b.substr(1, close - 1), t = b.substr(close + 1);
    const std::string parent = tree.nodes.word(tree.parent[i]).str();
    bool ok = s.empty() && t.empty() && parent.empty();
    for (const auto& fs : one_pair_removals(s)) ok = ok || parent == "l" + fs + "r" + t;
    for (const auto& ft : one_pair_removals(t)) ok = ok || parent == "l" + s + "r" + ft;
    REQUIRE(ok);
  }
}

TEST_CASE("canonical paths walk along tree edges") {
  const auto tree = flow_supertree(4);
  for (std::size_t s = 0; s < tree.nodes.size(); ++s) {
    for (std::size_t t = 0; t < tree.nodes.size(); ++t) {
      const auto path = canonical_path(tree, s, t);
      REQUIRE(path.front() == s);
      REQUIRE(path.back() == t);
      for (std::size_t i = 1; i < path.size(); ++i) {
        const unsigned a = tree.nodes.level(path[i - 1]), b = tree.nodes.level(path[i]);
        REQUIRE((a + 1 == b || b + 1 == a));
      }
    }
  }
  CHECK(canonical_path(tree, 3, 3).size() == 1);
}

TEST_CASE("canonical path checks and edge load") {
  for (unsigned n = 2; n <= 10; ++n) {
    const auto check = check_canonical_paths(n);
    CHECK(check.ok());
    CHECK(check.max_length <= 2 * n);
    // Distinct equal-length pairs must step off their own level.
    std::size_t same_level = 0;
    for (unsigned k = 0; k <= n / 2; ++k) {
      const auto c = catalan(k).get_ui();
      same_level += c * (c - 1);
    }
    CHECK(check.strict_violations == same_level);
    const auto load = edge_load(n);
    CHECK(load.bound <= load.true_gap);
    CHECK(load.bound == doctest::Approx(1.0 / (load.rho_value * load.max_length)));
  }
  CHECK(edge_load(2).rho == 2);
}
