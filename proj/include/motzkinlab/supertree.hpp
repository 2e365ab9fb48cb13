#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "motzkinlab/combinatorics.hpp"
#include "motzkinlab/dyckwalk.hpp"

namespace motzkin {

// ---- stochastic parent map ----

// X_i = C_i / C_{i-1}.
Rational growth_ratio(unsigned i);
// p_i for words of semilength n, 1 <= i <= n-2.
Rational split_probability(unsigned n, unsigned i);

struct SplitConditions {
  unsigned n = 0;
  bool first = false;     // p_1 = X_n - X_{n-1}
  bool last = false;      // p_{n-2} = 1 - (X_n - X_{n-1})
  bool interior = false;  // p_{i+1} X_{i+1} + (1 - p_i) X_{n-i-1} = X_n, i = 1..n-3
  bool symmetric = false; // p_i + p_{n-i-1} = 1
  bool in_unit_interval = false;
  bool all() const { return first && last && interior && symmetric && in_unit_interval; }
};

// Exact check of the closed-form p_i against every constraint at one n.
SplitConditions split_conditions(unsigned n);

using ParentDistribution = std::map<std::string, Rational>;

// Memoized recursive rule table: b = l s r t with s of semilength i.
class StochasticParentMap {
 public:
  const ParentDistribution& distribution(const DyckWord& b);

 private:
  std::map<std::string, ParentDistribution> memo_;
};

struct StochasticLevelCheck {
  unsigned n = 0;
  bool normalized = false;        // every distribution sums to 1
  bool single_removal = false;    // support only on one-pair removals
  bool uniform_marginal = false;  // sum_b Pr[f(b) = a] = X_n for every a
  Rational min_marginal;
  Rational max_marginal;
};

// Enumerates D_n; n <= 12.
StochasticLevelCheck check_stochastic_level(unsigned n, StochasticParentMap& map);

// ---- deterministic trees ----

inline constexpr unsigned kSupertreeCap = 9;
inline constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

enum class ParentRule { Flow, Recursive };

// Nodes are the Dyck words of semilength 0..k_max (indices as in DyckBasis).
struct Supertree {
  DyckBasis nodes;
  ParentRule rule = ParentRule::Flow;
  std::vector<std::size_t> parent;  // kNoParent at the root
  std::vector<std::vector<std::size_t>> children;

  unsigned k_max() const { return nodes.max_level(); }
  // Ancestor of a node at a given level (the node itself at its own level).
  std::size_t ancestor(std::size_t node, unsigned level) const;
};

// Integral degree-constrained matching per level (child degree 1, parent
// degree in [1,4]) via bounded flow over all one-pair removals.
Supertree flow_supertree(unsigned k_max);

// Every word picks between its two recursive-rule parents l f(s) r t and
// l s r f(t); the picks are made integral by a bounded flow restricted to
// those two candidates.
Supertree recursive_supertree(unsigned k_max);

struct SupertreeCheck {
  bool single_removal = false;
  bool surjective = false;
  bool children_in_range = false;  // every non-leaf level node has 1..4 children
  bool catalan_levels = false;
  std::vector<std::size_t> level_sizes;
  std::size_t max_children = 0;
  bool ok() const { return single_removal && surjective && children_in_range && catalan_levels; }
};

SupertreeCheck check_supertree(const Supertree& tree);

// ---- canonical paths ----

// Sequence of basis indices from s to t. Shrinks u toward the root and grows
// v toward t in alternation; the first move grows when |s| < |t| and shrinks
// otherwise.
std::vector<std::size_t> canonical_path(const Supertree& tree, std::size_t s, std::size_t t);

struct PathCheck {
  bool steps_are_edges = false;
  bool within_length = false;   // length <= 2n
  bool interval = false;        // min(|s|,|t|) <= |uv| <= max(|s|,|t|) for |s| != |t|
  bool relaxed_interval = false;  // for |s| == |t|: |uv| in [|s|-1, |s|]
  std::size_t max_length = 0;
  std::size_t pairs = 0;
  std::size_t strict_violations = 0;  // equal-length pairs leaving the strict interval
  bool ok() const { return steps_are_edges && within_length && interval && relaxed_interval; }
};

// Builds every ordered pair's path for a chain of n sites and validates it.
PathCheck check_canonical_paths(unsigned n);

struct EdgeLoad {
  unsigned n = 0;
  Rational rho;
  double rho_value = 0.0;
  std::size_t max_length = 0;
  double bound = 0.0;     // 1 / (rho l)
  double true_gap = 0.0;  // 1 - lambda2(P)
  std::string worst_from, worst_to;
};

// Exact maximum edge load over directed edges; n <= 14.
EdgeLoad edge_load(unsigned n);

}  // namespace motzkin
