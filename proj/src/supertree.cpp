#include "motzkinlab/supertree.hpp"

#include <algorithm>
#include <set>

#include "motzkinlab/errors.hpp"
#include "motzkinlab/flow.hpp"
#include "motzkinlab/parallel.hpp"

namespace motzkin {

namespace {

// b = l s r t with s the body of the first bracket.
struct Split {
  std::string s, t;
};

Split split_first(const std::string& b) {
  int h = 0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    h += b[j] == 'l' ? 1 : -1;
    if (h == 0) return {b.substr(1, j - 1), b.substr(j + 1)};
  }
  throw InternalError("split_first: unbalanced word " + b);
}

std::set<std::string> one_pair_removals(const std::string& b) {
  std::set<std::string> out;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (b[i] == 'l' && b[i + 1] == 'r') out.insert(b.substr(0, i) + b.substr(i + 2));
  }
  return out;
}

void require_tree_level(unsigned k_max) {
  if (k_max > kSupertreeCap) throw ResourceError("supertree: k_max exceeds " + std::to_string(kSupertreeCap));
}

// Chooses one parent per child among the candidate arcs so that every parent
// keeps between one and four children.
std::vector<std::size_t> assign_parents(const DyckBasis& nodes, unsigned k,
                                        const std::vector<std::vector<std::size_t>>& candidates) {
  const std::size_t pb = nodes.level_begin(k - 1), pe = nodes.level_end(k - 1);
  const std::size_t cb = nodes.level_begin(k), ce = nodes.level_end(k);
  const std::size_t np = pe - pb, nc = ce - cb;
  const std::size_t source = np + nc, sink = source + 1;
  BoundedFlow flow(np + nc + 2);
  for (std::size_t a = 0; a < np; ++a) flow.add_arc(source, a, 1, 4);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> arcs(nc);  // (arc id, parent)
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t parent : candidates[c]) {
      arcs[c].emplace_back(flow.add_arc(parent - pb, np + c, 0, 1), parent);
    }
    flow.add_arc(np + c, sink, 1, 1);
  }
  if (!flow.solve(source, sink)) return {};
  std::vector<std::size_t> out(nc, kNoParent);
  for (std::size_t c = 0; c < nc; ++c) {
    for (const auto& [arc, parent] : arcs[c]) {
      if (flow.flow(arc) == 1) out[c] = parent;
    }
  }
  return out;
}

void link_children(Supertree& tree) {
  tree.children.assign(tree.nodes.size(), {});
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (tree.parent[i] != kNoParent) tree.children[tree.parent[i]].push_back(i);
  }
}

}  // namespace

Rational growth_ratio(unsigned i) {
  if (i == 0) throw InputError("growth_ratio: i must be positive");
  Rational x(catalan(i), catalan(i - 1));
  x.canonicalize();
  return x;
}

Rational split_probability(unsigned n, unsigned i) {
  if (n < 3 || i < 1 || i > n - 2) throw InputError("split_probability: need 1 <= i <= n-2");
  const CountInt num = CountInt(i) * (i + 1) * (3 * n - 2 * i - 1);
  const CountInt den = CountInt(n) * (n + 1) * (n - 1);
  Rational p(num, den);
  p.canonicalize();
  return p;
}

SplitConditions split_conditions(unsigned n) {
  if (n == 0) throw InputError("split_conditions: n must be positive");
  SplitConditions c;
  c.n = n;
  if (n < 3) {
    c.first = c.last = c.interior = c.symmetric = c.in_unit_interval = true;
    return c;
  }
  auto p = [n](unsigned i) { return split_probability(n, i); };
  const Rational step = growth_ratio(n) - growth_ratio(n - 1);
  c.first = p(1) == step;
  c.last = p(n - 2) == 1 - step;
  c.interior = true;
  for (unsigned i = 1; i + 3 <= n; ++i) {
    if (p(i + 1) * growth_ratio(i + 1) + (1 - p(i)) * growth_ratio(n - i - 1) != growth_ratio(n)) c.interior = false;
  }
  c.symmetric = true;
  c.in_unit_interval = true;
  for (unsigned i = 1; i <= n - 2; ++i) {
    if (p(i) + p(n - i - 1) != 1) c.symmetric = false;
    if (p(i) < 0 || p(i) > 1) c.in_unit_interval = false;
  }
  return c;
}

const ParentDistribution& StochasticParentMap::distribution(const DyckWord& b) {
  if (auto it = memo_.find(b.str()); it != memo_.end()) return it->second;
  const unsigned n = static_cast<unsigned>(b.semilength());
  if (n == 0) throw InputError("StochasticParentMap: the empty word has no parent");
  ParentDistribution out;
  if (n == 1) {
    out[""] = 1;
  } else {
    const auto [s, t] = split_first(b.str());
    const unsigned i = static_cast<unsigned>(s.size() / 2);
    if (i == 0) {
      for (const auto& [a, pr] : distribution(DyckWord::trusted(t))) out["lr" + a] += pr;
    } else if (i == n - 1) {
      for (const auto& [a, pr] : distribution(DyckWord::trusted(s))) out["l" + a + "r"] += pr;
    } else {
      const Rational p = split_probability(n, i);
      for (const auto& [a, pr] : distribution(DyckWord::trusted(s))) out["l" + a + "r" + t] += p * pr;
      for (const auto& [a, pr] : distribution(DyckWord::trusted(t))) out["l" + s + "r" + a] += (1 - p) * pr;
    }
  }
  return memo_.emplace(b.str(), std::move(out)).first->second;
}

StochasticLevelCheck check_stochastic_level(unsigned n, StochasticParentMap& map) {
  if (n == 0 || n > 12) throw InputError("check_stochastic_level: n must lie in [1, 12]");
  StochasticLevelCheck c;
  c.n = n;
  c.normalized = c.single_removal = true;
  std::map<std::string, Rational> marginal;
  for (const auto& w : enumerate_dyck(n - 1)) marginal[w.str()] = 0;
  for (const auto& b : enumerate_dyck(n)) {
    const auto& dist = map.distribution(b);
    const auto allowed = one_pair_removals(b.str());
    Rational total = 0;
    for (const auto& [a, pr] : dist) {
      total += pr;
      if (sgn(pr) > 0 && !allowed.count(a)) c.single_removal = false;
      marginal[a] += pr;
    }
    if (total != 1) c.normalized = false;
  }
  const Rational target = growth_ratio(n);
  c.uniform_marginal = true;
  c.min_marginal = c.max_marginal = marginal.begin()->second;
  for (const auto& [a, m] : marginal) {
    if (m != target) c.uniform_marginal = false;
    c.min_marginal = std::min(c.min_marginal, m);
    c.max_marginal = std::max(c.max_marginal, m);
  }
  return c;
}

std::size_t Supertree::ancestor(std::size_t node, unsigned level) const {
  while (nodes.level(node) > level) node = parent[node];
  return node;
}

Supertree flow_supertree(unsigned k_max) {
  require_tree_level(k_max);
  Supertree tree{DyckBasis(2 * k_max), ParentRule::Flow, {}, {}};
  tree.parent.assign(tree.nodes.size(), kNoParent);
  for (unsigned k = 1; k <= k_max; ++k) {
    const std::size_t cb = tree.nodes.level_begin(k);
    std::vector<std::vector<std::size_t>> candidates(tree.nodes.level_end(k) - cb);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      for (const auto& mv : removals(tree.nodes, cb + c)) candidates[c].push_back(mv.target);
    }
    const auto chosen = assign_parents(tree.nodes, k, candidates);
    if (chosen.empty()) throw InternalError("flow_supertree: no degree-feasible parent map at level " + std::to_string(k));
    std::copy(chosen.begin(), chosen.end(), tree.parent.begin() + static_cast<std::ptrdiff_t>(cb));
  }
  link_children(tree);
  return tree;
}

Supertree recursive_supertree(unsigned k_max) {
  require_tree_level(k_max);
  Supertree tree{DyckBasis(2 * k_max), ParentRule::Recursive, {}, {}};
  const DyckBasis& nodes = tree.nodes;
  tree.parent.assign(nodes.size(), kNoParent);
  auto f = [&](const std::string& x) { return nodes.word(tree.parent[nodes.find(x)]).str(); };
  for (unsigned k = 1; k <= k_max; ++k) {
    const std::size_t cb = nodes.level_begin(k);
    std::vector<std::vector<std::size_t>> candidates(nodes.level_end(k) - cb);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const auto [s, t] = split_first(nodes.word(cb + c).str());
      std::vector<std::string> options;
      if (s.empty() && t.empty()) {
        options.push_back("");
      } else if (s.empty()) {
        options.push_back("lr" + f(t));
      } else if (t.empty()) {
        options.push_back("l" + f(s) + "r");
      } else {
        options.push_back("l" + f(s) + "r" + t);  // black
        options.push_back("l" + s + "r" + f(t));  // red
      }
      for (const auto& o : options) candidates[c].push_back(nodes.find(o));
    }
    const auto chosen = assign_parents(nodes, k, candidates);
    if (chosen.empty()) {
      throw InternalError("recursive_supertree: black/red choices cannot meet the degree bounds at level " +
                          std::to_string(k));
    }
    std::copy(chosen.begin(), chosen.end(), tree.parent.begin() + static_cast<std::ptrdiff_t>(cb));
  }
  link_children(tree);
  return tree;
}

SupertreeCheck check_supertree(const Supertree& tree) {
  SupertreeCheck c;
  c.single_removal = c.surjective = c.children_in_range = c.catalan_levels = true;
  const DyckBasis& nodes = tree.nodes;
  for (unsigned k = 0; k <= tree.k_max(); ++k) {
    const std::size_t size = nodes.level_end(k) - nodes.level_begin(k);
    c.level_sizes.push_back(size);
    if (catalan(k) != size) c.catalan_levels = false;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const unsigned k = nodes.level(i);
    if (k == 0) {
      if (tree.parent[i] != kNoParent) c.single_removal = false;
    } else {
      const std::size_t p = tree.parent[i];
      if (p == kNoParent || !one_pair_removals(nodes.word(i).str()).count(nodes.word(p).str())) {
        c.single_removal = false;
      }
    }
    const std::size_t kids = tree.children[i].size();
    c.max_children = std::max(c.max_children, kids);
    if (k < tree.k_max()) {
      if (kids == 0) c.surjective = false;
      if (kids < 1 || kids > 4) c.children_in_range = false;
    }
  }
  return c;
}

std::vector<std::size_t> canonical_path(const Supertree& tree, std::size_t s, std::size_t t) {
  const DyckBasis& nodes = tree.nodes;
  std::vector<std::size_t> path{s};
  if (s == t) return path;
  std::size_t u = s, v = 0;
  bool grow = nodes.level(s) < nodes.level(t);
  while (u != 0 || v != t) {
    bool moved = false;
    if (grow && v != t) {
      v = tree.ancestor(t, nodes.level(v) + 1);
      moved = true;
    } else if (!grow && u != 0) {
      u = tree.parent[u];
      moved = true;
    }
    if (moved) {
      const std::size_t next = nodes.find(nodes.word(u).str() + nodes.word(v).str());
      if (next == nodes.size()) throw InternalError("canonical_path: state outside the basis");
      path.push_back(next);
    }
    grow = !grow;
  }
  return path;
}

namespace {

struct PathContext {
  unsigned n;
  Supertree tree;
  std::vector<std::vector<std::size_t>> neighbours;  // sorted

  explicit PathContext(unsigned n_) : n(n_), tree(flow_supertree(n_ / 2)) {
    neighbours.resize(tree.nodes.size());
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      for (const auto& mv : insertions(tree.nodes, i)) neighbours[i].push_back(mv.target);
      for (const auto& mv : removals(tree.nodes, i)) neighbours[i].push_back(mv.target);
      std::sort(neighbours[i].begin(), neighbours[i].end());
    }
  }

  // Position of b among a's neighbours, or npos.
  std::size_t edge_slot(std::size_t a, std::size_t b) const {
    const auto& nb = neighbours[a];
    const auto it = std::lower_bound(nb.begin(), nb.end(), b);
    return (it != nb.end() && *it == b) ? static_cast<std::size_t>(it - nb.begin()) : std::string::npos;
  }
};

void require_path_chain(unsigned n) {
  if (n < 2) throw InputError("canonical paths: n must be at least 2");
  if (n > 14) throw ResourceError("canonical paths: n <= 14");
}

}  // namespace

PathCheck check_canonical_paths(unsigned n) {
  require_path_chain(n);
  const PathContext ctx(n);
  const DyckBasis& nodes = ctx.tree.nodes;
  PathCheck c;
  c.steps_are_edges = c.within_length = c.interval = c.relaxed_interval = true;
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    for (std::size_t t = 0; t < nodes.size(); ++t) {
      const auto path = canonical_path(ctx.tree, s, t);
      ++c.pairs;
      if (path.front() != s || path.back() != t) c.steps_are_edges = false;
      const std::size_t len = path.size() - 1;
      c.max_length = std::max(c.max_length, len);
      if (len > 2 * n) c.within_length = false;
      const unsigned lo = std::min(nodes.level(s), nodes.level(t));
      const unsigned hi = std::max(nodes.level(s), nodes.level(t));
      bool strict = true;
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (i + 1 < path.size() && ctx.edge_slot(path[i], path[i + 1]) == std::string::npos) c.steps_are_edges = false;
        const unsigned l = nodes.level(path[i]);
        if (l < lo || l > hi) strict = false;
        if (lo != hi) {
          if (l < lo || l > hi) c.interval = false;
        } else if (l + 1 < lo || l > hi) {
          c.relaxed_interval = false;
        }
      }
      if (!strict) ++c.strict_violations;
    }
  }
  return c;
}

EdgeLoad edge_load(unsigned n) {
  require_path_chain(n);
  const PathContext ctx(n);
  const DyckBasis& nodes = ctx.tree.nodes;
  const std::size_t dim = nodes.size();
  const unsigned levels = n / 2 + 1;

  std::vector<std::size_t> edge_base(dim + 1, 0);
  for (std::size_t a = 0; a < dim; ++a) edge_base[a + 1] = edge_base[a] + ctx.neighbours[a].size();
  const std::size_t edges = edge_base[dim];
  const std::size_t stride = std::size_t{levels} * levels;

  // counts[e * stride + ls * levels + lt]: paths from level ls to level lt through e.
  const unsigned workers = std::max(1u, std::min<unsigned>(thread_budget(), static_cast<unsigned>(dim)));
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(edges * stride, 0));
  std::vector<std::size_t> lengths(workers, 0);
  parallel_for(workers, [&](std::size_t w) {
    auto& counts = partial[w];
    for (std::size_t s = w; s < dim; s += workers) {
      for (std::size_t t = 0; t < dim; ++t) {
        const auto path = canonical_path(ctx.tree, s, t);
        lengths[w] = std::max(lengths[w], path.size() - 1);
        const std::size_t cell = std::size_t{nodes.level(s)} * levels + nodes.level(t);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          const std::size_t slot = ctx.edge_slot(path[i], path[i + 1]);
          if (slot == std::string::npos) throw InternalError("edge_load: path step is not an edge");
          ++counts[(edge_base[path[i]] + slot) * stride + cell];
        }
      }
    }
  });
  std::vector<std::uint64_t> counts(edges * stride, 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += p[i];
  }

  const WalkMatrix walk = build_walk(n);
  std::vector<Rational> pi_level(levels);
  for (unsigned k = 0; k < levels; ++k) pi_level[k] = walk.pi[nodes.level_begin(k)];

  EdgeLoad out;
  out.n = n;
  out.rho = 0;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t slot = 0; slot < ctx.neighbours[a].size(); ++slot) {
      const std::size_t b = ctx.neighbours[a][slot];
      const std::size_t e = edge_base[a] + slot;
      Rational carried = 0;
      for (unsigned ls = 0; ls < levels; ++ls) {
        for (unsigned lt = 0; lt < levels; ++lt) {
          const std::uint64_t c = counts[e * stride + ls * levels + lt];
          if (c != 0) carried += Rational(CountInt(static_cast<unsigned long>(c))) * pi_level[ls] * pi_level[lt];
        }
      }
      if (sgn(carried) == 0) continue;
      const Rational load = carried / (walk.pi[a] * walk.at(a, b));
      if (load > out.rho) {
        out.rho = load;
        out.worst_from = nodes.word(a).str();
        out.worst_to = nodes.word(b).str();
      }
    }
  }
  out.rho_value = out.rho.get_d();
  out.max_length = *std::max_element(lengths.begin(), lengths.end());
  out.bound = 1.0 / (out.rho_value * static_cast<double>(out.max_length));
  out.true_gap = walk_gap(n).gap_p;
  return out;
}

}  // namespace motzkin
