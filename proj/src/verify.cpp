#include "motzkinlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "motzkinlab/combinatorics.hpp"
#include "motzkinlab/dyckwalk.hpp"
#include "motzkinlab/eigensolve.hpp"
#include "motzkinlab/entanglement.hpp"
#include "motzkinlab/errors.hpp"
#include "motzkinlab/hamiltonian.hpp"
#include "motzkinlab/supertree.hpp"
#include "motzkinlab/unbalanced.hpp"

namespace motzkin {

namespace {

struct Outcome {
  bool passed = false;
  bool expected_failure = false;
  std::string detail;
};

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

// 1. Unique zero-energy ground state equal to the Motzkin superposition.
Outcome ground_state(Suite suite) {
  const unsigned n_max = suite == Suite::All ? 10 : 8;
  Outcome out{true, false, {}};
  double worst_fidelity = 1.0;
  double worst_zero = 0.0;
  for (unsigned n = 3; n <= n_max; ++n) {
    EigenOptions opts;
    opts.k = 2;
    const auto res = lowest_eigenpairs(build_hamiltonian(n), opts);
    const auto zeros = std::count_if(res.values.begin(), res.values.end(),
                                     [](double v) { return std::abs(v) < 1e-10; });
    const auto motzkin_state = motzkin_state_full(n);
    const double overlap = dot(res.vectors[0], motzkin_state);
    const double fidelity = overlap * overlap;
    worst_fidelity = std::min(worst_fidelity, fidelity);
    worst_zero = std::max(worst_zero, std::abs(res.values[0]));
    if (zeros != 1 || fidelity <= 1.0 - 1e-10) {
      out.passed = false;
      out.detail += "n=" + std::to_string(n) + " zeros=" + std::to_string(zeros) + "; ";
    }
  }
  out.detail += "n=3.." + std::to_string(n_max) + " max|lambda1|=" + fmt("%.2e", worst_zero) +
                " min fidelity=1-" + fmt("%.2e", 1.0 - worst_fidelity);
  return out;
}

// 2. Gap scaling exponent.
Outcome gap_scaling(Suite suite) {
  const unsigned n_max = suite == Suite::All ? 13 : 10;
  const auto scan = gap_scan(3, n_max);
  const double slope = scan.fit->slope;
  std::string sectors;
  for (const auto& row : scan.rows) sectors += row.one_unmatched ? '1' : '0';
  return {slope >= -3.2 && slope <= -2.6, false,
          "n=3.." + std::to_string(n_max) + " slope=" + fmt("%.4f", slope) + " intercept=" +
              fmt("%.4f", scan.fit->intercept) + " one-unmatched first excitation per n: " + sectors};
}

// 3. Schmidt rank n/2 + 1.
Outcome schmidt_rank(Suite suite) {
  const unsigned n_max = suite == Suite::All ? 2000 : 400;
  for (unsigned n = 2; n <= n_max; n += 2) {
    const auto spectrum = schmidt_spectrum(n);
    const bool all_positive =
        std::all_of(spectrum.p.begin(), spectrum.p.end(), [](const Rational& p) { return sgn(p) > 0; });
    if (!all_positive || spectrum.schmidt_rank() != n / 2 + 1 || !spectrum.sums_to_one()) {
      return {false, false, "rank mismatch at n=" + std::to_string(n)};
    }
  }
  return {true, false, "even n<=" + std::to_string(n_max) + " all ranks n/2+1, sums exactly 1"};
}

// 4. Entropy constant.
Outcome entropy_constant(Suite suite) {
  std::vector<unsigned> ns{100, 1000, 10000};
  if (suite == Suite::All) ns.push_back(100000);
  std::vector<double> cs;
  bool exact = true;
  for (unsigned n : ns) {
    const auto point = entropy(n);
    cs.push_back(point.c_n);
    exact = exact && point.normalization_exact;
  }
  bool monotone = true;
  for (std::size_t i = 1; i < cs.size(); ++i) monotone = monotone && cs[i] < cs[i - 1];
  std::string detail = "c_n:";
  for (std::size_t i = 0; i < ns.size(); ++i) detail += " n=" + std::to_string(ns[i]) + ":" + fmt("%.6f", cs[i]);
  detail += monotone ? " (monotone decreasing)" : " (not monotone)";
  const double last = cs.back();
  return {exact && last >= 0.13 && last <= 0.16, false, detail};
}

// 5. Counting spectrum against the reduced density matrix.
Outcome schmidt_cross(Suite suite) {
  const unsigned n_max = suite == Suite::All ? 12 : 10;
  double worst = 0.0;
  for (unsigned n = 2; n <= n_max; n += 2) {
    auto counted = schmidt_spectrum(n).as_doubles();
    std::sort(counted.begin(), counted.end(), std::greater<>());
    const auto rho = reduced_density_spectrum(n);
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const double expect = i < counted.size() ? counted[i] : 0.0;
      worst = std::max(worst, std::abs(rho[i] - expect));
    }
  }
  return {worst <= 1e-12, false, "even n<=" + std::to_string(n_max) + " max diff=" + fmt("%.2e", worst)};
}

// 6. Heisenberg gap of H_move on the Motzkin space.
Outcome heisenberg(Suite) {
  double worst = 0.0;
  for (unsigned n = 4; n <= 10; ++n) worst = std::max(worst, std::abs(heisenberg_gap_check(n).difference));
  return {worst <= 1e-9, false, "n=4..10 max diff=" + fmt("%.2e", worst)};
}

// 7. Isometry, effective ground state and the walk identity.
Outcome effective_hamiltonian(Suite suite) {
  const unsigned n_max = suite == Suite::All ? 12 : 10;
  double iso = 0.0, ground = 0.0, identity = 0.0;
  for (unsigned n = 2; n <= n_max; ++n) {
    iso = std::max(iso, isometry_defect(n));
    const auto d = dyck_ground_state(n);
    ground = std::max(ground, norm(build_heff(n).apply(d)));
    identity = std::max(identity, walk_gap(n).identity_residual);
  }
  return {iso <= 1e-13 && ground <= 1e-12 && identity <= 1e-9, false,
          "n=2.." + std::to_string(n_max) + " isometry=" + fmt("%.2e", iso) + " Heff|D>=" + fmt("%.2e", ground) +
              " identity=" + fmt("%.2e", identity)};
}

// 8. Walk transition bounds and exact detailed balance.
Outcome walk_bound(Suite suite) {
  const unsigned n_max = suite == Suite::All ? 14 : 12;
  for (unsigned n = 2; n <= n_max; ++n) {
    const auto walk = build_walk(n);
    const auto b = walk_bounds(walk);
    if (!b.insert_ok || !b.remove_ok || !b.diagonal_ok || !walk.detailed_balance() || !walk.rows_sum_to_one()) {
      return {false, false, "bound or balance fails at n=" + std::to_string(n)};
    }
  }
  return {true, false, "n=2.." + std::to_string(n_max) + " insert>=1/(2n^3) remove>=1/(2n^2) diag>=1/2, balance exact"};
}

// 9. Supertrees.
Outcome supertrees(Suite suite) {
  const unsigned k_max = suite == Suite::All ? kSupertreeCap : 7;
  const auto flow = check_supertree(flow_supertree(k_max));
  const auto rec = check_supertree(recursive_supertree(k_max));
  const std::vector<std::size_t> head{1, 1, 2, 5, 14};
  const bool levels = std::equal(head.begin(), head.end(), flow.level_sizes.begin());
  return {flow.ok() && rec.ok() && levels, false,
          "k<=" + std::to_string(k_max) + " flow max children=" + std::to_string(flow.max_children) +
              " recursive max children=" + std::to_string(rec.max_children)};
}

// 10. Stochastic parent map.
Outcome stochastic_map(Suite suite) {
  const unsigned n_max = suite == Suite::All ? 200 : 60;
  const unsigned enum_max = suite == Suite::All ? 9 : 7;
  for (unsigned n = 1; n <= n_max; ++n) {
    if (!split_conditions(n).all()) return {false, false, "split conditions fail at n=" + std::to_string(n)};
  }
  StochasticParentMap map;
  for (unsigned n = 1; n <= enum_max; ++n) {
    const auto level = check_stochastic_level(n, map);
    if (!level.normalized || !level.single_removal || !level.uniform_marginal) {
      return {false, false, "enumeration fails at n=" + std::to_string(n)};
    }
  }
  return {true, false,
          "closed form exact for n<=" + std::to_string(n_max) + ", marginals uniform for n<=" + std::to_string(enum_max)};
}

// 11. Canonical paths and the edge-load bound.
Outcome canonical_paths(Suite suite) {
  const unsigned n_max = suite == Suite::All ? 14 : 10;
  bool bounds = true, paths = true;
  std::size_t violations = 0, same_level_pairs = 0;
  double tightest = 0.0;
  for (unsigned n = 2; n <= n_max; ++n) {
    const auto load = edge_load(n);
    bounds = bounds && load.bound <= load.true_gap;
    tightest = std::max(tightest, load.bound / load.true_gap);
    const auto check = check_canonical_paths(n);
    paths = paths && check.ok() && check.max_length <= 2 * n;
    violations += check.strict_violations;
    for (unsigned k = 0; k <= n / 2; ++k) {
      const auto c = catalan(k).get_ui();
      same_level_pairs += c * (c - 1);
    }
  }
  std::string detail = "n=2.." + std::to_string(n_max) + " max bound/gap=" + fmt("%.3g", tightest) +
                       " strict interval violations=" + std::to_string(violations);
  if (violations == 0) return {bounds && paths, false, detail};
  detail += " (every distinct equal-length pair; relaxed interval holds)";
  return {false, bounds && paths && violations == same_level_pairs, detail};
}

// 12. Unbalanced sectors.
Outcome unbalanced_sectors(Suite suite) {
  const unsigned n_max = suite == Suite::All ? 8 : 6;
  const unsigned hop_max = suite == Suite::All ? 5000 : 1000;
  double min_lambda = 1e300, spread = 0.0;
  for (unsigned n = 1; n <= n_max; ++n) {
    for (int e = 1; e <= static_cast<int>(n); ++e) {
      for (int p = 0; p <= e; ++p) {
        min_lambda = std::min(min_lambda, sector_energy(n, {p, e - p}, Variant::Full).lambda1);
      }
      const auto reference = sector_spectrum(n, {e, 0}, Variant::Simplified);
      for (int p = 1; p < e; ++p) {
        spread = std::max(spread, spectrum_distance(reference, sector_spectrum(n, {p, e - p}, Variant::Simplified)));
      }
    }
  }
  bool first_order = true;
  for (unsigned n = 2; n <= 8; ++n) first_order = first_order && first_order_check(n).ok();
  const bool hopping = hopping_amplitudes_bounded(hop_max);
  return {min_lambda > 0.0 && spread <= 1e-10 && hopping && first_order, false,
          "n<=" + std::to_string(n_max) + " min lambda1=" + fmt("%.3e", min_lambda) +
              " equal-excess spread=" + fmt("%.2e", spread) + " hopping n<=" + std::to_string(hop_max) +
              (hopping ? " ok" : " FAIL") + " first order" + (first_order ? " exact" : " FAIL")};
}

// 13. Twisted-state variational bound.
Outcome twisted_state(Suite suite) {
  const unsigned n_max = suite == Suite::All ? 12 : 10;
  std::vector<double> ns, energies;
  bool above = true;
  for (unsigned n = 2; n <= n_max; n += 2) {
    const auto state = twisted_state_energy(n);
    above = above && state.energy >= gap_at(n).lambda2 - 1e-12;
    ns.push_back(n);
    energies.push_back(state.energy);
  }
  const double slope = loglog_fit(ns, energies).slope;
  return {above && slope >= -0.8 && slope <= -0.3, false,
          "even n=2.." + std::to_string(n_max) + " energy>=lambda2:" + (above ? "yes" : "no") +
              " exponent=" + fmt("%.4f", slope)};
}

// 14. Motzkin asymptotics.
Outcome motzkin_asymptotics(Suite) {
  const double c = motzkin_asymptotic_constant(5000);
  const bool ratios = motzkin_ratio_bounds(5000);
  return {c >= 1.44 && c <= 1.48 && ratios, false,
          "M_n n^1.5/3^n at 5000=" + fmt("%.6f", c) + " ratio bounds" + (ratios ? " hold" : " FAIL")};
}

struct Criterion {
  const char* title;
  Outcome (*run)(Suite);
};

constexpr Criterion kTable[kCriteria] = {
    {"unique zero-energy ground state", ground_state},
    {"gap scaling exponent", gap_scaling},
    {"schmidt rank n/2+1", schmidt_rank},
    {"entropy constant", entropy_constant},
    {"schmidt spectrum vs reduced density", schmidt_cross},
    {"heisenberg gap formula", heisenberg},
    {"isometry and effective hamiltonian", effective_hamiltonian},
    {"walk transition bounds", walk_bound},
    {"supertree parent maps", supertrees},
    {"stochastic parent map", stochastic_map},
    {"canonical paths and edge load", canonical_paths},
    {"unbalanced sectors", unbalanced_sectors},
    {"twisted-state upper bound", twisted_state},
    {"motzkin asymptotics", motzkin_asymptotics},
};

}  // namespace

Suite parse_suite(std::string_view name) {
  if (name == "fast") return Suite::Fast;
  if (name == "all") return Suite::All;
  throw InputError("unknown suite '" + std::string(name) + "' (expected fast or all)");
}

CriterionResult run_criterion(int id, Suite suite) {
  if (id < 1 || id > kCriteria) throw InputError("criterion id must lie in [1, 14]");
  const auto& c = kTable[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = c.title;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto out = c.run(suite);
    r.passed = out.passed;
    r.expected_failure = out.expected_failure;
    r.detail = out.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_suite(Suite suite, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriteria; ++id) {
    results.push_back(run_criterion(id, suite));
    if (on_result) on_result(results.back());
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : r.expected_failure ? "FAIL (documented)" : "FAIL") << ' ';
  if (r.id < 10) os << ' ';
  os << r.id << ' ' << r.title << ": " << r.detail << " (" << fmt("%.1f", r.seconds) << " s)";
  return os.str();
}

}  // namespace motzkin
