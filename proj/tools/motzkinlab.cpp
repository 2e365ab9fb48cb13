#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <CLI11.hpp>

#include "motzkinlab/errors.hpp"
#include "motzkinlab/hamiltonian.hpp"
#include "motzkinlab/report.hpp"
#include "motzkinlab/verify.hpp"

namespace {

using namespace motzkin;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Config {
  double tol = kDefaultTol;
  std::uint64_t seed = EigenOptions{}.seed;
  std::string format = "csv";
  std::string out;

  unsigned n = 0;
  unsigned n_min = 3;
  unsigned n_max = 0;
  std::vector<unsigned> ns;
  unsigned k_max = 4;
  int p = 0;
  int q = 0;
  std::string gap_variant = "full";
  std::string sector_variant = "simplified";
  std::string op_variant = "full";
  double eps = 1.0;
  std::string suite = "fast";
};

void usage_check(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

void check_range(unsigned lo, unsigned hi, unsigned floor, unsigned cap, const char* what) {
  usage_check(lo >= floor, std::string(what) + ": lower end must be at least " + std::to_string(floor));
  usage_check(hi >= lo, std::string(what) + ": malformed range (max below min)");
  usage_check(hi <= cap, std::string(what) + ": upper end must be at most " + std::to_string(cap));
}

// Writes to a sibling temporary and renames it into place.
void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(cfg.out);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << text;
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write to " + tmp.string() + " failed");
    }
  }
  fs::rename(tmp, target);
}

// Subcommands share cfg.n_min, so the default is applied when the subcommand runs.
void add_n_range(CLI::App* cmd, Config& cfg, unsigned default_min) {
  cmd->add_option("--n-min", cfg.n_min, "smallest chain length (default " + std::to_string(default_min) + ")");
  cmd->add_option("--n-max", cfg.n_max, "largest chain length")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Motzkin spin chain toolkit"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--tol", cfg.tol, "eigensolver residual tolerance");
  app.add_option("--seed", cfg.seed, "Krylov start-vector seed");
  app.add_option("--format", cfg.format, "csv or json");
  app.add_option("--out", cfg.out, "output file (written atomically)");

  // Each subcommand registers a validator and a runner; validation finishes
  // before anything is computed.
  std::function<void()> validate;
  std::function<int()> run;

  auto* gap = app.add_subcommand("gap", "spectral gap scan with log-log fit");
  add_n_range(gap, cfg, 3);
  gap->add_option("--variant", cfg.gap_variant, "full or eps")->capture_default_str();
  gap->add_option("--eps", cfg.eps, "interaction weight for the eps variant");
  bool full_space = false;
  gap->add_flag("--full-space", full_space, "diagonalize the whole space instead of sector blocks");
  gap->callback([&] {
    if (!gap->count("--n-min")) cfg.n_min = 3;
    validate = [&] {
      check_range(cfg.n_min, cfg.n_max, 2, full_space ? kFullSpaceCap : 14, "gap");
      usage_check(cfg.gap_variant == "full" || cfg.gap_variant == "eps", "gap: --variant must be full or eps");
      if (cfg.gap_variant == "full") usage_check(cfg.eps == 1.0, "gap: --eps needs --variant eps");
      usage_check(cfg.eps > 0.0 && cfg.eps <= 1.0, "gap: --eps must lie in (0, 1]");
    };
    run = [&] {
      const auto fit = gap_scan(cfg.n_min, cfg.n_max, full_space ? GapMethod::FullSpace : GapMethod::Sectors, cfg.tol,
                                cfg.eps, cfg.seed);
      emit(cfg, render_table(gap_table(fit), parse_format(cfg.format)));
      return kExitOk;
    };
  });

  auto* ent = app.add_subcommand("entropy", "half-chain entanglement entropy");
  ent->add_option("--n", cfg.ns, "even chain length (repeatable)")->required();
  ent->callback([&] {
    validate = [&] {
      for (unsigned n : cfg.ns) {
        usage_check(n >= 2 && n % 2 == 0, "entropy: --n must be even and at least 2");
        usage_check(n <= 1000000, "entropy: --n must be at most 1000000");
      }
    };
    run = [&] {
      std::vector<EntropyPoint> points;
      for (unsigned n : cfg.ns) points.push_back(entropy(n));
      emit(cfg, render_table(entropy_table(points), parse_format(cfg.format)));
      return kExitOk;
    };
  });

  auto* sch = app.add_subcommand("schmidt", "exact half-chain Schmidt coefficients");
  sch->add_option("--n", cfg.n, "even chain length")->required();
  sch->callback([&] {
    validate = [&] {
      usage_check(cfg.n >= 2 && cfg.n % 2 == 0, "schmidt: --n must be even and at least 2");
      usage_check(cfg.n <= 100000, "schmidt: --n must be at most 100000");
    };
    run = [&] {
      emit(cfg, render_table(schmidt_table(schmidt_spectrum(cfg.n)), parse_format(cfg.format)));
      return kExitOk;
    };
  });

  auto* walk = app.add_subcommand("walk", "Dyck random walk spectra");
  add_n_range(walk, cfg, 2);
  walk->callback([&] {
    if (!walk->count("--n-min")) cfg.n_min = 2;
    validate = [&] { check_range(cfg.n_min, cfg.n_max, 2, 16, "walk"); };
    run = [&] {
      std::vector<WalkGap> rows;
      for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) rows.push_back(walk_gap(n));
      emit(cfg, render_table(walk_table(rows), parse_format(cfg.format)));
      return kExitOk;
    };
  });

  auto* tree = app.add_subcommand("supertree", "parent maps on Dyck words");
  tree->add_option("--k-max", cfg.k_max, "deepest level")->required();
  tree->callback([&] {
    validate = [&] {
      usage_check(cfg.k_max <= kSupertreeCap, "supertree: --k-max must be at most " + std::to_string(kSupertreeCap));
    };
    run = [&] {
      const auto flow = flow_supertree(cfg.k_max);
      const auto rec = recursive_supertree(cfg.k_max);
      if (!check_supertree(flow).ok() || !check_supertree(rec).ok()) {
        std::cerr << "supertree: structural check failed\n";
        return kExitFailure;
      }
      emit(cfg, render_table(supertree_table(flow, rec), parse_format(cfg.format)));
      return kExitOk;
    };
  });

  auto* load = app.add_subcommand("edgeload", "canonical-path edge load bound");
  add_n_range(load, cfg, 2);
  load->callback([&] {
    if (!load->count("--n-min")) cfg.n_min = 2;
    validate = [&] { check_range(cfg.n_min, cfg.n_max, 2, 14, "edgeload"); };
    run = [&] {
      std::vector<EdgeLoad> rows;
      for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) rows.push_back(edge_load(n));
      emit(cfg, render_table(edgeload_table(rows), parse_format(cfg.format)));
      return kExitOk;
    };
  });

  auto* sec = app.add_subcommand("sector", "lowest energy of one unbalanced sector");
  sec->add_option("--n", cfg.n, "chain length")->required();
  sec->add_option("--p", cfg.p, "unmatched right brackets")->required();
  sec->add_option("--q", cfg.q, "unmatched left brackets")->required();
  sec->add_option("--variant", cfg.sector_variant, "full, simplified or bulk")->capture_default_str();
  sec->callback([&] {
    validate = [&] {
      usage_check(cfg.n >= 1 && cfg.n <= kDefaultEnumerationCap,
                  "sector: --n must lie in [1, " + std::to_string(kDefaultEnumerationCap) + "]");
      usage_check(cfg.p >= 0 && cfg.q >= 0 && cfg.p + cfg.q >= 1, "sector: need p, q >= 0 and p + q >= 1");
      usage_check(cfg.p + cfg.q <= static_cast<int>(cfg.n), "sector: p + q must not exceed n");
      parse_variant(cfg.sector_variant);
    };
    run = [&] {
      const auto row = sector_energy(cfg.n, {cfg.p, cfg.q}, parse_variant(cfg.sector_variant));
      emit(cfg, render_table(sector_table({row}), parse_format(cfg.format)));
      return kExitOk;
    };
  });

  auto* op = app.add_subcommand("operator", "export a Hamiltonian in coordinate form");
  op->add_option("--n", cfg.n, "chain length")->required();
  op->add_option("--variant", cfg.op_variant, "full, simplified, bulk or eps")->capture_default_str();
  op->add_option("--eps", cfg.eps, "interaction weight for the eps variant");
  std::optional<int> op_p, op_q;
  op->add_option("--p", op_p, "restrict to a sector (with --q)");
  op->add_option("--q", op_q, "restrict to a sector (with --p)");
  op->callback([&] {
    validate = [&] {
      usage_check(cfg.n >= 1, "operator: --n must be positive");
      usage_check(op_p.has_value() == op_q.has_value(), "operator: --p and --q go together");
      if (op_p) {
        usage_check(*op_p >= 0 && *op_q >= 0 && *op_p + *op_q <= static_cast<int>(cfg.n),
                    "operator: sector out of range");
        usage_check(cfg.n <= kDefaultEnumerationCap, "operator: sector blocks need n <= 16");
      } else {
        usage_check(cfg.n <= kFullSpaceCap, "operator: full-space export needs n <= 14");
      }
      if (cfg.op_variant == "eps") {
        usage_check(cfg.eps > 0.0 && cfg.eps <= 1.0, "operator: --eps must lie in (0, 1]");
      } else {
        parse_variant(cfg.op_variant);
        usage_check(cfg.eps == 1.0, "operator: --eps needs --variant eps");
      }
    };
    run = [&] {
      const std::optional<SectorLabel> label =
          op_p ? std::optional<SectorLabel>(SectorLabel{*op_p, *op_q}) : std::nullopt;
      const auto terms = cfg.op_variant == "eps" ? ChainTerms::uniform(cfg.n, 1.0, cfg.eps, 1.0, 1.0)
                                              : chain_terms(cfg.n, parse_variant(cfg.op_variant));
      std::ostringstream os;
      assemble(cfg.n, label, terms).write_coordinate(os);
      emit(cfg, os.str());
      return kExitOk;
    };
  });

  auto* ver = app.add_subcommand("verify", "acceptance battery");
  ver->add_option("--suite", cfg.suite, "fast or all")->default_val("fast");
  ver->callback([&] {
    validate = [&] { parse_suite(cfg.suite); };
    run = [&] {
      std::ostringstream os;
      bool all_passed = true;
      run_suite(parse_suite(cfg.suite), [&](const CriterionResult& r) {
        const auto line = format_result(r);
        if (!cfg.out.empty()) std::cerr << line << '\n';
        os << line << '\n';
        if (cfg.out.empty()) std::cout << line << std::endl;
        all_passed = all_passed && r.passed;
      });
      if (!cfg.out.empty()) emit(cfg, os.str());
      return all_passed ? kExitOk : kExitFailure;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    usage_check(cfg.tol > 0.0, "--tol must be positive");
    parse_format(cfg.format);
    validate();
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    return run();
  } catch (const InputError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "solver failure: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
