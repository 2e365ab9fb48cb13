#include "motzkinlab/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "motzkinlab/errors.hpp"
#include "motzkinlab/hamiltonian.hpp"
#include "motzkinlab/parallel.hpp"

namespace motzkin {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Uniform in [-1, 1); bit-reproducible across standard libraries, unlike
// std::uniform_real_distribution.
double uniform_pm1(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

void apply(const SparseOperator& op, const double* x, double* y) {
  op.apply(std::span<const double>(x, op.dim()), std::span<double>(y, op.dim()));
}

std::vector<double> explicit_residuals(const SparseOperator& op, const std::vector<double>& values,
                                       const MatrixXd& vectors) {
  std::vector<double> res(values.size());
  VectorXd y(static_cast<Index>(op.dim()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const VectorXd x = vectors.col(static_cast<Index>(i));
    apply(op, x.data(), y.data());
    res[i] = (y - values[i] * x).norm();
  }
  return res;
}

// Orthogonalizes w against the first `cols` columns of V twice (classical
// Gram-Schmidt with one reorthogonalization pass); returns the coefficients.
VectorXd orthogonalize(const MatrixXd& V, Index cols, VectorXd& w) {
  const auto basis = V.leftCols(cols);
  VectorXd h = basis.transpose() * w;
  w.noalias() -= basis * h;
  const VectorXd h2 = basis.transpose() * w;
  w.noalias() -= basis * h2;
  return h + h2;
}

}  // namespace

SpectrumResult dense_eigenpairs(const Eigen::MatrixXd& m, int k, bool want_vectors) {
  if (k < 1 || k > m.rows()) throw InputError("dense_eigenpairs: k out of range");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver failed", INFINITY);
  SpectrumResult out;
  out.dense = true;
  for (int i = 0; i < k; ++i) out.values.push_back(es.eigenvalues()(i));
  if (want_vectors) {
    for (int i = 0; i < k; ++i) {
      const VectorXd v = es.eigenvectors().col(i);
      out.vectors.emplace_back(v.data(), v.data() + v.size());
      out.residuals.push_back((m * v - es.eigenvalues()(i) * v).norm());
    }
  } else {
    out.residuals.assign(static_cast<std::size_t>(k), 0.0);
  }
  return out;
}

SpectrumResult lanczos_eigenpairs(const SparseOperator& op, const EigenOptions& opts) {
  const Index dim = static_cast<Index>(op.dim());
  const int k = opts.k;
  if (k < 1 || k > dim) throw InputError("lowest_eigenpairs: k out of range");
  if (!(opts.tol > 0.0)) throw InputError("lowest_eigenpairs: tol must be positive");

  // Basis size: enough room for k wanted pairs plus a healthy restart margin,
  // bounded so the Krylov block stays under ~1.5 GB.
  Index m = opts.max_basis > 0 ? opts.max_basis : std::max<Index>(2 * k + 40, 120);
  const Index memory_cap = std::max<Index>(k + 8, static_cast<Index>(1.5e9 / (8.0 * static_cast<double>(dim))) - 1);
  m = std::min({m, dim, memory_cap});
  const long max_restarts =
      opts.max_restarts > 0
          ? opts.max_restarts
          : static_cast<long>(50.0 * k * std::max(1.0, std::ceil(std::log(static_cast<double>(dim)))));
  const double scale = std::max(1.0, op.gershgorin_bound());

  std::mt19937_64 rng(opts.seed);
  MatrixXd V(dim, m + 1);
  MatrixXd T = MatrixXd::Zero(m, m);
  VectorXd w(dim);

  auto random_unit_orthogonal = [&](Index cols) {
    VectorXd r(dim);
    for (Index i = 0; i < dim; ++i) r(i) = uniform_pm1(rng);
    if (cols > 0) orthogonalize(V, cols, r);
    return VectorXd(r / r.norm());
  };

  V.col(0) = random_unit_orthogonal(0);
  Index kept = 0;
  SpectrumResult out;
  double best = INFINITY;

  for (long cycle = 0; cycle <= max_restarts; ++cycle) {
    Index used = m;
    double beta = 0.0;
    for (Index j = kept; j < m; ++j) {
      apply(op, V.col(j).data(), w.data());
      ++out.matvecs;
      const VectorXd h = orthogonalize(V, j + 1, w);
      T.block(0, j, j + 1, 1) = h;
      T.block(j, 0, 1, j + 1) = h.transpose();
      beta = w.norm();
      if (j + 1 == dim) {
        used = j + 1;
        beta = 0.0;
        break;
      }
      if (beta <= 1e-13 * scale) {
        // Invariant subspace found; continue with a fresh direction.
        beta = 0.0;
        V.col(j + 1) = random_unit_orthogonal(j + 1);
      } else {
        V.col(j + 1) = w / beta;
      }
    }

    Eigen::SelfAdjointEigenSolver<MatrixXd> es(T.topLeftCorner(used, used));
    const VectorXd& theta = es.eigenvalues();
    const MatrixXd& Y = es.eigenvectors();
    bool estimates_ok = true;
    for (int i = 0; i < k; ++i) {
      const double est = std::abs(beta * Y(used - 1, i));
      if (est > 0.5 * opts.tol) estimates_ok = false;
    }
    if (estimates_ok || used == dim || cycle == max_restarts) {
      const MatrixXd X = V.leftCols(used) * Y.leftCols(k);
      std::vector<double> values(theta.data(), theta.data() + k);
      const auto res = explicit_residuals(op, values, X);
      const double worst = *std::max_element(res.begin(), res.end());
      best = std::min(best, worst);
      if (worst <= opts.tol) {
        out.values = std::move(values);
        out.residuals = res;
        out.restarts = cycle;
        if (opts.want_vectors) {
          for (int i = 0; i < k; ++i) {
            const VectorXd x = X.col(i);
            out.vectors.emplace_back(x.data(), x.data() + x.size());
          }
        }
        return out;
      }
    }
    if (used == dim) break;

    // Thick restart: keep the lowest Ritz vectors plus the residual direction.
    kept = std::min<Index>(std::max<Index>(k + 1, (m + k) / 2), m - 1);
    const MatrixXd ritz = V.leftCols(used) * Y.leftCols(kept);
    const VectorXd residual_dir = V.col(used);
    V.leftCols(kept) = ritz;
    V.col(kept) = residual_dir;
    T.setZero();
    for (Index i = 0; i < kept; ++i) T(i, i) = theta(i);
  }
  std::ostringstream msg;
  msg << "Lanczos did not converge to tol " << opts.tol << " after " << max_restarts
      << " restarts (dim " << dim << ", best residual " << best << ")";
  throw NumericalError(msg.str(), best);
}

SpectrumResult lowest_eigenpairs(const SparseOperator& op, const EigenOptions& opts) {
  if (opts.k < 1 || static_cast<std::size_t>(opts.k) > op.dim()) throw InputError("lowest_eigenpairs: k out of range");
  if (!(opts.tol > 0.0)) throw InputError("lowest_eigenpairs: tol must be positive");
  if (op.dim() <= opts.dense_threshold) {
    auto out = dense_eigenpairs(op.to_dense(), opts.k, opts.want_vectors);
    for (double r : out.residuals) {
      if (r > opts.tol) throw NumericalError("dense eigensolver residual above tolerance", r);
    }
    return out;
  }
  return lanczos_eigenpairs(op, opts);
}

SpectrumResult lowest_eigenpairs(const SparseOperator& op, int k, double tol, std::uint64_t seed) {
  EigenOptions opts;
  opts.k = k;
  opts.tol = tol;
  opts.seed = seed;
  return lowest_eigenpairs(op, opts);
}

std::vector<std::vector<double>> cluster_values(const std::vector<double>& sorted, double tol) {
  std::vector<std::vector<double>> out;
  for (double v : sorted) {
    if (out.empty() || v - out.back().back() > tol) out.emplace_back();
    out.back().push_back(v);
  }
  return out;
}

std::optional<double> cluster_gap(const std::vector<double>& sorted, double tol) {
  const auto c = cluster_values(sorted, tol);
  if (c.size() < 2) return std::nullopt;
  return c[1].front() - c[0].back();
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("least_squares: need two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinearFit f;
  f.points = x.size();
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return least_squares(lx, ly);
}

namespace {

struct SectorSolve {
  SectorLabel label;
  double value = 0.0;
  double residual = 0.0;
};

std::string join_labels(const std::vector<SectorLabel>& labels) {
  std::string s;
  for (const auto& l : labels) {
    if (!s.empty()) s += "|";
    s += to_string(l);
  }
  return s;
}

SparseOperator gap_block(unsigned n, SectorLabel label, double eps) {
  if (eps == 1.0) return sector_block(n, label);
  return assemble(n, label, ChainTerms::uniform(n, 1.0, eps, 1.0, 1.0));
}

GapRow gap_by_sectors(unsigned n, double tol, double eps, std::uint64_t seed) {
  EigenOptions opts;
  opts.tol = tol;
  opts.seed = seed;

  // The Motzkin block carries the ground state; every other class
  // contributes its lowest level. (p,q) and (q,p) are mirror images under
  // reversal plus l <-> r, so only p <= q is solved.
  std::vector<SectorLabel> labels;
  for (int p = 0; p <= static_cast<int>(n); ++p)
    for (int q = p; p + q <= static_cast<int>(n); ++q)
      if (p + q > 0) labels.push_back({p, q});

  opts.k = 2;
  const auto motzkin = lowest_eigenpairs(gap_block(n, {0, 0}, eps), opts);

  std::vector<SectorSolve> solves(labels.size());
  parallel_for(labels.size(), [&](std::size_t i) {
    EigenOptions o = opts;
    o.k = 1;
    const auto r = lowest_eigenpairs(gap_block(n, labels[i], eps), o);
    solves[i] = {labels[i], r.values[0], r.residuals[0]};
  });

  GapRow row;
  row.n = n;
  row.lambda1 = motzkin.values[0];
  double lambda2 = motzkin.values[1];
  double residual = std::max(motzkin.residuals[0], motzkin.residuals[1]);
  for (const auto& s : solves) {
    lambda2 = std::min(lambda2, s.value);
    residual = std::max(residual, s.residual);
  }
  std::vector<SectorLabel> where;
  if (motzkin.values[1] - lambda2 <= kClusterTol) where.push_back({0, 0});
  for (const auto& s : solves) {
    if (s.value - lambda2 <= kClusterTol) {
      where.push_back(s.label);
      if (s.label.p != s.label.q) where.push_back({s.label.q, s.label.p});
    }
  }
  std::sort(where.begin(), where.end());
  row.lambda2 = lambda2;
  row.gap = lambda2 - row.lambda1;
  row.sector_of_first_excited = join_labels(where);
  row.one_unmatched = std::all_of(where.begin(), where.end(), [](SectorLabel l) { return l.excess() == 1; });
  row.residual = residual;
  return row;
}

GapRow gap_full_space(unsigned n, double tol, double eps, std::uint64_t seed) {
  EigenOptions opts;
  opts.k = 2;
  opts.tol = tol;
  opts.seed = seed;
  const auto op = eps == 1.0 ? build_hamiltonian(n) : build_heps(n, eps);
  const auto r = lowest_eigenpairs(op, opts);
  GapRow row;
  row.n = n;
  row.lambda1 = r.values[0];
  row.lambda2 = r.values[1];
  row.gap = r.values[1] - r.values[0];
  row.residual = std::max(r.residuals[0], r.residuals[1]);
  // Locate the excited vector by its weight on each class.
  std::map<SectorLabel, double> weight;
  std::vector<Letter> s(n);
  const auto& v = r.vectors[1];
  for (std::uint64_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    decode_full_index(i, s);
    weight[classify(s)] += v[i] * v[i];
  }
  std::vector<SectorLabel> where;
  for (const auto& [label, w] : weight)
    if (w > 1e-6) where.push_back(label);
  row.sector_of_first_excited = join_labels(where);
  row.one_unmatched = std::all_of(where.begin(), where.end(), [](SectorLabel l) { return l.excess() == 1; });
  return row;
}

}  // namespace

GapRow gap_at(unsigned n, GapMethod method, double tol, double eps, std::uint64_t seed) {
  if (n < 2) throw InputError("gap_at: n must be at least 2");
  if (!(eps > 0.0 && eps <= 1.0)) throw InputError("gap_at: eps must lie in (0, 1]");
  return method == GapMethod::Sectors ? gap_by_sectors(n, tol, eps, seed) : gap_full_space(n, tol, eps, seed);
}

GapFit gap_scan(unsigned n_min, unsigned n_max, GapMethod method, double tol, double eps,
                std::uint64_t seed) {
  if (n_min < 2 || n_max < n_min) throw InputError("gap_scan: need 2 <= n_min <= n_max");
  if (method == GapMethod::FullSpace && n_max > kFullSpaceCap)
    throw ResourceError("gap_scan: full-space variant limited to n <= 14");
  GapFit out;
  std::vector<double> xs, ys;
  for (unsigned n = n_min; n <= n_max; ++n) {
    out.rows.push_back(gap_at(n, method, tol, eps, seed));
    if (n >= 3) {
      xs.push_back(n);
      ys.push_back(out.rows.back().gap);
    }
  }
  if (xs.size() >= 2) out.fit = loglog_fit(xs, ys);
  return out;
}

HeisenbergCheck heisenberg_gap_check(unsigned n) {
  if (n < 3 || n > 12) throw InputError("heisenberg_gap_check: requires 3 <= n <= 12");
  const auto op = assemble(n, SectorLabel{0, 0}, ChainTerms::uniform(n, 1.0, 0.0, 0.0, 0.0));
  std::vector<double> values;
  if (op.dim() <= kDenseThreshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.to_dense(), Eigen::EigenvaluesOnly);
    values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  } else {
    // One zero mode per Dyck word of semilength <= n/2; ask for a few more.
    unsigned long zero_modes = 0;
    for (unsigned k = 0; k <= n / 2; ++k) zero_modes += catalan(k).get_ui();
    EigenOptions opts;
    opts.k = static_cast<int>(zero_modes + 3);
    opts.want_vectors = false;
    values = lowest_eigenpairs(op, opts).values;
  }
  const auto clusters = cluster_values(values);
  if (clusters.size() < 2) throw InternalError("heisenberg_gap_check: no excited cluster found");
  HeisenbergCheck c;
  c.n = n;
  c.numeric = clusters[1].front();
  c.analytic = 1.0 - std::cos(std::numbers::pi / n);
  c.difference = c.numeric - c.analytic;
  return c;
}

}  // namespace motzkin
