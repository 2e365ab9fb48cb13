#include "motzkinlab/hamiltonian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "motzkinlab/errors.hpp"

namespace motzkin {

namespace {

constexpr int code(Letter a, Letter b) { return 3 * static_cast<int>(a) + static_cast<int>(b); }

// Adds |u><u| for normalized u = (|a> - |b>)/sqrt(2).
void add_singlet(Eigen::Matrix<double, 9, 9>& m, int a, int b) {
  m(a, a) += 0.5;
  m(b, b) += 0.5;
  m(a, b) -= 0.5;
  m(b, a) -= 0.5;
}

}  // namespace

int LocalProjector::numerical_rank(double tol) const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 9, 9>> es(matrix);
  int r = 0;
  for (int i = 0; i < 9; ++i)
    if (std::abs(es.eigenvalues()(i)) > tol) ++r;
  return r;
}

bool LocalProjector::is_idempotent(double tol) const {
  return ((matrix * matrix - matrix).cwiseAbs().maxCoeff() <= tol) &&
         ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() <= tol);
}

LocalProjector projector_move() {
  LocalProjector p{Eigen::Matrix<double, 9, 9>::Zero(), 2};
  add_singlet(p.matrix, code(Letter::Zero, Letter::Left), code(Letter::Left, Letter::Zero));
  add_singlet(p.matrix, code(Letter::Zero, Letter::Right), code(Letter::Right, Letter::Zero));
  return p;
}

LocalProjector projector_int() {
  LocalProjector p{Eigen::Matrix<double, 9, 9>::Zero(), 1};
  add_singlet(p.matrix, code(Letter::Zero, Letter::Zero), code(Letter::Left, Letter::Right));
  return p;
}

LocalProjector projector_pi() {
  LocalProjector p{projector_move().matrix + projector_int().matrix, 3};
  return p;
}

ChainTerms ChainTerms::uniform(unsigned n, double move, double interaction, double left_wall,
                               double right_wall) {
  ChainTerms t;
  t.left_wall = left_wall;
  t.right_wall = right_wall;
  const unsigned bonds = n > 0 ? n - 1 : 0;
  t.move.assign(bonds, move);
  t.interaction.assign(bonds, interaction);
  return t;
}

Variant parse_variant(std::string_view name) {
  if (name == "full") return Variant::Full;
  if (name == "simplified") return Variant::Simplified;
  if (name == "bulk") return Variant::Bulk;
  throw InputError("unknown variant '" + std::string(name) + "'");
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::Simplified: return "simplified";
    case Variant::Bulk: return "bulk";
  }
  return "?";
}

ChainTerms chain_terms(unsigned n, Variant v) {
  switch (v) {
    case Variant::Full: return ChainTerms::uniform(n, 1.0, 1.0, 1.0, 1.0);
    case Variant::Simplified: return ChainTerms::uniform(n, 1.0, 1.0, 1.0, 0.0);
    case Variant::Bulk: return ChainTerms::uniform(n, 1.0, 1.0, 0.0, 0.0);
  }
  return {};
}

std::uint64_t full_index(std::span<const Letter> letters) {
  std::uint64_t idx = 0;
  for (Letter l : letters) idx = 3 * idx + static_cast<std::uint64_t>(l);
  return idx;
}

void decode_full_index(std::uint64_t index, std::span<Letter> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Letter>(index % 3);
    index /= 3;
  }
}

namespace {

// Off-diagonal partner of a two-letter window under Pi, with the term it
// belongs to. Windows outside span(Pi) have no partner and no diagonal part.
struct Partner {
  bool active = false;
  bool interaction = false;
  Letter a{}, b{};
};

Partner partner(Letter a, Letter b) {
  using L = Letter;
  if (a == L::Zero && b == L::Zero) return {true, true, L::Left, L::Right};
  if (a == L::Left && b == L::Right) return {true, true, L::Zero, L::Zero};
  if (a == L::Zero && b != L::Zero) return {true, false, b, L::Zero};
  if (a != L::Zero && b == L::Zero) return {true, false, L::Zero, a};
  return {};
}

template <typename IndexOf>
void assemble_rows(unsigned n, std::uint64_t dim, const ChainTerms& terms, IndexOf&& index_of,
                   const std::function<void(std::uint64_t, std::span<Letter>)>& letters_of,
                   std::vector<std::uint64_t>& row_ptr, std::vector<std::uint32_t>& cols,
                   std::vector<double>& values) {
  std::vector<Letter> s(n);
  std::vector<std::pair<std::uint32_t, double>> row;
  row_ptr.assign(dim + 1, 0);
  for (std::uint64_t r = 0; r < dim; ++r) {
    letters_of(r, s);
    row.clear();
    double diag = 0.0;
    if (n > 0 && terms.left_wall != 0.0 && s[0] == Letter::Right) diag += terms.left_wall;
    if (n > 0 && terms.right_wall != 0.0 && s[n - 1] == Letter::Left) diag += terms.right_wall;
    for (unsigned j = 0; j + 1 < n; ++j) {
      const Partner pt = partner(s[j], s[j + 1]);
      if (!pt.active) continue;
      const double w = pt.interaction ? terms.interaction[j] : terms.move[j];
      if (w == 0.0) continue;
      diag += 0.5 * w;
      const Letter a = s[j], b = s[j + 1];
      s[j] = pt.a;
      s[j + 1] = pt.b;
      const std::uint64_t c = index_of(std::span<const Letter>(s));
      s[j] = a;
      s[j + 1] = b;
      if (c >= dim) throw InternalError("local move left the basis");
      row.emplace_back(static_cast<std::uint32_t>(c), -0.5 * w);
    }
    if (diag != 0.0) row.emplace_back(static_cast<std::uint32_t>(r), diag);
    std::sort(row.begin(), row.end());
    for (const auto& [c, v] : row) {
      cols.push_back(c);
      values.push_back(v);
    }
    row_ptr[r + 1] = cols.size();
  }
}

}  // namespace

SparseOperator assemble(unsigned n, std::optional<SectorLabel> sector, const ChainTerms& terms,
                        unsigned cap) {
  if (n < 1) throw InputError("assemble: n must be positive");
  const unsigned bonds = n - 1;
  if (terms.move.size() != bonds || terms.interaction.size() != bonds)
    throw InputError("assemble: bond weight vectors must have n-1 entries");
  std::vector<std::uint64_t> row_ptr;
  std::vector<std::uint32_t> cols;
  std::vector<double> values;
  if (!sector) {
    if (n > std::min(cap, kFullSpaceCap)) {
      throw ResourceError("full-space build capped at n=" + std::to_string(std::min(cap, kFullSpaceCap)) +
                          " (requested n=" + std::to_string(n) + "); use sector blocks");
    }
    std::uint64_t dim = 1;
    for (unsigned i = 0; i < n; ++i) dim *= 3;
    assemble_rows(
        n, dim, terms, [](std::span<const Letter> s) { return full_index(s); },
        [](std::uint64_t r, std::span<Letter> out) { decode_full_index(r, out); }, row_ptr, cols, values);
    return SparseOperator(dim, std::move(row_ptr), std::move(cols), std::move(values), BasisInfo{n, std::nullopt, "full"});
  }
  if (n > cap) {
    throw ResourceError("sector build: n=" + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap));
  }
  const ClassRanker ranker(n, *sector);
  if (ranker.size() == 0) throw InputError("sector block: empty class");
  assemble_rows(
      n, ranker.size(), terms, [&](std::span<const Letter> s) { return ranker.try_rank(s); },
      [&](std::uint64_t r, std::span<Letter> out) { ranker.unrank_into(r, out); }, row_ptr, cols, values);
  return SparseOperator(ranker.size(), std::move(row_ptr), std::move(cols), std::move(values),
                        BasisInfo{n, *sector, "sector"});
}

SparseOperator build_hamiltonian(unsigned n, std::span<const double> weights) {
  if (n < 2) throw InputError("build_hamiltonian: n must be at least 2");
  ChainTerms t = chain_terms(n, Variant::Full);
  if (!weights.empty()) {
    if (weights.size() != n + 1) throw InputError("build_hamiltonian: expected n+1 weights g_0..g_n");
    for (double g : weights)
      if (!(g >= 1.0)) throw InputError("build_hamiltonian: weights must be >= 1");
    t.left_wall = weights[0];
    t.right_wall = weights[n];
    for (unsigned j = 0; j + 1 < n; ++j) t.move[j] = t.interaction[j] = weights[j + 1];
  }
  return assemble(n, std::nullopt, t);
}

SparseOperator build_hmove(unsigned n) { return assemble(n, std::nullopt, ChainTerms::uniform(n, 1.0, 0.0, 0.0, 0.0)); }

SparseOperator build_hint(unsigned n) { return assemble(n, std::nullopt, ChainTerms::uniform(n, 0.0, 1.0, 0.0, 0.0)); }

SparseOperator build_heps(unsigned n, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InputError("build_heps: eps must lie in (0, 1]");
  return assemble(n, std::nullopt, ChainTerms::uniform(n, 1.0, eps, 1.0, 1.0));
}

SparseOperator sector_block(unsigned n, SectorLabel label, Variant variant, unsigned cap) {
  return assemble(n, label, chain_terms(n, variant), cap);
}

std::vector<double> class_state_full(unsigned n, SectorLabel label) {
  if (n > kFullSpaceCap) throw ResourceError("class_state_full: n exceeds full-space cap");
  std::uint64_t dim = 1;
  for (unsigned i = 0; i < n; ++i) dim *= 3;
  std::vector<double> v(dim, 0.0);
  const ClassRanker ranker(n, label);
  const double amp = 1.0 / std::sqrt(static_cast<double>(ranker.size()));
  std::vector<Letter> s(n);
  for (std::uint64_t r = 0; r < ranker.size(); ++r) {
    ranker.unrank_into(r, s);
    v[full_index(s)] = amp;
  }
  return v;
}

}  // namespace motzkin
