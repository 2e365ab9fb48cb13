#include "motzkinlab/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "motzkinlab/errors.hpp"

namespace motzkin {

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return std::get<std::string>(c);
}

// CSV fields never contain commas or quotes here except sector lists, which
// use '|' as separator.
void write_csv(std::ostream& os, const Table& t) {
  os << "# motzkinlab " << version() << ' ' << t.command << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
  for (const auto& [key, value] : t.summary) os << "# " << key << '=' << cell_text(value) << '\n';
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json doc;
  doc["artifact"] = "motzkinlab";
  doc["version"] = version();
  doc["command"] = t.command;
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  if (!t.summary.empty()) {
    nlohmann::ordered_json s;
    for (const auto& [key, value] : t.summary) s[key] = cell_json(value);
    doc["summary"] = std::move(s);
  }
  os << doc.dump(2) << '\n';
}

long long as_ll(std::size_t v) { return static_cast<long long>(v); }

}  // namespace

const char* version() { return MOTZKINLAB_VERSION; }

Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw InputError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_table(std::ostream& os, const Table& table, Format format) {
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw InternalError("write_table: row width mismatch in " + table.command);
  }
  if (format == Format::Csv) {
    write_csv(os, table);
  } else {
    write_json(os, table);
  }
}

std::string render_table(const Table& table, Format format) {
  std::ostringstream os;
  write_table(os, table, format);
  return os.str();
}

Table gap_table(const GapFit& fit) {
  Table t{"gap", {"n", "lambda1", "lambda2", "gap", "first_excited_sector", "one_unmatched", "residual"}, {}, {}};
  for (const auto& r : fit.rows) {
    t.rows.push_back({r.n, r.lambda1, r.lambda2, r.gap, r.sector_of_first_excited,
                      static_cast<long long>(r.one_unmatched), r.residual});
  }
  if (fit.fit) {
    t.summary.emplace_back("fit_slope", fit.fit->slope);
    t.summary.emplace_back("fit_intercept_ln", fit.fit->intercept);
    t.summary.emplace_back("fit_rms", fit.fit->rms);
    t.summary.emplace_back("fit_points", as_ll(fit.fit->points));
  }
  return t;
}

Table entropy_table(const std::vector<EntropyPoint>& points) {
  Table t{"entropy", {"n", "S_bits", "c_n", "schmidt_rank", "max_pm_times_sqrt_n"}, {}, {}};
  for (const auto& p : points) {
    t.rows.push_back({p.n, p.entropy_bits, p.c_n, as_ll(p.schmidt_rank), p.max_pm_sqrt_n});
  }
  return t;
}

Table schmidt_table(const SchmidtSpectrum& spectrum) {
  Table t{"schmidt", {"m", "p_m", "p_m_decimal"}, {}, {}};
  for (std::size_t m = 0; m < spectrum.p.size(); ++m) {
    t.rows.push_back({as_ll(m), format_rational(spectrum.p[m]), spectrum.p[m].get_d()});
  }
  t.summary.emplace_back("n", static_cast<long long>(spectrum.n));
  t.summary.emplace_back("sum_is_one", static_cast<long long>(spectrum.sums_to_one()));
  return t;
}

Table walk_table(const std::vector<WalkGap>& rows) {
  Table t{"walk",
          {"n", "dim", "lambda2_P", "gap_P", "lambda2_Heff", "identity_residual", "min_edge_prob_insert",
           "min_edge_prob_remove"},
          {},
          {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.n, as_ll(r.dim), r.lambda2_p, r.gap_p, r.lambda2_heff, r.identity_residual,
                      format_rational(r.min_insert), format_rational(r.min_remove)});
  }
  return t;
}

Table supertree_table(const Supertree& flow, const Supertree& recursive) {
  Table t{"supertree", {"index", "node", "level", "parent", "parent_recursive", "children"}, {}, {}};
  auto parent_cell = [](const Supertree& tree, std::size_t i) -> Cell {
    return tree.parent[i] == kNoParent ? -1LL : as_ll(tree.parent[i]);
  };
  for (std::size_t i = 0; i < flow.nodes.size(); ++i) {
    t.rows.push_back({as_ll(i), flow.nodes.word(i).str(), static_cast<long long>(flow.nodes.level(i)),
                      parent_cell(flow, i), parent_cell(recursive, i), as_ll(flow.children[i].size())});
  }
  const auto check = check_supertree(flow);
  t.summary.emplace_back("k_max", static_cast<long long>(flow.k_max()));
  t.summary.emplace_back("max_children", as_ll(check.max_children));
  return t;
}

Table edgeload_table(const std::vector<EdgeLoad>& rows) {
  Table t{"edgeload", {"n", "rho", "max_len", "bound", "true_gap"}, {}, {}};
  for (const auto& r : rows) t.rows.push_back({r.n, r.rho_value, as_ll(r.max_length), r.bound, r.true_gap});
  return t;
}

Table sector_table(const std::vector<SectorEnergy>& rows) {
  Table t{"sector", {"n", "p", "q", "variant", "lambda1", "dim"}, {}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({r.n, r.label.p, r.label.q, std::string(variant_name(r.variant)), r.lambda1, as_ll(r.dim)});
  }
  return t;
}

}  // namespace motzkin
