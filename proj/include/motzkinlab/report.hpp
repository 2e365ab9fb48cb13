#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "motzkinlab/combinatorics.hpp"
#include "motzkinlab/dyckwalk.hpp"
#include "motzkinlab/eigensolve.hpp"
#include "motzkinlab/entanglement.hpp"
#include "motzkinlab/supertree.hpp"
#include "motzkinlab/unbalanced.hpp"

namespace motzkin {

const char* version();

// Exact values travel as "num/den" text; integers and doubles stay typed.
using Cell = std::variant<long long, double, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Summary lines: CSV trailer comments, JSON "summary" object.
  std::vector<std::pair<std::string, Cell>> summary;
};

enum class Format { Csv, Json };

Format parse_format(std::string_view name);

std::string format_rational(const Rational& q);
std::string format_double(double x);

void write_table(std::ostream& os, const Table& table, Format format);
std::string render_table(const Table& table, Format format);

// Frozen column orders, one builder per subcommand.
Table gap_table(const GapFit& fit);
Table entropy_table(const std::vector<EntropyPoint>& points);
Table schmidt_table(const SchmidtSpectrum& spectrum);
Table walk_table(const std::vector<WalkGap>& rows);
Table supertree_table(const Supertree& flow, const Supertree& recursive);
Table edgeload_table(const std::vector<EdgeLoad>& rows);
Table sector_table(const std::vector<SectorEnergy>& rows);

}  // namespace motzkin
