#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "motzkinlab/errors.hpp"
#include "motzkinlab/report.hpp"
#include "motzkinlab/verify.hpp"

using namespace motzkin;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("rationals are printed as fractions") {
  CHECK(format_rational(Rational(4, 9)) == "4/9");
  CHECK(format_rational(Rational(1)) == "1/1");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("schmidt CSV") {
  const auto csv = lines(render_table(schmidt_table(schmidt_spectrum(4)), Format::Csv));
  REQUIRE(csv.size() == 7);
  CHECK(csv[0] == std::string("# motzkinlab ") + version() + " schmidt");
  CHECK(csv[1] == "m,p_m,p_m_decimal");
  CHECK(csv[2].rfind("0,4/9,", 0) == 0);
  CHECK(csv[3].rfind("1,4/9,", 0) == 0);
  CHECK(csv[4].rfind("2,1/9,", 0) == 0);
  CHECK(csv[5] == "# n=4");
  CHECK(csv[6] == "# sum_is_one=1");
}

TEST_CASE("JSON mirrors the CSV columns") {
  const auto doc = nlohmann::json::parse(render_table(schmidt_table(schmidt_spectrum(6)), Format::Json));
  CHECK(doc["artifact"] == "motzkinlab");
  CHECK(doc["version"] == version());
  CHECK(doc["command"] == "schmidt");
  CHECK(doc["columns"] == nlohmann::json({"m", "p_m", "p_m_decimal"}));
  REQUIRE(doc["rows"].size() == 4);
  CHECK(doc["rows"][0]["p_m"] == "16/51");
  CHECK(doc["rows"][1]["p_m"] == "25/51");
  CHECK(doc["summary"]["n"] == 6);
}

TEST_CASE("supertree table has Catalan levels") {
  const auto t = supertree_table(flow_supertree(4), recursive_supertree(4));
  CHECK(t.rows.size() == 1 + 1 + 2 + 5 + 14);
  const auto doc = nlohmann::json::parse(render_table(t, Format::Json));
  std::vector<int> per_level(5, 0);
  for (const auto& row : doc["rows"]) ++per_level[row["level"].get<int>()];
  CHECK(per_level == std::vector<int>{1, 1, 2, 5, 14});
  CHECK(doc["rows"][0]["parent"] == -1);
}

TEST_CASE("frozen column orders") {
  CHECK(gap_table({}).columns ==
        std::vector<std::string>{"n", "lambda1", "lambda2", "gap", "first_excited_sector", "one_unmatched", "residual"});
  CHECK(entropy_table({}).columns ==
        std::vector<std::string>{"n", "S_bits", "c_n", "schmidt_rank", "max_pm_times_sqrt_n"});
  CHECK(walk_table({}).columns == std::vector<std::string>{"n", "dim", "lambda2_P", "gap_P", "lambda2_Heff",
                                                           "identity_residual", "min_edge_prob_insert",
                                                           "min_edge_prob_remove"});
  CHECK(edgeload_table({}).columns == std::vector<std::string>{"n", "rho", "max_len", "bound", "true_gap"});
  CHECK(sector_table({}).columns == std::vector<std::string>{"n", "p", "q", "variant", "lambda1", "dim"});
}

TEST_CASE("walk table keeps exact probabilities as fractions") {
  const auto csv = lines(render_table(walk_table({walk_gap(2)}), Format::Csv));
  REQUIRE(csv.size() == 3);
  CHECK(csv[2].substr(csv[2].size() - 8) == ",1/4,1/4");
}

TEST_CASE("rows must match the header") {
  Table t{"x", {"a", "b"}, {{1LL}}, {}};
  CHECK_THROWS_AS(render_table(t, Format::Csv), InternalError);
  CHECK_THROWS_AS(parse_format("xml"), InputError);
  CHECK_THROWS_AS(parse_suite("slow"), InputError);
}

TEST_CASE("result lines") {
  CriterionResult r{3, "schmidt rank n/2+1", true, false, "ok", 1.5};
  CHECK(format_result(r) == "PASS  3 schmidt rank n/2+1: ok (1.5 s)");
  r.passed = false;
  r.expected_failure = true;
  r.id = 11;
  CHECK(format_result(r).rfind("FAIL (documented) 11 ", 0) == 0);
  CHECK_THROWS_AS(run_criterion(15, Suite::Fast), InputError);
}
