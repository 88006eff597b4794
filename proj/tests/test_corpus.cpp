#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "usd/corpus.hpp"
#include "usd/report.hpp"

#include "json.hpp"

using namespace usd;

TEST_CASE("the built-in corpus passes end to end") {
  const CorpusReport report = run_corpus();
  for (const auto& row : report.rows) {
    INFO(row.name);
    for (const auto& why : row.failures) INFO(why);
    CHECK(row.pass);
  }
  CHECK(report.all_pass);
  CHECK(report.rows.size() == builtin_corpus().size());
}

TEST_CASE("filtering selects a single case") {
  const CorpusReport report = run_corpus("example3");
  REQUIRE(report.rows.size() == 1);
  const CaseResult& row = report.rows[0];
  CHECK(row.name == "example3_boundary_gap");
  CHECK(std::abs(row.bound - 0.4758) < 5e-4);
  CHECK(std::abs(row.p_opt - 0.4632) < 5e-4);
  CHECK(row.bound_gap > 0.01);
}

TEST_CASE("a filter matching nothing produces an empty passing report") {
  const CorpusReport report = run_corpus("zzz_nothing");
  CHECK(report.rows.empty());
  CHECK(report.all_pass);
}

TEST_CASE("a malformed filter pattern is rejected") {
  CHECK_THROWS_AS(run_corpus("("), std::invalid_argument);
}

TEST_CASE("the parametrized extension hits its closed-form optimum") {
  for (double p : {0.2, 0.8}) {
    const CorpusCase c = example1_extension(p);
    CHECK(*c.expected_p_opt == doctest::Approx(p + (4.0 / 9.0) * (1 - p)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(example1_extension(0.0), std::invalid_argument);
  CHECK_THROWS_AS(example1_extension(1.0), std::invalid_argument);
}

TEST_CASE("reports are byte-identical across runs with the same seed") {
  const std::string a = emit_report(run_corpus("c1_two_state"), ReportFormat::json);
  const std::string b = emit_report(run_corpus("c1_two_state"), ReportFormat::json);
  CHECK(a == b);
}

TEST_CASE("report formats are well formed") {
  const CorpusReport report = run_corpus("c1_two_state_s50");

  const std::string text = emit_report(report, ReportFormat::text);
  CHECK(text.find("c1_two_state_s50") != std::string::npos);
  CHECK(text.find("pass") != std::string::npos);

  const std::string csv = emit_report(report, ReportFormat::csv);
  const size_t header_cols = std::count(csv.begin(), csv.begin() + csv.find('\n'), ',');
  CHECK(header_cols == 11);

  const auto parsed = nlohmann::json::parse(emit_report(report, ReportFormat::json));
  CHECK(parsed["all_pass"].get<bool>());
  CHECK(parsed["cases"].size() == 1);
  CHECK(parsed["cases"][0]["name"] == "c1_two_state_s50");
  CHECK(std::abs(parsed["cases"][0]["bound"].get<double>() - 0.5) < 1e-6);

  CHECK_THROWS_AS(parse_format("yaml"), std::invalid_argument);
  CHECK(parse_format("csv") == ReportFormat::csv);
}

TEST_CASE("rows come back ordered by name") {
  const CorpusReport report = run_corpus("c3");
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].name < report.rows[1].name);
  CHECK(report.rows[1].name < report.rows[2].name);
}
