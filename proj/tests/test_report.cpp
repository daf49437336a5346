#include "divzeta/errors.hpp"
#include "divzeta/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

using namespace divzeta;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("doubles round trip") {
  for (double v : {0.1, 1.0 / 3, 6.02214076e23, -2.5e-300, 1e-17}) CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_cell(Cell{}) == "");
  CHECK(format_cell(Cell{true}) == "true");
  CHECK(format_cell(Cell{std::uint64_t{18446744073709551615ull}}) == "18446744073709551615");
}

TEST_CASE("csv layout") {
  const auto t = sieve_dk(2, 200);
  const auto series = delta(correlate(t, 100, 1, 3, CorrelationMode::direct), BinaryClassicalProvider{});
  std::ostringstream out;
  write_csv(out, {{"command", "correlate"}, {"k", "2"}}, correlation_table(series));
  const auto ls = lines(out.str());
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "# command = correlate");
  CHECK(ls[1] == "# k = 2");
  CHECK(ls[2] == "a,C,Delta");
  CHECK(ls[3].rfind("1," + std::to_string(series.at(1)) + ",", 0) == 0);
}

TEST_CASE("column orders") {
  const auto t = sieve_dk(2, 2'000);
  const auto sel = selberg_table({selberg_integral(t, 1'000, 10, 0.05)});
  CHECK(sel.columns == std::vector<std::string>{"x", "h", "J", "trivial_bound"});
  const auto mom = moment_table({moment_on_line(1, 50)});
  CHECK(mom.columns == std::vector<std::string>{"k", "sigma", "T", "value", "error_estimate"});
  const auto gt = g_tilde_table(g_tilde(sieve_dk(2, g_tilde_table_size(2'000, 1'000, 10, 0.05)), 1'000, 2'000, 10,
                                        0.05, BinaryClassicalProvider{}, 50, GridSpec{3, 3}));
  CHECK(gt.columns.front() == "row");
  CHECK(gt.rows.size() <= 10);
  CHECK(std::get<std::string>(gt.rows.back().front()) == "summary");
}

TEST_CASE("json") {
  Table t{{"name", "value", "missing"}, {}};
  t.add({std::string("x"), 0.1, std::numeric_limits<double>::quiet_NaN()});
  t.add({std::string("y"), std::int64_t{-3}, Cell{}});
  std::ostringstream out;
  write_json(out, {{"command", "test"}, {"seed", "42"}}, t);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j["config"]["command"] == "test");
  CHECK(j["config"].begin().key() == "command");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["value"].get<double>() == 0.1);
  CHECK(j["rows"][0]["missing"] == "nan");
  CHECK(j["rows"][1]["value"] == -3);
  CHECK(j["rows"][1]["missing"].is_null());

  std::ostringstream csv;
  write_csv(csv, {}, t);
  CHECK(lines(csv.str())[1] == "x,0.10000000000000001,nan");
  CHECK_THROWS_AS(parse_output_format("xml"), DomainError);
}

}
