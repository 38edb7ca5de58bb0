#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>

#include "abclab/errors.hpp"
#include "abclab/report.hpp"

using namespace abclab;

namespace {
RunReport sample_report() {
  RunReport r;
  r.scenario = {{"kind", "mzi"}, {"params", {{"wavelength_cm", 1.0}}}};
  r.columns = {"sweep_index", "label", "value_cm"};
  for (std::int64_t i = 0; i < 3; ++i) r.rows.push_back({i, std::string(i == 1 ? "a,\"b\"" : "plain"), 0.1 * i});
  r.checks.push_back(Check::relative("something", 1.0, 1.0 + 1e-13, 1e-12));
  r.checks.back().sweep_index = 2;
  r.checks.push_back(Check::below("small", 1e-8, 1e-9));
  r.errors.push_back({1, "boom"});
  r.warnings.push_back("careful");
  return r;
}
}  // namespace

TEST_CASE("doubles use the shortest round-trip form") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(12.566370614359172) == "12.566370614359172");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("check factories decide pass/fail") {
  CHECK(Check::absolute("a", 1.0, 1.0 + 1e-13, 1e-12).pass);
  CHECK_FALSE(Check::absolute("a", 1.0, 1.1, 1e-12).pass);
  CHECK(Check::relative("r", 1e10, 1e10 * (1 + 1e-13), 1e-12).pass);
  CHECK_FALSE(Check::below("b", 1.0, 2.0).pass);
  CHECK(Check::above("b", 1.0, 2.0).pass);
  CHECK_FALSE(Check::absolute("nan", 0.0, std::nan(""), 1.0).pass);
}

TEST_CASE("csv: header plus one line per row, RFC 4180 quoting, LF endings") {
  const std::string csv = to_csv(sample_report());
  CHECK(csv == "sweep_index,label,value_cm\n0,plain,0\n1,\"a,\"\"b\"\"\",0.1\n2,plain,0.2\n");
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(to_csv(sample_report()) == csv);
}

TEST_CASE("json has a schema version and round-trips") {
  const auto r = sample_report();
  const Json doc = to_json(r);
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("rows").size() == 3);
  const auto back = report_from_json(Json::parse(doc.dump()));
  CHECK(back == r);
  CHECK(render(r, Format::Json) == render(back, Format::Json));
}

TEST_CASE("failed checks are counted") {
  auto r = sample_report();
  CHECK(r.failed_checks() == 0);
  r.checks.push_back(Check::above("x", 1.0, 0.0));
  CHECK(r.failed_checks() == 1);
}

TEST_CASE("emit writes files and reports unwritable paths") {
  const auto path = std::filesystem::temp_directory_path() / "abclab_test_report.csv";
  emit(sample_report(), Format::Csv, path);
  std::ifstream in(path, std::ios::binary);
  const std::string written{std::istreambuf_iterator<char>(in), {}};
  CHECK(written == to_csv(sample_report()));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit(sample_report(), Format::Csv, "/nonexistent-dir/x.csv"), Error);
  CHECK_THROWS_AS(parse_format("xml"), ValidationError);
}
