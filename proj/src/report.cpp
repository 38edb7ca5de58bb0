#include "abclab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include "abclab/errors.hpp"

namespace abclab {

namespace {

constexpr int kSchemaVersion = 1;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

Json cell_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);  // JSON has no NaN/Inf literals
  }
  return std::get<std::string>(c);
}

Cell cell_from_json(const Json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return s;
}

Json number_json(double x) { return std::isfinite(x) ? Json(x) : Json(format_double(x)); }

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  return std::get<double>(cell_from_json(j));
}

Check finish(Check c) {
  const double diff = std::abs(c.actual - c.expected);
  if (c.mode == "abs") {
    c.pass = diff <= c.tol;
  } else if (c.mode == "rel") {
    c.pass = diff <= c.tol * std::abs(c.expected);
  } else if (c.mode == "lt") {
    c.pass = c.actual < c.expected;
  } else {
    c.pass = c.actual > c.expected;
  }
  return c;
}

}  // namespace

Check Check::absolute(std::string name, double expected, double actual, double tol) {
  return finish({std::move(name), expected, actual, tol, "abs", false, {}});
}
Check Check::relative(std::string name, double expected, double actual, double tol) {
  return finish({std::move(name), expected, actual, tol, "rel", false, {}});
}
Check Check::below(std::string name, double bound, double actual) {
  return finish({std::move(name), bound, actual, 0.0, "lt", false, {}});
}
Check Check::above(std::string name, double bound, double actual) {
  return finish({std::move(name), bound, actual, 0.0, "gt", false, {}});
}

std::size_t RunReport::failed_checks() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

Format parse_format(std::string_view id) {
  if (id == "csv") return Format::Csv;
  if (id == "json") return Format::Json;
  throw ValidationError("format", "must be csv or json");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_csv(const RunReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(report.columns[i]);
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cell_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

Json to_json(const RunReport& report) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["scenario"] = report.scenario;
  doc["columns"] = report.columns;
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) {
      obj[report.columns[i]] = cell_json(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["name"] = c.name;
    j["expected"] = number_json(c.expected);
    j["actual"] = number_json(c.actual);
    j["tol"] = number_json(c.tol);
    j["mode"] = c.mode;
    j["pass"] = c.pass;
    j["sweep_index"] = c.sweep_index ? Json(*c.sweep_index) : Json(nullptr);
    checks.push_back(std::move(j));
  }
  doc["checks"] = std::move(checks);
  Json errors = Json::array();
  for (const auto& e : report.errors) {
    errors.push_back({{"sweep_index", e.sweep_index}, {"message", e.message}});
  }
  doc["errors"] = std::move(errors);
  doc["warnings"] = report.warnings;
  return doc;
}

RunReport report_from_json(const Json& doc) {
  if (doc.value("schema_version", 0) != kSchemaVersion) {
    throw ValidationError("schema_version", "unsupported report schema");
  }
  RunReport r;
  r.scenario = doc.at("scenario");
  r.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& obj : doc.at("rows")) {
    std::vector<Cell> row;
    for (const auto& col : r.columns) row.push_back(cell_from_json(obj.at(col)));
    r.rows.push_back(std::move(row));
  }
  for (const auto& j : doc.at("checks")) {
    Check c;
    c.name = j.at("name").get<std::string>();
    c.expected = number_from_json(j.at("expected"));
    c.actual = number_from_json(j.at("actual"));
    c.tol = number_from_json(j.at("tol"));
    c.mode = j.at("mode").get<std::string>();
    c.pass = j.at("pass").get<bool>();
    if (!j.at("sweep_index").is_null()) c.sweep_index = j.at("sweep_index").get<std::int64_t>();
    r.checks.push_back(std::move(c));
  }
  for (const auto& j : doc.at("errors")) {
    r.errors.push_back({j.at("sweep_index").get<std::int64_t>(), j.at("message").get<std::string>()});
  }
  r.warnings = doc.at("warnings").get<std::vector<std::string>>();
  return r;
}

std::string render(const RunReport& report, Format format) {
  if (format == Format::Csv) return to_csv(report);
  return to_json(report).dump(2) + "\n";
}

void emit(const RunReport& report, Format format, const std::filesystem::path& path) {
  const std::string text = render(report, format);
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error("failed writing output file " + path.string());
}

}  // namespace abclab
