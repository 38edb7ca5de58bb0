#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace abclab {

using Json = nlohmann::ordered_json;

using Cell = std::variant<std::int64_t, double, std::string>;

/// One verified claim. `mode` fixes how `tol` is read:
///   "abs": |actual - expected| <= tol
///   "rel": |actual - expected| <= tol * |expected|
///   "lt" : actual < expected (expected is an upper bound, tol unused)
///   "gt" : actual > expected (expected is a lower bound, tol unused)
struct Check {
  std::string name;
  double expected{0.0};
  double actual{0.0};
  double tol{0.0};
  std::string mode{"abs"};
  bool pass{false};
  std::optional<std::int64_t> sweep_index;

  static Check absolute(std::string name, double expected, double actual, double tol);
  static Check relative(std::string name, double expected, double actual, double tol);
  static Check below(std::string name, double bound, double actual);
  static Check above(std::string name, double bound, double actual);

  friend bool operator==(const Check&, const Check&) = default;
};

struct PointError {
  std::int64_t sweep_index{0};
  std::string message;

  friend bool operator==(const PointError&, const PointError&) = default;
};

struct RunReport {
  Json scenario;  ///< echo of the executed scenario
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;  ///< ordered by sweep index
  std::vector<Check> checks;
  std::vector<PointError> errors;
  std::vector<std::string> warnings;

  std::size_t failed_checks() const;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

enum class Format { Csv, Json };

Format parse_format(std::string_view id);

/// Shortest decimal that parses back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_double(double x);

/// RFC 4180 CSV of the rows (header line, then one line per row, LF endings).
std::string to_csv(const RunReport& report);

/// Single JSON document with "schema_version": 1.
Json to_json(const RunReport& report);
RunReport report_from_json(const Json& doc);

/// Serialises in `format`. An empty path writes to standard output.
/// Throws Error naming the path on I/O failure.
void emit(const RunReport& report, Format format, const std::filesystem::path& path);

std::string render(const RunReport& report, Format format);

}  // namespace abclab
