// abclab command-line front end: run/sweep scenario files and the seeded
// invariant suite.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "abclab/errors.hpp"
#include "abclab/report.hpp"
#include "abclab/runner.hpp"
#include "abclab/scenario.hpp"
#include "abclab/verify.hpp"

namespace {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInvalidInput = 2, kRuntimeError = 3 };

void summarize(const abclab::RunReport& report) {
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& e : report.errors) {
    std::cerr << "error at sweep index " << e.sweep_index << ": " << e.message << '\n';
  }
  for (const auto& c : report.checks) {
    if (c.pass) continue;
    std::cerr << "FAIL " << c.name;
    if (c.sweep_index) std::cerr << " [sweep " << *c.sweep_index << ']';
    std::cerr << ": expected " << abclab::format_double(c.expected) << ", actual "
              << abclab::format_double(c.actual) << ", tol " << abclab::format_double(c.tol) << " (" << c.mode
              << ")\n";
  }
  std::cerr << report.checks.size() - report.failed_checks() << '/' << report.checks.size() << " checks passed\n";
}

int exit_code_for(const abclab::RunReport& report) {
  if (!report.errors.empty()) return kRuntimeError;
  return report.failed_checks() == 0 ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abclab: Aharonov-Bohm / Aharonov-Casher scenario simulator"};
  app.require_subcommand(1);

  std::string output;
  std::string format_id;
  app.add_option("-o,--output", output, "Write the report to this path (default: stdout)");
  app.add_option("-f,--format", format_id, "Report format: csv or json (default: scenario output.format, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));

  std::string scenario_path;
  auto* run = app.add_subcommand("run", "Run a scenario at its base parameters");
  run->add_option("file", scenario_path, "Scenario file")->required();
  auto* sweep = app.add_subcommand("sweep", "Run a scenario over its sweep block");
  sweep->add_option("file", scenario_path, "Scenario file")->required();

  std::uint64_t seed = 42;
  auto* verify = app.add_subcommand("verify", "Run the seeded invariant suite");
  verify->add_option("--seed", seed, "Random seed");
  // Global options are also accepted after the subcommand.
  for (auto* sub : {run, sweep, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalidInput;
  }

  try {
    abclab::RunReport report;
    std::string out_path = output;
    std::string fmt = format_id;

    if (*verify) {
      report = abclab::run_verify_suite(seed);
    } else {
      const auto s = abclab::scenario::load_scenario(scenario_path);
      if (*sweep && !s.sweep) {
        throw abclab::ValidationError("sweep", "the sweep subcommand requires a sweep block");
      }
      if (out_path.empty()) out_path = s.output.path;
      if (fmt.empty()) fmt = s.output.format;
      report = abclab::run_scenario(s, {.use_sweep = static_cast<bool>(*sweep)});
    }

    abclab::emit(report, abclab::parse_format(fmt.empty() ? "csv" : fmt), out_path);
    summarize(report);
    return exit_code_for(report);
  } catch (const abclab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const abclab::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const abclab::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
