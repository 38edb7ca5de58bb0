#include <catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "abclab/report.hpp"

namespace fs = std::filesystem;

namespace {
const fs::path kSource = ABCLAB_SOURCE_DIR;

struct Scratch {
  fs::path dir = fs::temp_directory_path() / ("abclab_cli_" + std::to_string(::getpid()));
  Scratch() { fs::create_directories(dir); }
  ~Scratch() { fs::remove_all(dir); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
};

int cli(const std::string& args) {
  const std::string cmd = "\"" ABCLAB_CLI_PATH "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const char* kFieldFree = "kind: field-free\nunits: scaled-unity\nparams:\n  d_cm: 1\n";
}  // namespace

TEST_CASE("exit code 0 when every check passes") {
  CHECK(cli("run " + (kSource / "scenarios/ab_solenoid_unit.yaml").string()) == 0);
  CHECK(cli("sweep " + (kSource / "scenarios/ab_solenoid_sweep.yaml").string()) == 0);
  CHECK(cli("verify --seed 42") == 0);
}

TEST_CASE("exit code 1 when a check fails") {
  Scratch s;
  const auto f = s.write("perturbed.yaml", std::string(kFieldFree) + "  perturb_fraction: 0.01\n");
  CHECK(cli("run " + f.string()) == 1);
}

TEST_CASE("exit code 2 for parse and validation problems") {
  Scratch s;
  CHECK(cli("run " + s.write("broken.yaml", "kind: [\n").string()) == 2);
  CHECK(cli("run " + s.write("nomass.yaml", "kind: ab-solenoid\nparams:\n  r_cm: 1\n").string()) == 2);
  CHECK(cli("sweep " + s.write("nosweep.yaml", kFieldFree).string()) == 2);
  CHECK(cli("run " + (s.dir / "missing.yaml").string()) == 2);
  CHECK(cli("frobnicate") == 2);
  CHECK(cli("run " + s.write("ok.yaml", kFieldFree).string() + " --format xml") == 2);
}

TEST_CASE("exit code 3 when a sweep point fails at run time") {
  Scratch s;
  const auto f = s.write("badpoint.yaml", std::string(kFieldFree) +
                                              "sweep:\n  param: d_cm\n  from: -1\n  to: 1\n  steps: 3\n");
  CHECK(cli("sweep " + f.string()) == 3);
}

TEST_CASE("output and format options") {
  Scratch s;
  const auto out = s.dir / "r.json";
  REQUIRE(cli("run " + (kSource / "scenarios/ab_solenoid_unit.yaml").string() + " --format json --output " +
              out.string()) == 0);
  const auto doc = abclab::Json::parse(slurp(out));
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("rows").size() == 1);

  const auto csv = s.dir / "v.csv";
  REQUIRE(cli("verify --seed 3 -o " + csv.string()) == 0);
  CHECK(slurp(csv).rfind("check,samples,", 0) == 0);
}
