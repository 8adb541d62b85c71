#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "degen/run.hpp"

using namespace degen;

namespace {
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const char* tag) {
    path = std::filesystem::temp_directory_path() /
           (std::string("degen_run_") + tag + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

RunConfig tiny_config() {
  json j = json::parse(R"({
    "frame": {"phi": 0.5235987755982988},
    "grid": {"t": [0, 0, 1], "x": [-1, 1, 2], "y": [0, 0, 1], "z": [-1, 1, 2]}
  })");
  return parse_config(j);
}
}  // namespace

TEST_CASE("build writes the configured tables over the grid") {
  TempDir tmp("build");
  const RunOutcome out = execute(Subcommand::build, tiny_config(), tmp.path);
  CHECK(out.exit_code == 0);
  CHECK(out.written ==
        std::vector<std::string>{"spinor.csv", "fields.csv", "spin.csv", "report.json"});
  const std::string spinor = slurp(tmp.path / "spinor.csv");
  // header plus 1*2*1*2 grid points
  CHECK(std::count(spinor.begin(), spinor.end(), '\n') == 5);
  CHECK(spinor.rfind("t,x,y,z,re0,im0,", 0) == 0);
  // rows iterate row-major: x moves before z
  CHECK(spinor.find("\n0,-1,0,-1,") != std::string::npos);
  CHECK(spinor.find("\n0,-1,0,1,") != std::string::npos);
  CHECK(spinor.find("\n0,1,0,-1,") != std::string::npos);
}

TEST_CASE("two-component builds zero-fill the upper spinor slots") {
  TempDir tmp("weyl");
  json j = json::parse(R"({
    "frame": {"phi": 0.5235987755982988},
    "particle": {"kind": "weyl+"},
    "grid": {"t": [0, 0, 1], "x": [0, 0, 1], "y": [0, 0, 1], "z": [0, 0, 1]}
  })");
  const RunOutcome out = execute(Subcommand::build, parse_config(j), tmp.path);
  CHECK(out.exit_code == 0);
  const std::string spinor = slurp(tmp.path / "spinor.csv");
  // at the origin the field is chi+ = (cos(phi), 1 - sin(phi)); re2..im3 stay 0
  std::istringstream lines(spinor);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(row == "0,0,0,0,0.8660254037844387,0,0.5,0,0,0,0,0,1");
}

TEST_CASE("verify returns pass on the default family and fail when perturbed") {
  TempDir tmp("verify");
  RunConfig cfg = tiny_config();
  CHECK(execute(Subcommand::verify, cfg, tmp.path).exit_code == 0);
  cfg.perturb = {0, 0, 0.1, 0};
  const RunOutcome out = execute(Subcommand::verify, cfg, tmp.path);
  CHECK(out.exit_code == 1);
  CHECK(out.report["summary"]["status"] == "fail");
  bool residual_flagged = false;
  for (const auto& c : out.report["results"]["checks"])
    if (c["name"] == "equation residual") residual_flagged = c["status"] == "fail";
  CHECK(residual_flagged);
}

TEST_CASE("verify skips suites that do not apply to the kind") {
  TempDir tmp("skips");
  json j = json::parse(R"({
    "frame": {"phi": 0.5235987755982988},
    "particle": {"kind": "weyl-"}
  })");
  const RunOutcome out = execute(Subcommand::verify, parse_config(j), tmp.path);
  CHECK(out.exit_code == 0);
  int skipped = 0;
  for (const auto& c : out.report["results"]["checks"])
    if (c["status"] == "skipped") ++skipped;
  CHECK(out.report["summary"]["checks_skipped"].get<int>() == skipped);
  CHECK(skipped >= 2);  // spin and separable-factor suites at least
}

TEST_CASE("sweep reruns the invariance under ten shifts") {
  TempDir tmp("sweep");
  const RunOutcome out = execute(Subcommand::sweep, tiny_config(), tmp.path);
  CHECK(out.exit_code == 0);
  CHECK(out.report["results"]["shifts"].size() == 10);
  for (const auto& s : out.report["results"]["shifts"]) {
    CHECK(s["status"] == "pass");
    CHECK(s["max_residual_norm_change"].get<double>() <= 1e-13);
  }
}

TEST_CASE("reports embed the discrepancy findings") {
  TempDir tmp("disc");
  const RunOutcome out = execute(Subcommand::verify, tiny_config(), tmp.path);
  const auto& d = out.report["discrepancies"];
  CHECK(d["k23_assignment"]["derived_max_rel_residual"].get<double>() < 1e-10);
  CHECK(d["k23_assignment"]["swapped_median_rel_residual"].get<double>() > 1e-3);
  CHECK(d["s2_minus_s3_sign"]["max_deviation_from_x_tan_minus_z"].get<double>() < 1e-12);
  CHECK(d["s2_minus_s3_sign"]["max_deviation_from_x_tan_plus_z"].get<double>() > 1e-3);
}

TEST_CASE("selftest outcome mirrors the built-in suite") {
  TempDir tmp("self");
  RunConfig cfg;  // defaults only, as the command line does without a config
  const RunOutcome out = execute(Subcommand::selftest, cfg, tmp.path);
  CHECK(out.exit_code == 0);
  CHECK(out.report["results"]["checks"].size() == 13);
  for (const auto& c : out.report["results"]["checks"]) CHECK(c["status"] == "pass");
}
