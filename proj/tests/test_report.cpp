#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "degen/report.hpp"

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
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("degen_report_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};
}  // namespace

TEST_CASE("doubles serialize as shortest round-trip decimals") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1e30) == "1e+30");
  const double third = 1.0 / 3.0;
  CHECK(std::stod(format_double(third)) == third);
  const double pi = 3.141592653589793;
  CHECK(std::stod(format_double(pi)) == pi);
}

TEST_CASE("csv writer emits exact bytes") {
  TempDir tmp;
  CsvTable t;
  t.header = "a,b,c";
  t.rows = {{1.0, 0.5, -0.0}, {2.25, -3.0, 1e-3}};
  const auto file = tmp.path / "t.csv";
  write_csv(file, t);
  CHECK(slurp(file) == "a,b,c\n1,0.5,0\n2.25,-3,0.001\n");
}

TEST_CASE("json writer pretty-prints with a trailing newline") {
  TempDir tmp;
  nlohmann::ordered_json j;
  j["z_first"] = 1;
  j["a_second"] = "text";
  const auto file = tmp.path / "r.json";
  write_json(file, j);
  const std::string got = slurp(file);
  CHECK(got.back() == '\n');
  // ordered_json preserves insertion order
  CHECK(got.find("z_first") < got.find("a_second"));
}

TEST_CASE("table headers match the documented layouts") {
  CHECK(std::string(kSpinorHeader) ==
        "t,x,y,z,re0,im0,re1,im1,re2,im2,re3,im3,abs");
  CHECK(std::string(kFieldsHeader) == "t,x,y,z,a0,a1,a2,a3,Ex,Ey,Ez,Bx,By,Bz");
  CHECK(std::string(kSpinHeader) == "t,x,y,z,Sx,Sy,Sz");
}
