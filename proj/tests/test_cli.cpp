#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {
namespace fs = std::filesystem;

const char* cli_path() { return DEGEN_CLI_PATH; }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) {
    path = fs::temp_directory_path() /
           (std::string("degen_cli_") + tag + "_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// a small, fast config: 2x2 spatial grid, one t and y point
std::string tiny_config(const std::string& extra = "") {
  return std::string(R"({
    "frame": {"phi": 0.5235987755982988},
    "grid": {"t": [0, 0, 1], "x": [-1, 1, 2], "y": [0, 0, 1], "z": [-1, 1, 2]})") +
         (extra.empty() ? "" : ",\n" + extra) + "\n}";
}
}  // namespace

TEST_CASE("build then rerun is byte-identical") {
  TempDir tmp("det");
  const fs::path cfg = tmp.path / "cfg.json";
  write_file(cfg, tiny_config());
  const fs::path out1 = tmp.path / "o1", out2 = tmp.path / "o2";
  REQUIRE(run_cli("build --config " + cfg.string() + " --out " + out1.string()) == 0);
  REQUIRE(run_cli("build --config " + cfg.string() + " --out " + out2.string()) == 0);
  for (const char* f : {"spinor.csv", "fields.csv", "spin.csv", "report.json"}) {
    INFO(f);
    const std::string a = slurp(out1 / f), b = slurp(out2 / f);
    REQUIRE_FALSE(a.empty());
    CHECK(a == b);
  }
}

TEST_CASE("csv headers are exactly as documented") {
  TempDir tmp("hdr");
  const fs::path cfg = tmp.path / "cfg.json";
  write_file(cfg, tiny_config());
  const fs::path out = tmp.path / "o";
  REQUIRE(run_cli("build --config " + cfg.string() + " --out " + out.string()) == 0);
  auto first_line = [&](const char* f) {
    const std::string text = slurp(out / f);
    return text.substr(0, text.find('\n'));
  };
  CHECK(first_line("spinor.csv") == "t,x,y,z,re0,im0,re1,im1,re2,im2,re3,im3,abs");
  CHECK(first_line("fields.csv") == "t,x,y,z,a0,a1,a2,a3,Ex,Ey,Ez,Bx,By,Bz");
  CHECK(first_line("spin.csv") == "t,x,y,z,Sx,Sy,Sz");
}

TEST_CASE("exit codes track the failure classes") {
  TempDir tmp("exit");
  const fs::path out = tmp.path / "o";

  SECTION("verification failure exits 1") {
    const fs::path cfg = tmp.path / "perturbed.json";
    write_file(cfg, tiny_config(R"("perturb": {"a2": 0.1})"));
    CHECK(run_cli("verify --config " + cfg.string() + " --out " + out.string()) == 1);
  }
  SECTION("structural config problems exit 2") {
    const fs::path cfg = tmp.path / "bad.json";
    write_file(cfg, R"({"frame": {"phi": 0.5}, "unknown_key": 1})");
    CHECK(run_cli("verify --config " + cfg.string() + " --out " + out.string()) == 2);
    write_file(cfg, "{ not json");
    CHECK(run_cli("verify --config " + cfg.string() + " --out " + out.string()) == 2);
    CHECK(run_cli("verify --config " + (tmp.path / "nonexistent.json").string() +
                  " --out " + out.string()) == 2);
  }
  SECTION("expression problems exit 3") {
    const fs::path cfg = tmp.path / "expr.json";
    write_file(cfg, tiny_config(R"("generators": {"h": "sin(t"})"));
    CHECK(run_cli("build --config " + cfg.string() + " --out " + out.string()) == 3);
    write_file(cfg, tiny_config(R"("generators": {"h": "q + 1"})"));
    CHECK(run_cli("build --config " + cfg.string() + " --out " + out.string()) == 3);
  }
  SECTION("success exits 0") {
    const fs::path cfg = tmp.path / "ok.json";
    write_file(cfg, tiny_config());
    CHECK(run_cli("fields --config " + cfg.string() + " --out " + out.string()) == 0);
  }
}

TEST_CASE("seed override changes the report but stays reproducible") {
  TempDir tmp("seed");
  const fs::path cfg = tmp.path / "cfg.json";
  write_file(cfg, tiny_config());
  const fs::path o1 = tmp.path / "a", o2 = tmp.path / "b", o3 = tmp.path / "c";
  REQUIRE(run_cli("verify --config " + cfg.string() + " --seed 7 --out " + o1.string()) == 0);
  REQUIRE(run_cli("verify --config " + cfg.string() + " --seed 7 --out " + o2.string()) == 0);
  REQUIRE(run_cli("verify --config " + cfg.string() + " --seed 8 --out " + o3.string()) == 0);
  const std::string a = slurp(o1 / "report.json");
  CHECK(a == slurp(o2 / "report.json"));
  CHECK(a != slurp(o3 / "report.json"));
}

TEST_CASE("spin subcommand refuses two-component kinds") {
  TempDir tmp("wspin");
  const fs::path cfg = tmp.path / "w.json";
  write_file(cfg, tiny_config(R"("particle": {"kind": "weyl+"})"));
  CHECK(run_cli("spin --config " + cfg.string() + " --out " + (tmp.path / "o").string()) ==
        2);
}
