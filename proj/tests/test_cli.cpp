#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#ifndef RSL_CLI_PATH
#error "RSL_CLI_PATH must point at the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

struct CliDir {
  fs::path path;
  CliDir() {
    path = fs::temp_directory_path() /
           ("rsl_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~CliDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const CliDir& dir, const std::string& args) {
  std::string out_file = dir.file("stdout.txt");
  std::string cmd = std::string(RSL_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.stdout_text = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int data_rows(const std::string& csv) {
  int rows = -1;  // header does not count
  std::stringstream ss(csv);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) ++rows;
  return rows;
}

}  // namespace

TEST_CASE("zeros subcommand finds twenty-nine zeros below one hundred") {
  CliDir dir;
  RunResult r = run_cli(dir, "zeros --emax 100 --no-cache --out " + dir.file("z.csv"));
  REQUIRE(r.exit_code == 0);
  std::string csv = slurp(dir.file("z.csv"));
  CHECK(data_rows(csv) == 29);
  CHECK(csv.rfind("k,gamma\n", 0) == 0);
  CHECK(csv.find("1,14.134725141") != std::string::npos);
}

TEST_CASE("identity subcommand prints the closed form") {
  CliDir dir;
  RunResult r = run_cli(dir, "identity --x 0.5 --out " + dir.file("id.csv"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.find("-0.69314718056") != std::string::npos);
  std::string csv = slurp(dir.file("id.csv"));
  CHECK(data_rows(csv) == 1);
}

TEST_CASE("rmt subcommand emits an exact pair at base dimension one") {
  CliDir dir;
  RunResult r = run_cli(dir, "rmt --class C --n 1 --samples 1 --seed 7 --out " +
                                 dir.file("r.csv"));
  REQUIRE(r.exit_code == 0);
  std::ifstream in(dir.file("r.csv"));
  std::string header;
  std::getline(in, header);
  CHECK(header == "sample,k,lambda");
  double l1 = 0.0, l2 = 0.0;
  char c;
  int s, k;
  in >> s >> c >> k >> c >> l1;
  in >> s >> c >> k >> c >> l2;
  CHECK(std::fabs(l1 + l2) < 1e-12);
}

TEST_CASE("every run writes a manifest recording the configuration") {
  CliDir dir;
  RunResult r = run_cli(dir, "count --emin 10 --emax 20 --step 5 --out " +
                                 dir.file("c.csv"));
  REQUIRE(r.exit_code == 0);
  nlohmann::json m = nlohmann::json::parse(slurp(dir.file("c.csv.manifest.json")));
  CHECK(m["command"] == "count");
  CHECK(m.contains("params"));
  CHECK(m.contains("seed"));
  CHECK(m.contains("versions"));
  CHECK(m["outputs"][0] == dir.file("c.csv"));
  CHECK(m["params"]["emax"] == "20");
}

TEST_CASE("identical seeds give byte-identical outputs") {
  CliDir dir;
  std::string args_a = "rmt --class D --n 8 --samples 3 --seed 99 --out " +
                       dir.file("a.csv");
  std::string args_b = "rmt --class D --n 8 --samples 3 --seed 99 --out " +
                       dir.file("b.csv");
  REQUIRE(run_cli(dir, args_a).exit_code == 0);
  REQUIRE(run_cli(dir, args_b).exit_code == 0);
  CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
}

TEST_CASE("usage errors exit with code two") {
  CliDir dir;
  CHECK(run_cli(dir, "zeros --no-such-flag").exit_code == 2);
  CHECK(run_cli(dir, "").exit_code == 2);                      // missing subcommand
  CHECK(run_cli(dir, "rmt --class Q --out x.csv").exit_code == 2);  // bad enum
  CHECK(run_cli(dir, "--help").exit_code == 0);
}

TEST_CASE("computation failures exit with code one") {
  CliDir dir;
  RunResult r = run_cli(dir, "stats --input " + dir.file("absent.csv") + " --out " +
                                 dir.file("s.csv"));
  CHECK(r.exit_code == 1);
  CHECK(run_cli(dir, "zeros --emax 100 --base-step 0 --out x.csv").exit_code == 2);
}

TEST_CASE("config file supplies defaults and flags override it") {
  CliDir dir;
  {
    std::ofstream cfg(dir.file("run.cfg"));
    cfg << "[zeros]\nemax=50\nout=" << dir.file("cfg.csv") << "\nno-cache=true\n";
  }
  RunResult r = run_cli(dir, "--config " + dir.file("run.cfg") + " zeros");
  REQUIRE(r.exit_code == 0);
  CHECK(data_rows(slurp(dir.file("cfg.csv"))) == 10);  // zeros below 50

  RunResult o = run_cli(dir, "--config " + dir.file("run.cfg") + " zeros --emax 30 --out " +
                                 dir.file("ov.csv"));
  REQUIRE(o.exit_code == 0);
  CHECK(data_rows(slurp(dir.file("ov.csv"))) == 3);  // flag wins over config
}

TEST_CASE("unknown configuration keys are rejected") {
  CliDir dir;
  {
    std::ofstream cfg(dir.file("bad.cfg"));
    cfg << "[zeros]\nemax=50\nbanana=1\n";
  }
  RunResult r = run_cli(dir, "--config " + dir.file("bad.cfg") + " zeros --out " +
                                 dir.file("x.csv"));
  CHECK(r.exit_code == 2);
}

TEST_CASE("json output format is well formed") {
  CliDir dir;
  RunResult r = run_cli(dir, "count --emin 20 --emax 30 --step 5 --format json --out " +
                                 dir.file("c.json"));
  REQUIRE(r.exit_code == 0);
  nlohmann::json t = nlohmann::json::parse(slurp(dir.file("c.json")));
  REQUIRE(t.is_array());
  REQUIRE(t.size() == 3);
  CHECK(t[0].contains("E"));
  CHECK(t[0].contains("n_exact"));
}

TEST_CASE("zero cache round trip through the cache directory option") {
  CliDir dir;
  std::string cache = dir.file("cache");
  fs::create_directories(cache);
  RunResult first = run_cli(dir, "zeros --emax 40 --cache-dir " + cache + " --out " +
                                     dir.file("z1.csv"));
  REQUIRE(first.exit_code == 0);
  CHECK(first.stdout_text.find("cache hit") == std::string::npos);
  RunResult second = run_cli(dir, "zeros --emax 40 --cache-dir " + cache + " --out " +
                                      dir.file("z2.csv"));
  REQUIRE(second.exit_code == 0);
  CHECK(second.stdout_text.find("cache hit") != std::string::npos);
  CHECK(slurp(dir.file("z1.csv")) == slurp(dir.file("z2.csv")));
}

TEST_CASE("ingest converts a bare table to the cache format") {
  CliDir dir;
  {
    std::ofstream raw(dir.file("raw.txt"));
    raw << "14.134725\n21.022040\n25.010858\n";
  }
  RunResult r = run_cli(dir, "ingest --in " + dir.file("raw.txt") + " --out " +
                                 dir.file("ing.csv"));
  REQUIRE(r.exit_code == 0);
  std::string csv = slurp(dir.file("ing.csv"));
  CHECK(csv.rfind("k,gamma\n", 0) == 0);
  CHECK(data_rows(csv) == 3);
  CHECK(csv.find("2,21.022040000000") != std::string::npos);
}

TEST_CASE("stats pipeline runs end to end on a small zero table") {
  CliDir dir;
  REQUIRE(run_cli(dir, "zeros --emax 300 --no-cache --out " + dir.file("z.csv"))
              .exit_code == 0);
  RunResult r = run_cli(dir, "stats --input " + dir.file("z.csv") + " --kind spacing --out " +
                                 dir.file("sp.csv"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.stdout_text.find("KS distance") != std::string::npos);
}
