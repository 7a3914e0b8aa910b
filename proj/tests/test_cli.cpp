#include "bergmanosc/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("bergmanosc-cli-" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

RunResult run_cli(const std::string& args) {
  static int seq = 0;
  fs::path out_p = work_dir() / ("stdout." + std::to_string(seq));
  fs::path err_p = work_dir() / ("stderr." + std::to_string(seq));
  ++seq;
  std::string cmd = std::string("\"") + BERGMANOSC_CLI_PATH + "\" " + args +
                    " > " + out_p.string() + " 2> " + err_p.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_p);
  r.err = slurp(err_p);
  return r;
}

std::string anchors_path() {
  return std::string(BERGMANOSC_SOURCE_DIR) + "/data/anchors.json";
}

}  // namespace

TEST_CASE("help and version succeed", "[cli]") {
  RunResult v = run_cli("--version");
  CHECK(v.code == 0);
  CHECK(v.out.find("1.0.0") != std::string::npos);
  RunResult h = run_cli("--help");
  CHECK(h.code == 0);
  CHECK(h.out.find("profile") != std::string::npos);
  CHECK(h.out.find("check") != std::string::npos);
}

TEST_CASE("configuration errors exit with code 2", "[cli]") {
  CHECK(run_cli("profile --no-such-flag").code == 2);
  CHECK(run_cli("profile").code == 2);  // --symbol is required
  CHECK(run_cli("profile --symbol 'one()' --functional nope").code == 2);
  RunResult bad_symbol =
      run_cli("index --symbol 'nosuch(1)' --radii 0.9,0.95 --format json --out " +
              (work_dir() / "bs").string());
  CHECK(bad_symbol.code == 2);
  CHECK(bad_symbol.err.find("configuration error") != std::string::npos);
  RunResult big_n =
      run_cli("spectrum --symbol 'one()' --n 513 --format json --out " +
              (work_dir() / "bn").string());
  CHECK(big_n.code == 2);
  CHECK(big_n.err.find("configuration error") != std::string::npos);
}

TEST_CASE("numerical refusals exit with code 3", "[cli]") {
  // the oscillation budget cannot cover a (b=2) phase this close to the edge
  RunResult r = run_cli(
      "profile --symbol 'example45(b=2,beta=1)' --functional bmo1 "
      "--radii 0.9,0.999 --format json --out " +
      (work_dir() / "nf").string());
  CHECK(r.code == 3);
  CHECK(r.err.find("numerical failure") != std::string::npos);
}

TEST_CASE("profile emits verdict, envelope, and deterministic bytes", "[cli]") {
  fs::path out1 = work_dir() / "p1";
  fs::path out2 = work_dir() / "p2";
  std::string common =
      "profile --symbol 'absz2()' --functional vwmo --radii "
      "0.9,0.95,0.99,0.995,0.999 --format both --out ";
  RunResult a = run_cli(common + out1.string());
  REQUIRE(a.code == 0);
  CHECK(a.out.find("VWMO proxy: PASS") != std::string::npos);

  auto env = bergmanosc::json::parse(slurp(out1.string() + ".json"));
  CHECK(env.at("schema") == bergmanosc::schema_version);
  CHECK(env.at("version") == bergmanosc::version);
  CHECK(env.at("config_hash") == bergmanosc::config_hash(env.at("config")));
  CHECK(env.at("config").at("functional") == "vwmo");
  CHECK(env.at("data").at("verdict").get<std::string>().find("PASS") !=
        std::string::npos);
  CHECK(env.at("data").at("values").size() == 5);

  std::string csv = slurp(out1.string() + ".csv");
  CHECK(csv.find("r,value\n") != std::string::npos);
  CHECK(csv.find("# config_hash=") != std::string::npos);

  RunResult b = run_cli(common + out2.string());
  REQUIRE(b.code == 0);
  CHECK(slurp(out1.string() + ".json") == slurp(out2.string() + ".json"));
  CHECK(slurp(out1.string() + ".csv") == slurp(out2.string() + ".csv"));
}

TEST_CASE("format selection controls which files appear", "[cli]") {
  fs::path out = work_dir() / "fmt";
  RunResult r = run_cli(
      "profile --symbol 'one()' --functional vwmo --radii 0.9,0.95 "
      "--format csv --out " +
      out.string());
  REQUIRE(r.code == 0);
  CHECK(fs::exists(out.string() + ".csv"));
  CHECK_FALSE(fs::exists(out.string() + ".json"));
  fs::path out_j = work_dir() / "fmtj";
  r = run_cli(
      "profile --symbol 'one()' --functional vwmo --radii 0.9,0.95 "
      "--format json --out " +
      out_j.string());
  REQUIRE(r.code == 0);
  CHECK(fs::exists(out_j.string() + ".json"));
  CHECK_FALSE(fs::exists(out_j.string() + ".csv"));
}

TEST_CASE("index reports stable winding verdicts", "[cli]") {
  fs::path out = work_dir() / "idx";
  RunResult r = run_cli(
      "index --symbol 'zk(2)' --radii 0.9,0.95 --format json --out " +
      out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("index: -2 (stable across ladder)") != std::string::npos);
  auto env = bergmanosc::json::parse(slurp(out.string() + ".json"));
  CHECK(env.at("data").at("index") == -2);
  CHECK(env.at("data").at("stable") == true);
}

TEST_CASE("vanishing symbols get a clean NotFredholm verdict", "[cli]") {
  fs::path out = work_dir() / "nfidx";
  RunResult r = run_cli(
      "index --symbol 'const(0)' --radii 0.9,0.95 --format json --out " +
      out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("NotFredholm") != std::string::npos);
  auto env = bergmanosc::json::parse(slurp(out.string() + ".json"));
  CHECK(env.at("data").at("fredholm") == false);
}

TEST_CASE("spectrum bundles eigenvalues and cluster files", "[cli]") {
  fs::path out = work_dir() / "spectrum-out";
  RunResult r = run_cli(
      "spectrum --symbol 'zpluszbar()' --n 32 --radii 0.9,0.95 --angles 8 "
      "--format both --out " +
      out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("eigenvalues: 32") != std::string::npos);
  CHECK(fs::exists(out.string() + ".eigenvalues.csv"));
  CHECK(fs::exists(out.string() + ".cluster.csv"));
  auto env = bergmanosc::json::parse(slurp(out.string() + ".json"));
  CHECK(env.at("data").at("eigenvalues").size() == 32);
}

TEST_CASE("study table classifies the oscillatory family", "[cli]") {
  fs::path out = work_dir() / "study";
  RunResult r = run_cli("example45 --format csv --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("type (ii)") != std::string::npos);
  CHECK(r.out.find("type (i)") != std::string::npos);
  CHECK(r.out.find("L1_loc only") != std::string::npos);
  std::string csv = slurp(out.string() + ".csv");
  CHECK(csv.find("b,beta,vwmo_slope,bmo1_slope,hat_slope,l1,diag_decay,verdict\n") !=
        std::string::npos);
}

TEST_CASE("check runs green on the fast subset", "[cli]") {
  RunResult r = run_cli("check --fast --anchors " + anchors_path());
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS]") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("an injected defect turns the checks red with exit 1", "[cli]") {
  RunResult r = run_cli("check --fast --inject-box-area-bug 1e-6 --anchors " +
                        anchors_path());
  CHECK(r.code == 1);
  CHECK(r.out.find("[FAIL]") != std::string::npos);
  CHECK(r.err.find("check failed: geometry-closed-forms") != std::string::npos);
}
