#include "bergmanosc/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace bergmanosc;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("bergmanosc-io-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("double formatting round-trips through text", "[io]") {
  for (double x : {0.1, 1.0 / 3.0, 6.459367668562353e-08, -2.5e300, 0.0}) {
    CHECK(std::stod(fmt(x)) == x);
  }
}

TEST_CASE("config hash is deterministic and hex-shaped", "[io]") {
  json cfg = to_json(QuadratureConfig{});
  std::string h = config_hash(cfg);
  CHECK(h.size() == 16);
  for (char c : h) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
  CHECK(h == config_hash(cfg));
  json other = cfg;
  other["tol"] = 1e-7;
  CHECK(h != config_hash(other));
}

TEST_CASE("envelope carries schema, version, config, and hash", "[io]") {
  json cfg = to_json(QuadratureConfig{});
  json env = envelope(cfg, json{{"x", 1}});
  CHECK(env.at("schema") == schema_version);
  CHECK(env.at("version") == version);
  CHECK(env.at("config") == cfg);
  CHECK(env.at("config_hash") == config_hash(cfg));
  CHECK(env.at("data").at("x") == 1);
}

TEST_CASE("profile serialization keeps missing slopes null", "[io]") {
  RadialProfile p;
  p.functional = "vwmo";
  p.symbol = "one()";
  p.radii = {0.9, 0.99};
  p.values = {0.5, 0.25};
  json j = to_json(p);
  CHECK(j.at("slope").is_null());
  CHECK(j.at("residual").is_null());
  p.slope = 1.25;
  p.residual = 0.01;
  j = to_json(p);
  CHECK(j.at("slope").get<double>() == 1.25);
  CHECK(j.at("residual").get<double>() == 0.01);
}

TEST_CASE("csv writers emit the preamble and headers", "[io]") {
  json cfg = to_json(QuadratureConfig{});
  RadialProfile p;
  p.radii = {0.5};
  p.values = {2.0};
  std::string pcsv = profile_csv(p, cfg);
  CHECK(pcsv.find("# schema=" + std::string(schema_version)) != std::string::npos);
  CHECK(pcsv.find("# config_hash=" + config_hash(cfg)) != std::string::npos);
  CHECK(pcsv.find("r,value\n0.5,2\n") != std::string::npos);

  CurveSamples c;
  c.r = 0.9;
  c.angles = {0.0};
  c.values = {complexd(1.0, -2.0)};
  CHECK(curve_csv(c, cfg).find("theta,re,im\n0,1,-2\n") != std::string::npos);

  ClusterSet cs;
  cs.radii = {0.75};
  cs.angles = {0.25};
  cs.values = {{complexd(0.5, 0.125)}};
  CHECK(cluster_csv(cs, cfg).find("r,theta,re,im\n0.75,0.25,0.5,0.125\n") !=
        std::string::npos);

  CHECK(eigenvalues_csv({complexd(3.0, 4.0)}, cfg).find("re,im\n3,4\n") !=
        std::string::npos);
}

TEST_CASE("atomic write creates parents and leaves no temp file", "[io]") {
  TempDir tmp;
  auto target = tmp.path / "nested" / "dir" / "out.json";
  atomic_write(target.string(), "payload\n");
  CHECK(slurp(target) == "payload\n");
  CHECK_FALSE(std::filesystem::exists(target.string() + ".tmp"));
  // overwrite in place
  atomic_write(target.string(), "second\n");
  CHECK(slurp(target) == "second\n");
}

TEST_CASE("anchor records round-trip through the file format", "[io]") {
  TempDir tmp;
  AnchorRecord a;
  a.name = "sample-anchor";
  a.config_hash = "00000000deadbeef";
  a.value = 6.459367668562353e-08;
  a.date = "2026-08-26";
  a.provenance = "unit test";
  AnchorRecord b = a;
  b.name = "second-anchor";
  b.value = -1.5;
  auto path = tmp.path / "anchors.json";
  atomic_write(path.string(), anchors_to_string({a, b}));
  auto loaded = load_anchors(path.string());
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].name == a.name);
  CHECK(loaded[0].config_hash == a.config_hash);
  CHECK(loaded[0].value == a.value);
  CHECK(loaded[0].date == a.date);
  CHECK(loaded[0].provenance == a.provenance);
  CHECK(loaded[1].name == b.name);
  CHECK(loaded[1].value == b.value);
  CHECK_THROWS_AS(load_anchors((tmp.path / "missing.json").string()),
                  BadParameters);
}

TEST_CASE("today is formatted as an ISO date", "[io]") {
  std::string d = today_iso();
  REQUIRE(d.size() == 10);
  CHECK(d[4] == '-');
  CHECK(d[7] == '-');
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    CHECK(std::isdigit(static_cast<unsigned char>(d[i])));
  }
}

TEST_CASE("report serializers expose every field", "[io]") {
  IndexReport ir;
  ir.which = Transform::tilde;
  ir.radii = {0.9, 0.95};
  ir.indices = {std::optional<int>(-2), std::nullopt};
  ir.index = -2;
  ir.stable = false;
  json j = to_json(ir);
  CHECK(j.at("which") == "tilde");
  CHECK(j.at("indices")[0] == -2);
  CHECK(j.at("indices")[1].is_null());
  CHECK(j.at("stable") == false);

  TruncationReport tr;
  tr.cuts = {0.9, 0.99};
  tr.residuals = {0.125};
  tr.condition_proxy = 2.0;
  json k = to_json(tr);
  CHECK(k.at("cuts").size() == 2);
  CHECK(k.at("residuals")[0].get<double>() == 0.125);
  CHECK(k.at("condition_ok") == true);
}
