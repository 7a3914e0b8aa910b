#pragma once

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bergman.hpp"
#include "common.hpp"
#include "oscillation.hpp"
#include "spectra.hpp"

namespace bergmanosc {

using json = nlohmann::json;

// Doubles are printed with 17 significant digits so CSV round-trips are exact
// and repeated runs are byte-identical.
inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline json cjson(complexd v) { return json::array({v.real(), v.imag()}); }

inline json to_json(const QuadratureConfig& cfg) {
  return {{"panels", cfg.panels},
          {"order", cfg.order},
          {"tol", cfg.tol},
          {"oscillation_refinement", cfg.oscillation_refinement},
          {"max_depth", cfg.max_depth},
          {"osc_panel_cap", cfg.osc_panel_cap}};
}

inline json to_json(const GridSpec& g) { return {{"nr", g.nr}, {"nphi", g.nphi}}; }

inline json to_json(const Point& z) { return {{"r", z.r}, {"theta", z.theta}}; }

inline json to_json(const RadialProfile& p) {
  json j{{"functional", p.functional},
         {"symbol", p.symbol},
         {"radii", p.radii},
         {"values", p.values}};
  j["slope"] = p.slope ? json(*p.slope) : json(nullptr);
  j["residual"] = p.residual ? json(*p.residual) : json(nullptr);
  return j;
}

inline json to_json(const OscillationReport& r) {
  return {{"z", to_json(r.z)},
          {"functional", r.functional},
          {"value", r.value},
          {"grid_r", r.grid_r},
          {"grid_phi", r.grid_phi},
          {"refinement_delta", r.refinement_delta}};
}

inline json to_json(const ClusterSet& c) {
  json rows = json::array();
  for (const auto& ring : c.values) {
    json row = json::array();
    for (complexd v : ring) row.push_back(cjson(v));
    rows.push_back(std::move(row));
  }
  return {{"which", transform_name(c.which)},
          {"radii", c.radii},
          {"angles", c.angles},
          {"values", rows}};
}

inline json to_json(const EssentialNormReport& e) {
  return {{"radii", e.radii}, {"max_hat", e.max_hat}, {"value", e.value}};
}

inline json to_json(const CurveSamples& c) {
  json vals = json::array();
  for (complexd v : c.values) vals.push_back(cjson(v));
  return {{"which", transform_name(c.which)},
          {"r", c.r},
          {"angles", c.angles},
          {"values", vals}};
}

inline json to_json(const IndexReport& r) {
  json per = json::array();
  for (const auto& ix : r.indices) per.push_back(ix ? json(*ix) : json(nullptr));
  return {{"which", transform_name(r.which)},
          {"radii", r.radii},
          {"indices", per},
          {"index", r.index},
          {"stable", r.stable}};
}

inline json to_json(const BlockFredholmReport& r) {
  return {{"fredholm", r.fredholm},
          {"margin", r.margin},
          {"radii_used", r.radii_used},
          {"warnings", r.warnings}};
}

inline json to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const complexd& v : m.a) entries.push_back(cjson(v));
  return {{"n", m.n}, {"entries", entries}};
}

inline json to_json(const SpectrumReport& s) {
  json eig = json::array();
  for (complexd v : s.eigenvalues) eig.push_back(cjson(v));
  return {{"n", s.N},
          {"eigenvalues", eig},
          {"cluster", to_json(s.cluster)},
          {"essential", to_json(s.essential)}};
}

inline json to_json(const TruncationReport& t) {
  return {{"cuts", t.cuts},
          {"residuals", t.residuals},
          {"condition_proxy", t.condition_proxy},
          {"condition_ok", t.condition_ok}};
}

// Output envelope: every file carries the schema tag, the toolkit version,
// the fully resolved configuration, and a hash of that configuration.
inline std::string config_hash(const json& config) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

inline json envelope(const json& config, const json& data) {
  return {{"schema", schema_version},
          {"version", version},
          {"config", config},
          {"config_hash", config_hash(config)},
          {"data", data}};
}

// Atomic file write: contents land under a temporary name and are renamed
// into place, so readers never observe a partial file.
inline void atomic_write(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw BadParameters("cannot open output file " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw BadParameters("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

inline std::string csv_preamble(const json& config) {
  std::ostringstream out;
  out << "# schema=" << schema_version << "\n";
  out << "# version=" << version << "\n";
  out << "# config_hash=" << config_hash(config) << "\n";
  out << "# config=" << config.dump() << "\n";
  return out.str();
}

inline std::string profile_csv(const RadialProfile& p, const json& config) {
  std::ostringstream out;
  out << csv_preamble(config) << "r,value\n";
  for (std::size_t i = 0; i < p.radii.size(); ++i)
    out << fmt(p.radii[i]) << "," << fmt(p.values[i]) << "\n";
  return out.str();
}

inline std::string curve_csv(const CurveSamples& c, const json& config) {
  std::ostringstream out;
  out << csv_preamble(config) << "theta,re,im\n";
  for (std::size_t i = 0; i < c.angles.size(); ++i)
    out << fmt(c.angles[i]) << "," << fmt(c.values[i].real()) << ","
        << fmt(c.values[i].imag()) << "\n";
  return out.str();
}

inline std::string cluster_csv(const ClusterSet& c, const json& config) {
  std::ostringstream out;
  out << csv_preamble(config) << "r,theta,re,im\n";
  for (std::size_t i = 0; i < c.radii.size(); ++i)
    for (std::size_t j = 0; j < c.angles.size(); ++j)
      out << fmt(c.radii[i]) << "," << fmt(c.angles[j]) << ","
          << fmt(c.values[i][j].real()) << "," << fmt(c.values[i][j].imag())
          << "\n";
  return out.str();
}

inline std::string eigenvalues_csv(const std::vector<complexd>& eig,
                                   const json& config) {
  std::ostringstream out;
  out << csv_preamble(config) << "re,im\n";
  for (complexd v : eig) out << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Frozen regression anchors: named quantities whose values were produced by a
// verified run and are compared against on every regeneration.

struct AnchorRecord {
  std::string name;
  std::string config_hash;
  double value = 0.0;
  std::string date;        // ISO date of the run that froze the value
  std::string provenance;  // how the value was obtained (oracle kind)
};

inline json to_json(const AnchorRecord& a) {
  return {{"name", a.name},
          {"config_hash", a.config_hash},
          {"value", a.value},
          {"date", a.date},
          {"provenance", a.provenance}};
}

inline AnchorRecord anchor_from_json(const json& j) {
  AnchorRecord a;
  a.name = j.at("name").get<std::string>();
  a.config_hash = j.at("config_hash").get<std::string>();
  a.value = j.at("value").get<double>();
  a.date = j.at("date").get<std::string>();
  a.provenance = j.at("provenance").get<std::string>();
  return a;
}

inline std::vector<AnchorRecord> load_anchors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadParameters("cannot read anchor file " + path);
  json j = json::parse(in);
  std::vector<AnchorRecord> out;
  for (const auto& rec : j.at("anchors")) out.push_back(anchor_from_json(rec));
  return out;
}

inline std::string anchors_to_string(const std::vector<AnchorRecord>& anchors) {
  json arr = json::array();
  for (const auto& a : anchors) arr.push_back(to_json(a));
  json j{{"schema", schema_version}, {"version", version}, {"anchors", arr}};
  return j.dump(2) + "\n";
}

inline std::string today_iso() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[16];
  std::strftime(buf, sizeof(buf), "%Y-%m-%d", &tm);
  return buf;
}

}  // namespace bergmanosc
