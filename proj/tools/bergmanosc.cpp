// Command-line front end: radial oscillation profiles, finite-section
// spectra, winding-number indices, the oscillatory-family study, the
// acceptance checks, and regeneration of the frozen anchor table.
//
// Exit codes: 0 success, 1 check failure, 2 configuration error,
// 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <bergmanosc/bergmanosc.hpp>

namespace bo = bergmanosc;

namespace {

struct CommonOpts {
  std::string symbol_expr = "one()";
  std::string out = "out";
  std::string format = "both";  // csv | json | both
  int threads = 1;
  double tol = 1e-9;
  int order = 8;
  int panels = 4;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_symbol = true) {
  if (with_symbol) {
    cmd->add_option("--symbol", c.symbol_expr, "symbol expression, e.g. example45(b=1.5,beta=1)")
        ->required();
  }
  cmd->add_option("--out", c.out, "output path prefix");
  cmd->add_option("--format", c.format, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->add_option("--threads", c.threads, "worker threads (results are thread-count invariant)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", c.tol, "quadrature tolerance");
  cmd->add_option("--order", c.order, "Gauss nodes per panel");
  cmd->add_option("--panels", c.panels, "base panels per axis");
}

bo::QuadratureConfig quad_of(const CommonOpts& c) {
  bo::QuadratureConfig qc;
  qc.tol = c.tol;
  qc.order = c.order;
  qc.panels = c.panels;
  bo::validate(qc);
  return qc;
}

bo::json config_json(const std::string& command, const CommonOpts& c,
                     const bo::json& extra, bool with_symbol = true) {
  bo::json j{{"command", command},
             {"format", c.format},
             {"threads", c.threads},
             {"quadrature", bo::to_json(quad_of(c))}};
  if (with_symbol) j["symbol"] = c.symbol_expr;
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

void write_outputs(const CommonOpts& c, const bo::json& config, const bo::json& data,
                   const std::vector<std::pair<std::string, std::string>>& csvs) {
  if (c.format != "csv") {
    bo::atomic_write(c.out + ".json", bo::envelope(config, data).dump(2) + "\n");
  }
  if (c.format != "json") {
    for (const auto& [suffix, text] : csvs) bo::atomic_write(c.out + suffix, text);
  }
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    double r = std::stod(item);
    if (!(r > 0.0 && r < 1.0)) throw bo::BadParameters("radius outside (0,1): " + item);
    out.push_back(r);
  }
  if (out.size() < 2) throw bo::BadParameters("need at least 2 radii");
  return out;
}

std::string fmt2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

// ---------------------------------------------------------------------------
// profile

struct ProfileOpts {
  CommonOpts common;
  std::string functional = "vwmo";
  std::string radii_text;
  int angles = 32;
  int grid = 32;
};

std::string profile_verdict(const std::string& functional, const bo::RadialProfile& p) {
  const double head = p.values.front(), tail = p.values.back();
  double mx = p.values.front(), mn = p.values.front();
  for (double v : p.values) {
    mx = std::max(mx, v);
    mn = std::min(mn, v);
  }
  const std::string slope_txt =
      p.slope ? ", slope " + fmt2(*p.slope) : ", slope n/a";
  auto vanishing = [&](const std::string& label) {
    if (mx <= 1e-10) return label + ": PASS, all zeros";
    bool ok = p.slope && *p.slope > 0.0 &&
              tail < bo::thresholds::decay_ratio * head;
    return label + (ok ? ": PASS" : ": FAIL") + slope_txt;
  };
  auto bounded = [&](const std::string& label) {
    if (mx <= 1e-10) return label + ": PASS, all zeros";
    bool ok = mx / std::max(mn, bo::thresholds::ratio_floor) <
              bo::thresholds::growth_ratio;
    return label + (ok ? ": PASS (bounded)" : ": FAIL (unbounded)") + slope_txt;
  };
  if (functional == "vwmo") return vanishing("VWMO proxy");
  if (functional == "abshat") return vanishing("hat-average decay");
  if (functional == "omegahat") return vanishing("hat-oscillation decay");
  if (functional == "bmo1") return bounded("BMO1");
  if (functional == "averaging") return bounded("averaging proxy");
  return bounded("BWMO proxy");
}

int run_profile(const ProfileOpts& o) {
  bo::Symbol f = bo::parse_symbol(o.common.symbol_expr);
  bo::QuadratureConfig qc = quad_of(o.common);
  std::vector<double> radii =
      o.radii_text.empty() ? bo::profile_radii() : parse_radii(o.radii_text);
  std::vector<double> angles = bo::lattice_angles(f, o.angles);
  bo::GridSpec grid{o.grid, o.grid};

  bo::RadialProfile p;
  if (o.functional == "vwmo" || o.functional == "bwmo") {
    p = bo::vwmo_profile(f, radii, angles, grid, qc, o.common.threads);
    p.functional = o.functional;
  } else if (o.functional == "bmo1") {
    p = bo::bmo_profile(f, radii, angles, 1.0, 1.0, qc, o.common.threads);
  } else if (o.functional == "averaging") {
    p = bo::averaging_profile(f, radii, angles, grid, qc, o.common.threads);
  } else if (o.functional == "abshat") {
    p = bo::box_average_profile(f, radii, angles, qc, o.common.threads);
  } else if (o.functional == "omegahat") {
    p = bo::omega_hat_profile(f, radii, angles, qc, o.common.threads);
  } else {
    throw bo::BadParameters("unknown functional: " + o.functional);
  }

  bo::json config = config_json(
      "profile", o.common,
      {{"functional", o.functional},
       {"radii", radii},
       {"angle_count", static_cast<int>(angles.size())},
       {"grid", bo::to_json(grid)}});
  std::string verdict = profile_verdict(o.functional, p);
  bo::json data = bo::to_json(p);
  data["verdict"] = verdict;
  write_outputs(o.common, config, data, {{".csv", bo::profile_csv(p, config)}});
  std::cout << verdict << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOpts {
  CommonOpts common;
  std::size_t n = 128;
  std::string radii_text;
  int angles = 64;
};

int run_spectrum(const SpectrumOpts& o) {
  bo::Symbol f = bo::parse_symbol(o.common.symbol_expr);
  bo::QuadratureConfig qc = quad_of(o.common);
  std::vector<double> radii =
      o.radii_text.empty() ? bo::ladder_radii() : parse_radii(o.radii_text);
  bo::SpectrumReport rep =
      bo::spectrum_report(f, o.n, radii, o.angles, qc, o.common.threads);
  bo::json config = config_json("spectrum", o.common,
                                {{"n", o.n}, {"radii", radii}, {"angle_count", o.angles}});
  write_outputs(o.common, config, bo::to_json(rep),
                {{".eigenvalues.csv", bo::eigenvalues_csv(rep.eigenvalues, config)},
                 {".cluster.csv", bo::cluster_csv(rep.cluster, config)}});
  double rho = 0.0;
  for (const auto& ev : rep.eigenvalues) rho = std::max(rho, std::abs(ev));
  std::cout << "eigenvalues: " << rep.eigenvalues.size() << ", max modulus "
            << fmt2(rho) << "\n";
  std::cout << "essential norm estimate: " << bo::fmt(rep.essential.value) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// index

struct IndexOpts {
  CommonOpts common;
  std::string which = "hat";
  std::string radii_text;
};

int run_index(const IndexOpts& o) {
  bo::Symbol f = bo::parse_symbol(o.common.symbol_expr);
  bo::QuadratureConfig qc = quad_of(o.common);
  bo::Transform which =
      o.which == "tilde" ? bo::Transform::tilde : bo::Transform::hat;
  std::vector<double> radii =
      o.radii_text.empty() ? bo::ladder_radii() : parse_radii(o.radii_text);
  bo::json config = config_json("index", o.common,
                                {{"which", o.which}, {"radii", radii}});
  try {
    bo::IndexReport rep =
        bo::fredholm_index_ladder(f, which, qc, radii, o.common.threads);
    write_outputs(o.common, config, bo::to_json(rep), {});
    std::cout << "index: " << rep.index << (rep.stable ? " (stable across ladder)" : "")
              << "\n";
    return 0;
  } catch (const bo::NotFredholmError& e) {
    bo::json data{{"fredholm", false}, {"reason", e.what()}};
    write_outputs(o.common, config, data, {});
    std::cout << "NotFredholm: boundary curve approaches zero ("
              << e.what() << ")\n";
    return 0;
  }
}

// ---------------------------------------------------------------------------
// example45 study

struct StudyOpts {
  CommonOpts common;
};

int run_example45(const StudyOpts& o) {
  bo::QuadratureConfig qc = quad_of(o.common);
  if (qc.tol < 1e-7) qc.tol = 1e-7;  // kinked oscillation integrands
  struct Row {
    double b, beta;
    double vwmo_slope = 0, bmo_slope = 0, hat_slope = 0;
    double vwmo_ratio = 0, bmo_ratio = 0;
    bool l1 = false;
    double diag_decay = -1.0;  // negative when the plain integrals do not exist
    std::string verdict;
  };
  const std::vector<std::pair<double, double>> grid{{1.0, 1.0}, {1.5, 1.0}, {2.0, 1.0}};
  std::vector<Row> rows;
  for (auto [b, beta] : grid) {
    bo::Symbol f = bo::example45(b, beta);
    Row row;
    row.b = b;
    row.beta = beta;
    row.l1 = f.integrability == bo::Integrability::L1;
    auto radii = bo::profile_radii();
    // deep metric discs reach closer to the boundary than their centers, so
    // cap the oscillation budget for the steepest phase by stopping earlier
    auto bmo_radii = b >= 2.0 ? bo::default_radii(7, 0.1, 5e-3) : radii;
    const std::vector<double> angles{0.0};
    bo::RadialProfile v = bo::vwmo_profile(f, radii, angles, {}, qc, o.common.threads);
    bo::RadialProfile m =
        bo::bmo_profile(f, bmo_radii, angles, 1.0, 1.0, qc, o.common.threads);
    bo::RadialProfile h =
        bo::box_average_profile(f, radii, angles, qc, o.common.threads);
    row.vwmo_slope = v.slope.value_or(0);
    row.bmo_slope = m.slope.value_or(0);
    row.hat_slope = h.slope.value_or(0);
    row.vwmo_ratio = v.values.back() / std::max(v.values.front(), bo::thresholds::ratio_floor);
    double mmax = *std::max_element(m.values.begin(), m.values.end());
    double mmin = *std::min_element(m.values.begin(), m.values.end());
    row.bmo_ratio = mmax / std::max(mmin, bo::thresholds::ratio_floor);
    if (row.l1) {
      auto d = bo::toeplitz_radial_diag(f, 256, qc);
      double sup_all = 0.0, sup_tail = 0.0;
      for (std::size_t n = 0; n < d.size(); ++n) {
        sup_all = std::max(sup_all, std::abs(d[n]));
        if (n >= 128) sup_tail = std::max(sup_tail, std::abs(d[n]));
      }
      row.diag_decay = sup_tail / sup_all;
    }
    bool vwmo_yes = v.slope && *v.slope > 0 &&
                    row.vwmo_ratio < bo::thresholds::decay_ratio;
    bool bmo_bounded = row.bmo_ratio < bo::thresholds::growth_ratio;
    std::ostringstream verdict;
    verdict << "VWMO " << (vwmo_yes ? "yes" : "no") << ", BMO1 "
            << (bmo_bounded ? "bounded" : "no");
    if (b > beta) verdict << (row.l1 ? ", f in L1" : ", f in L1_loc only");
    if (b == beta) {
      verdict << ", type (ii)";
    } else if (row.l1) {
      verdict << ", type (i)";
    }
    row.verdict = verdict.str();
    rows.push_back(row);
  }

  bo::json config = config_json("example45", o.common, {}, false);
  bo::json jrows = bo::json::array();
  std::ostringstream csv;
  csv << bo::csv_preamble(config)
      << "b,beta,vwmo_slope,bmo1_slope,hat_slope,l1,diag_decay,verdict\n";
  std::printf("%-10s %-11s %-11s %-10s %-8s %-10s verdict\n", "(b,beta)",
              "vwmo slope", "bmo1 slope", "hat slope", "L1", "diag decay");
  for (const auto& row : rows) {
    bo::json j{{"b", row.b},           {"beta", row.beta},
               {"vwmo_slope", row.vwmo_slope}, {"bmo1_slope", row.bmo_slope},
               {"hat_slope", row.hat_slope},   {"l1", row.l1},
               {"verdict", row.verdict}};
    j["diag_decay"] = row.diag_decay >= 0 ? bo::json(row.diag_decay) : bo::json(nullptr);
    jrows.push_back(j);
    csv << bo::fmt(row.b) << "," << bo::fmt(row.beta) << ","
        << bo::fmt(row.vwmo_slope) << "," << bo::fmt(row.bmo_slope) << ","
        << bo::fmt(row.hat_slope) << "," << (row.l1 ? "1" : "0") << ","
        << (row.diag_decay >= 0 ? bo::fmt(row.diag_decay) : std::string("-")) << ","
        << row.verdict << "\n";
    char decay[32];
    if (row.diag_decay >= 0)
      std::snprintf(decay, sizeof(decay), "%.1e", row.diag_decay);
    else
      std::snprintf(decay, sizeof(decay), "-");
    std::printf("(%.1f,%.1f)  %-11s %-11s %-10s %-8s %-10s %s\n", row.b, row.beta,
                fmt2(row.vwmo_slope).c_str(), fmt2(row.bmo_slope).c_str(),
                fmt2(row.hat_slope).c_str(), row.l1 ? "yes" : "loc only", decay,
                row.verdict.c_str());
  }
  write_outputs(o.common, config, bo::json{{"rows", jrows}},
                {{".csv", csv.str()}});
  return 0;
}

// ---------------------------------------------------------------------------
// check

struct CheckOpts {
  bool fast = false;
  int threads = 1;
  std::string anchors = "data/anchors.json";
  double inject_box_area_bug = 0.0;
};

int run_check(const CheckOpts& o) {
  bo::checks::CheckOptions copt;
  copt.fast = o.fast;
  copt.threads = o.threads;
  copt.anchor_path = o.anchors;
  copt.box_area_bug = o.inject_box_area_bug;
  auto results = bo::checks::run_checks(copt);
  bo::checks::print_results(std::cout, results);
  if (!bo::checks::all_passed(results)) {
    for (const auto& r : results) {
      if (!r.pass) std::cerr << "check failed: " << r.name << "\n";
    }
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// anchors

struct AnchorOpts {
  std::string out = "data/anchors.json";
  int threads = 1;
};

int run_anchors(const AnchorOpts& o) {
  bo::checks::CheckOptions copt;
  copt.threads = o.threads;
  copt.anchor_path = o.out;
  auto results = bo::checks::run_checks(copt);
  bo::checks::print_results(std::cout, results);
  if (!bo::checks::all_passed(results)) {
    std::cerr << "anchors: refusing to regenerate, checks are red\n";
    return 1;
  }

  std::vector<bo::AnchorRecord> anchors;
  const std::string date = bo::today_iso();
  {
    bo::Symbol f = bo::example45(1.5, 1.0);
    bo::CoefficientVector e0{bo::complexd(1.0, 0.0)};
    bo::TruncationReport rep = bo::truncation_convergence(f, e0, {0.9, 0.99, 0.999}, 1);
    bo::json cfg{{"quantity", "truncation-residual"}, {"b", 1.5}, {"beta", 1.0},
                 {"cuts", {0.9, 0.99, 0.999}}, {"applied_to", "e0"}};
    anchors.push_back({"truncation-residual-e45-b1.5-beta1-rho0.999",
                       bo::config_hash(cfg), rep.residuals.back(), date,
                       "self-convergent quadrature of truncated sections"});
  }
  {
    double disc = bo::reflection_check(bo::z_plus_conj_symbol(), bo::Point{0.5, 0.0}, 96);
    bo::json cfg{{"quantity", "reflection-discrepancy"}, {"symbol", "zpluszbar"},
                 {"z", 0.5}, {"n", 96}};
    anchors.push_back({"reflection-discrepancy-zpluszbar-z0.5-N96",
                       bo::config_hash(cfg), disc, date,
                       "finite-section conjugation residual, leading block"});
  }
  {
    bo::complexd v = bo::berezin_symbol(bo::example45(1.0, 1.0), bo::Point{0.999, 0.0});
    bo::json cfg{{"quantity", "berezin-value"}, {"b", 1.0}, {"beta", 1.0}, {"r", 0.999}};
    anchors.push_back({"berezin-e45-b1-beta1-r0.999", bo::config_hash(cfg),
                       std::abs(v), date, "half-wave summation with alternating tail"});
  }

  if (std::filesystem::exists(o.out)) {
    auto old = bo::load_anchors(o.out);
    bool changed = false;
    for (const auto& a : anchors) {
      for (const auto& b : old) {
        if (a.name == b.name && std::abs(a.value - b.value) > 0.0) {
          std::cout << a.name << ": " << bo::fmt(b.value) << " -> "
                    << bo::fmt(a.value) << " (diff "
                    << bo::fmt(std::abs(a.value - b.value)) << ")\n";
          changed = true;
        }
      }
    }
    if (!changed) std::cout << "anchors unchanged\n";
  }
  bo::atomic_write(o.out, bo::anchors_to_string(anchors));
  std::cout << "wrote " << anchors.size() << " anchors to " << o.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bergman-osc: mean oscillation and Toeplitz finite sections on the Bergman space"};
  app.set_version_flag("--version", std::string(bo::version));
  app.require_subcommand(1);

  ProfileOpts po;
  CLI::App* profile = app.add_subcommand(
      "profile", "radial profile of an oscillation functional with slope fit");
  add_common(profile, po.common);
  profile->add_option("--functional", po.functional,
                      "vwmo | bwmo | bmo1 | averaging | abshat | omegahat")
      ->check(CLI::IsMember({"vwmo", "bwmo", "bmo1", "averaging", "abshat", "omegahat"}));
  profile->add_option("--radii", po.radii_text, "comma-separated radii in (0,1)");
  profile->add_option("--angles", po.angles, "lattice angle count (radial symbols use 1)");
  profile->add_option("--grid", po.grid, "prefix-table grid per axis (>= 16)");

  SpectrumOpts so;
  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "finite-section eigenvalues plus transform cluster set");
  add_common(spectrum, so.common);
  spectrum->add_option("--n", so.n, "section size (<= 512)");
  spectrum->add_option("--radii", so.radii_text, "cluster radii");
  spectrum->add_option("--angles", so.angles, "cluster angle count");

  IndexOpts io_;
  CLI::App* index = app.add_subcommand(
      "index", "winding-number index across the radius ladder");
  add_common(index, io_.common);
  index->add_option("--which", io_.which, "hat | tilde")
      ->check(CLI::IsMember({"hat", "tilde"}));
  index->add_option("--radii", io_.radii_text, "ladder radii");

  StudyOpts eo;
  CLI::App* study = app.add_subcommand(
      "example45", "oscillatory-family study over (b, beta) in {(1,1),(1.5,1),(2,1)}");
  add_common(study, eo.common, false);

  CheckOpts co;
  CLI::App* check = app.add_subcommand("check", "run the acceptance checks");
  check->add_flag("--fast", co.fast, "cheap subset (under a minute)");
  check->add_option("--threads", co.threads, "worker threads");
  check->add_option("--anchors", co.anchors, "frozen anchor file");
  check->add_option("--inject-box-area-bug", co.inject_box_area_bug,
                    "harness self-test: perturb the reference area closed form")
      ->group("");  // hidden

  AnchorOpts ao;
  CLI::App* anchors = app.add_subcommand(
      "anchors", "regenerate the frozen anchor table (refuses when checks are red)");
  anchors->add_option("--out", ao.out, "anchor file path");
  anchors->add_option("--threads", ao.threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, bad flags exit 2
  }

  try {
    if (profile->parsed()) return run_profile(po);
    if (spectrum->parsed()) return run_spectrum(so);
    if (index->parsed()) return run_index(io_);
    if (study->parsed()) return run_example45(eo);
    if (check->parsed()) return run_check(co);
    if (anchors->parsed()) return run_anchors(ao);
  } catch (const bo::BadParameters& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
