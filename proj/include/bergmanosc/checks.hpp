#pragma once

// The acceptance suite: each check exercises one end-to-end claim of the
// toolkit with quantitative gates and reports a named pass/fail. Shared by
// the `check` CLI command and the acceptance test binary so verdicts cannot
// drift between the two.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bergman.hpp"
#include "common.hpp"
#include "eigensolver.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "oscillation.hpp"
#include "spectra.hpp"
#include "symbols.hpp"
#include "thresholds.hpp"

namespace bergmanosc::checks {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct CheckOptions {
  bool fast = false;        // run only the cheap subset
  int threads = 1;
  double box_area_bug = 0.0;  // harness self-test: perturbs the reference area
  std::string anchor_path;    // optional frozen-anchor file for regressions
};

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

inline bool in_window(double value, double center, double half_width) {
  return value >= center - half_width && value <= center + half_width;
}

// Greedy matching of a computed eigenvalue multiset against a target multiset;
// returns the largest pairing distance.
inline double match_sets(std::vector<complexd> got, const std::vector<complexd>& want) {
  double worst = 0.0;
  for (complexd t : want) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < got.size(); ++i) {
      double d = std::abs(got[i] - t);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    worst = std::max(worst, bd);
    got.erase(got.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

}  // namespace detail

// Closed-form box area against quadrature, and exact tiling of the dyadic
// decomposition through level 8.
inline CheckResult check_geometry(const CheckOptions& opt) {
  CheckResult r;
  r.name = "geometry-closed-forms";
  auto one = constant_symbol(1.0);
  double worst = 0.0;
  for (double rr : {0.0, 0.5, 0.9, 0.99}) {
    Point z{rr, 0.3};
    double closed = box_area(z) + opt.box_area_bug;
    double quad = integrate_box(one, box(z)).value.real();
    worst = std::max(worst, std::abs(quad - closed) / closed);
  }
  const int L = 8;
  double tiled = 0.0;
  for (const auto& tile : disc_decomposition(L)) tiled += tile.tile.area();
  const double covered_radius = 1.0 - std::ldexp(1.0, -(L + 1));
  const double tele = std::abs(tiled - covered_radius * covered_radius);
  r.pass = worst <= 1e-10 && tele <= 1e-10;
  r.detail = "box area rel err " + detail::num(worst) + ", tiling err " +
             detail::num(tele);
  return r;
}

// Four signed anchored sub-box integrals reproduce the integral over the
// rectangle spanned by two ordered points, for random boxes and symbols.
inline CheckResult check_inclusion_exclusion(const CheckOptions& opt) {
  CheckResult r;
  r.name = "sub-box-inclusion-exclusion";
  std::mt19937 gen(20240611);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int trials = opt.fast ? 25 : 100;
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    Symbol f = rand_smooth(100 + static_cast<std::uint32_t>(i));
    Point z{0.3 + 0.6 * U(gen), two_pi * U(gen)};
    Box b = box(z);
    auto rnd_in = [&](double lo, double hi) {
      return lo + (0.05 + 0.9 * U(gen)) * (hi - lo);
    };
    double rho1 = rnd_in(b.rho_lo, b.rho_hi), rho2 = rnd_in(b.rho_lo, b.rho_hi);
    double phi1 = rnd_in(b.phi_lo, b.phi_hi), phi2 = rnd_in(b.phi_lo, b.phi_hi);
    if (rho2 < rho1) std::swap(rho1, rho2);
    if (phi2 < phi1) std::swap(phi1, phi2);
    Point zeta1{rho1, reduce_angle(phi1)}, zeta2{rho2, reduce_angle(phi2)};
    complexd sum(0.0, 0.0);
    for (const auto& [corner, sign] : inclusion_exclusion_corners(z, zeta1, zeta2)) {
      Box sb = sub_box(z, corner);
      if (sb.rho_hi > sb.rho_lo && sb.phi_hi > sb.phi_lo) {
        sum += static_cast<double>(sign) * integrate_box(f, sb).value;
      }
    }
    complexd direct = integrate_box(f, Box{rho1, rho2, phi1, phi2}).value;
    worst = std::max(worst, std::abs(sum - direct) / box_area(z));
  }
  r.pass = worst <= 1e-8;
  r.detail = std::to_string(trials) + " triples, worst err " + detail::num(worst) +
             " of |B(z)|";
  return r;
}

// Constant symbol gives the identity section; |w|^2 gives the diagonal
// (n+1)/(n+2).
inline CheckResult check_toeplitz_closed_forms(const CheckOptions&) {
  CheckResult r;
  r.name = "toeplitz-closed-forms";
  const std::size_t N = 64;
  ComplexMatrix T = toeplitz_matrix(constant_symbol(1.0), N);
  double id_err = max_abs(T - ComplexMatrix::identity(N));
  auto d = toeplitz_radial_diag(abs_z_squared_symbol(), N);
  double diag_err = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    double want = static_cast<double>(n + 1) / static_cast<double>(n + 2);
    diag_err = std::max(diag_err, std::abs(d[n] - want) / want);
  }
  r.pass = id_err <= 1e-12 && diag_err <= 1e-10;
  r.detail = "identity err " + detail::num(id_err) + ", diagonal rel err " +
             detail::num(diag_err);
  return r;
}

// Berezin transform fixes constants and analytic monomials, and reproduces
// the closed form for |w|^2.
inline CheckResult check_berezin_fixed_points(const CheckOptions&) {
  CheckResult r;
  r.name = "berezin-fixed-points";
  double const_err = 0.0;
  for (double rr : {0.0, 0.45, 0.85, 0.97}) {
    complexd v = berezin_symbol(constant_symbol(2.5), Point{rr, 1.1});
    const_err = std::max(const_err, std::abs(v - complexd(2.5, 0.0)));
  }
  double mono_err = 0.0;
  const std::vector<double> radii{0.15, 0.35, 0.55, 0.75, 0.9};
  const std::vector<double> angles{0.3, 1.7, 3.9, 5.6};
  for (int k = 1; k <= 3; ++k) {
    Symbol f = zk_symbol(k);
    for (double rr : radii) {
      for (double th : angles) {
        Point z{rr, th};
        complexd want = std::pow(z.value(), k);
        mono_err = std::max(mono_err, std::abs(berezin_symbol(f, z) - want));
      }
    }
  }
  // series oracle: berezin of |w|^2 at x = |z|^2 is 1 - (1-x)[(1-x)log(1-x)+x]/x^2
  double sq_err = 0.0;
  Symbol fsq = abs_z_squared_symbol();
  for (int i = 0; i <= 9; ++i) {
    double rr = 0.1 * i;
    double x = rr * rr;
    double want = x < 1e-8 ? 0.5 + x / 3.0
                           : 1.0 - (1.0 - x) * ((1.0 - x) * std::log1p(-x) + x) / (x * x);
    sq_err = std::max(sq_err,
                      std::abs(berezin_symbol(fsq, Point{rr, 2.2}).real() - want));
  }
  r.pass = const_err <= 1e-10 && mono_err <= 1e-8 && sq_err <= 1e-7;
  r.detail = "const err " + detail::num(const_err) + ", monomial err " +
             detail::num(mono_err) + ", |w|^2 err " + detail::num(sq_err);
  return r;
}

// Oscillatory family, growing member (b, beta) = (1.5, 1): weak oscillation
// vanishes at rate beta, the local mean oscillation grows at rate beta - b,
// the box average vanishes at rate beta, and the symbol stays integrable.
inline CheckResult check_type_i(const CheckOptions& opt) {
  CheckResult r;
  r.name = "oscillatory-type-i";
  Symbol f = example45(1.5, 1.0);
  QuadratureConfig qc;
  qc.tol = 1e-7;  // |f - avg| integrands have kinks; keep panel counts sane
  auto radii = profile_radii();
  const std::vector<double> angles{0.0};
  RadialProfile v = vwmo_profile(f, radii, angles, GridSpec{}, qc, opt.threads);
  RadialProfile m = bmo_profile(f, radii, angles, 1.0, 1.0, qc, opt.threads);
  RadialProfile h = box_average_profile(f, radii, angles, qc, opt.threads);
  bool vs = v.slope && detail::in_window(*v.slope, 1.0, thresholds::slope_window);
  bool ms = m.slope && detail::in_window(*m.slope, -0.5, thresholds::slope_window_bmo);
  bool mg = m.values.back() > thresholds::growth_ratio * m.values.front();
  bool hs = h.slope && detail::in_window(*h.slope, 1.0, thresholds::slope_window);
  bool l1 = f.integrability == Integrability::L1;
  r.pass = vs && ms && mg && hs && l1;
  r.detail = "vwmo slope " + detail::num(v.slope.value_or(0)) + ", bmo1 slope " +
             detail::num(m.slope.value_or(0)) + " growth x" +
             detail::num(m.values.back() / m.values.front()) + ", |hat| slope " +
             detail::num(h.slope.value_or(0)) + (l1 ? ", L1" : ", not L1");
  return r;
}

// Oscillatory family, bounded member (b, beta) = (1, 1): bounded symbol,
// vanishing weak oscillation, bounded (non-vanishing) local mean oscillation.
inline CheckResult check_type_ii(const CheckOptions& opt) {
  CheckResult r;
  r.name = "oscillatory-type-ii";
  Symbol f = example45(1.0, 1.0);
  double sup = 0.0;
  for (int i = 0; i < 100000; ++i) {
    double rho = static_cast<double>(i) / 100000.0;
    sup = std::max(sup, std::abs(f.eval(rho, 0.0)));
  }
  for (int j = 1; j <= 10000; ++j) {  // resolve the boundary approach densely
    double rho = 1.0 - std::pow(10.0, -6.0 * j / 10000.0);
    sup = std::max(sup, std::abs(f.eval(rho, 0.0)));
  }
  QuadratureConfig qc;
  qc.tol = 1e-7;
  auto radii = profile_radii();
  const std::vector<double> angles{0.0};
  RadialProfile v = vwmo_profile(f, radii, angles, GridSpec{}, qc, opt.threads);
  RadialProfile m = bmo_profile(f, radii, angles, 1.0, 1.0, qc, opt.threads);
  double mmax = *std::max_element(m.values.begin(), m.values.end());
  double mmin = *std::min_element(m.values.begin(), m.values.end());
  bool bounded = sup <= 2.0 + 1e-9;
  bool vtail = v.values.back() < thresholds::decay_ratio * v.values.front();
  bool mflat = mmax / std::max(mmin, thresholds::ratio_floor) < thresholds::growth_ratio;
  r.pass = bounded && vtail && mflat;
  r.detail = "sup " + detail::num(sup) + ", vwmo tail/head " +
             detail::num(v.values.back() / v.values.front()) + ", bmo1 max/min " +
             detail::num(mmax / mmin);
  return r;
}

// Oscillation of the box-average field is controlled by the weak-oscillation
// seminorm with one constant across the whole suite, and vanishes for the
// vanishing members.
inline CheckResult check_hat_oscillation(const CheckOptions& opt) {
  CheckResult r;
  r.name = "hat-oscillation-bound";
  QuadratureConfig qc;
  qc.tol = 1e-7;
  struct Member {
    Symbol f;
    bool vanishing;
  };
  std::vector<Member> suite;
  suite.push_back({constant_symbol(2.0), false});
  suite.push_back({rand_smooth(7), false});
  suite.push_back({rand_smooth(11), false});
  suite.push_back({example45(1.0, 1.0), true});
  suite.push_back({example45(1.5, 1.0), true});
  suite.push_back({z_plus_conj_symbol(), false});
  double cmax = 0.0;
  bool tails_ok = true;
  std::ostringstream tail_report;
  for (const auto& member : suite) {
    const Symbol& f = member.f;
    double semi = bwmo_seminorm(f, GridSpec{}, qc, opt.threads);
    Symbol fhat = hat_symbol(f, qc);
    std::vector<double> radii = f.radial
        ? std::vector<double>{0.5, 0.7, 0.9, 0.95, 0.99, 0.995, 0.999}
        : std::vector<double>{0.7, 0.9, 0.99, 0.995, 0.999};
    std::vector<double> angles =
        f.radial ? std::vector<double>{0.0}
                 : std::vector<double>{0.0, 0.5 * pi, pi, 1.5 * pi};
    double wmax = 0.0, w_head = 0.0, w_tail = 0.0;
    for (double rr : radii) {
      double wr = 0.0;
      for (double a : angles) {
        wr = std::max(wr, oscillation_omega(fhat, Point{rr, a}, qc));
      }
      wmax = std::max(wmax, wr);
      if (rr == 0.9) w_head = wr;
      if (rr == 0.999) w_tail = wr;
    }
    cmax = std::max(cmax, wmax / std::max(semi, thresholds::ratio_floor));
    if (member.vanishing) {
      bool ok = w_tail < thresholds::decay_ratio * w_head;
      tails_ok = tails_ok && ok;
      tail_report << " " << f.name << " tail/head "
                  << detail::num(w_tail / std::max(w_head, thresholds::ratio_floor));
    }
  }
  r.pass = cmax <= 1e3 && tails_ok;
  r.detail = "C " + detail::num(cmax) + tail_report.str();
  return r;
}

// Compactness chain for the bounded oscillatory member: decaying Toeplitz
// diagonal, Berezin cluster set contracting to 0, small essential-norm proxy.
inline CheckResult check_compactness(const CheckOptions& opt) {
  CheckResult r;
  r.name = "compactness-chain";
  Symbol f = example45(1.0, 1.0);
  auto d = toeplitz_radial_diag(f, 256);
  double sup_all = 0.0, sup_tail = 0.0;
  for (std::size_t n = 0; n < d.size(); ++n) {
    sup_all = std::max(sup_all, std::abs(d[n]));
    if (n >= 128) sup_tail = std::max(sup_tail, std::abs(d[n]));
  }
  ClusterSet cs = cluster_set(f, ladder_radii(), 16, Transform::tilde, {}, opt.threads);
  double inner = cluster_max_modulus(cs, 0);
  double outer = cluster_max_modulus(cs, cs.radii.size() - 1);
  double ess = essential_norm_estimate(f, ladder_radii(), 16, {}, opt.threads);
  bool dd = sup_tail <= 0.1 * sup_all;
  bool cc = outer < 0.1 * inner;
  bool ee = ess < thresholds::essential_norm_compact;
  r.pass = dd && cc && ee;
  r.detail = "diag tail/sup " + detail::num(sup_tail / sup_all) +
             ", cluster outer/inner " + detail::num(outer / inner) +
             ", essential norm " + detail::num(ess);
  return r;
}

// Winding-number indices: -k for the monomials, 0 for a symbol bounded away
// from zero, and an honest refusal for a symbol whose boundary curve dies.
inline CheckResult check_fredholm_index(const CheckOptions& opt) {
  CheckResult r;
  r.name = "fredholm-index";
  std::ostringstream os;
  bool ok = true;
  for (int k = 1; k <= 3; ++k) {
    IndexReport rep = fredholm_index_ladder(zk_symbol(k), Transform::hat, {},
                                            ladder_radii(), opt.threads);
    bool good = rep.stable && rep.index == -k;
    ok = ok && good;
    os << "z^" << k << " -> " << rep.index << (rep.stable ? "" : " (unstable)") << "; ";
  }
  Symbol shifted = symbol_add_const(example45(1.0, 1.0), complexd(1.0, 0.0));
  IndexReport rep0 = fredholm_index_ladder(shifted, Transform::hat, {},
                                           ladder_radii(), opt.threads);
  bool zero_ok = rep0.stable && rep0.index == 0;
  ok = ok && zero_ok;
  os << "shifted oscillatory -> " << rep0.index << "; ";
  bool refused = false;
  try {
    fredholm_index_ladder(example45(1.0, 1.0), Transform::hat, {}, ladder_radii(),
                          opt.threads);
  } catch (const NotFredholmError&) {
    refused = true;
  }
  ok = ok && refused;
  os << (refused ? "oscillatory refused (curve dies)" : "oscillatory NOT refused");
  r.pass = ok;
  r.detail = os.str();
  return r;
}

// Truncated-symbol sections converge on e_0: residuals strictly decreasing
// and small at the final cut, matching the frozen anchor when available.
inline CheckResult check_truncation_limit(const CheckOptions& opt) {
  CheckResult r;
  r.name = "truncation-strong-limit";
  Symbol f = example45(1.5, 1.0);
  CoefficientVector e0{complexd(1.0, 0.0)};
  TruncationReport rep = truncation_convergence(f, e0, {0.9, 0.99, 0.999}, 1);
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < rep.residuals.size(); ++i) {
    decreasing = decreasing && rep.residuals[i + 1] < rep.residuals[i];
  }
  double final_res = rep.residuals.back();
  bool anchored = true;
  std::string anchor_note = ", no anchor file";
  if (!opt.anchor_path.empty() && std::filesystem::exists(opt.anchor_path)) {
    anchor_note = ", anchor missing";
    for (const auto& a : load_anchors(opt.anchor_path)) {
      if (a.name == "truncation-residual-e45-b1.5-beta1-rho0.999") {
        double diff = std::abs(final_res - a.value);
        anchored = diff <= 1e-6;
        anchor_note = ", anchor diff " + detail::num(diff);
      }
    }
  }
  r.pass = decreasing && final_res < 1e-3 && anchored;
  r.detail = "residuals " + detail::num(rep.residuals.front()) + " -> " +
             detail::num(final_res) + (decreasing ? " decreasing" : " NOT decreasing") +
             anchor_note;
  return r;
}

// The finite-section semi-commutator equals the projected Hankel remainder.
inline CheckResult check_semi_commutator(const CheckOptions&) {
  CheckResult r;
  r.name = "semi-commutator";
  const std::size_t N = 64;
  double worst = 0.0;
  std::vector<std::pair<Symbol, Symbol>> pairs;
  pairs.emplace_back(rand_smooth(3, 3, 2), rand_smooth(5, 3, 2));
  pairs.emplace_back(z_plus_conj_symbol(), zk_symbol(2));
  for (const auto& [f, g] : pairs) {
    SemiCommutator sc = semi_commutator_check(f, g, N);
    worst = std::max(worst, std::abs(sc.finite_section - sc.projected));
  }
  r.pass = worst <= 1e-6;
  r.detail = "worst mismatch " + detail::num(worst);
  return r;
}

// Entrywise-Berezin determinant margins: invertible for diag(z, conj z),
// degenerate for a block with a vanishing Berezin entry.
inline CheckResult check_block_fredholm(const CheckOptions& opt) {
  CheckResult r;
  r.name = "block-fredholm";
  QuadratureConfig qc;
  qc.tol = 1e-6;
  MatrixSymbol good = diag_matrix_symbol({zk_symbol(1), conj_zk_symbol(1)});
  MatrixSymbol bad = diag_matrix_symbol({zk_symbol(1), example45(1.0, 1.0)});
  BlockFredholmReport a = block_fredholm_check(good, ladder_radii(), 16, qc, opt.threads);
  BlockFredholmReport b = block_fredholm_check(bad, ladder_radii(), 16, qc, opt.threads);
  r.pass = a.fredholm && !b.fredholm;
  r.detail = "diag(z, conj z) margin " + detail::num(a.margin) +
             ", degenerate block margin " + detail::num(b.margin);
  return r;
}

// Constructed-spectrum matrices and bit-exact reproducibility across thread
// counts.
inline CheckResult check_eigensolver(const CheckOptions& opt) {
  CheckResult r;
  r.name = "eigensolver-oracles";
  std::mt19937 gen(424242);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<complexd> want(12);
  for (auto& v : want) v = complexd(2.0 * U(gen), 2.0 * U(gen));
  ComplexMatrix D(want.size());
  for (std::size_t i = 0; i < want.size(); ++i) D(i, i) = want[i];
  double diag_err = detail::match_sets(eigenvalues(D), want);

  ComplexMatrix C(3);  // companion matrix of lambda^3 - 1
  C(0, 2) = 1.0;
  C(1, 0) = 1.0;
  C(2, 1) = 1.0;
  std::vector<complexd> roots{complexd(1.0, 0.0),
                              std::polar(1.0, 2.0 * pi / 3.0),
                              std::polar(1.0, -2.0 * pi / 3.0)};
  double comp_err = detail::match_sets(eigenvalues(C), roots);

  std::vector<complexd> want16(16);
  for (auto& v : want16) v = complexd(U(gen), U(gen));
  ComplexMatrix D16(16);
  for (std::size_t i = 0; i < 16; ++i) D16(i, i) = want16[i];
  ComplexMatrix Q = random_unitary(16, 5);
  ComplexMatrix A = Q * D16 * adjoint(Q);
  double conj_err = detail::match_sets(eigenvalues(A), want16);

  auto e1 = eigenvalues(A), e2 = eigenvalues(A);
  bool rerun_same = e1 == e2;
  Symbol fs = rand_smooth(7);
  std::vector<double> rr{0.5, 0.9};
  std::vector<double> aa{0.0, pi};
  double s1 = bwmo_seminorm(fs, rr, aa, GridSpec{16, 16}, {}, 1);
  double s2 = bwmo_seminorm(fs, rr, aa, GridSpec{16, 16}, {}, std::max(2, opt.threads));
  ClusterSet c1 = cluster_set(example45(1.0, 1.0), {0.9, 0.95}, 8, Transform::tilde, {}, 1);
  ClusterSet c2 = cluster_set(example45(1.0, 1.0), {0.9, 0.95}, 8, Transform::tilde, {},
                              std::max(2, opt.threads));
  bool threads_same = s1 == s2 && c1.values == c2.values;

  r.pass = diag_err <= 1e-8 && comp_err <= 1e-8 && conj_err <= 1e-8 && rerun_same &&
           threads_same;
  r.detail = "diag err " + detail::num(diag_err) + ", companion err " +
             detail::num(comp_err) + ", conjugation err " + detail::num(conj_err) +
             (rerun_same && threads_same ? ", deterministic" : ", NOT deterministic");
  return r;
}

inline std::vector<CheckResult> run_checks(const CheckOptions& opt) {
  struct Entry {
    bool in_fast;
    std::function<CheckResult(const CheckOptions&)> fn;
    const char* name;  // used when the check throws before naming itself
  };
  const std::vector<Entry> entries{
      {true, check_geometry, "geometry-closed-forms"},
      {true, check_inclusion_exclusion, "sub-box-inclusion-exclusion"},
      {true, check_toeplitz_closed_forms, "toeplitz-closed-forms"},
      {true, check_berezin_fixed_points, "berezin-fixed-points"},
      {false, check_type_i, "oscillatory-type-i"},
      {false, check_type_ii, "oscillatory-type-ii"},
      {false, check_hat_oscillation, "hat-oscillation-bound"},
      {false, check_compactness, "compactness-chain"},
      {false, check_fredholm_index, "fredholm-index"},
      {true, check_truncation_limit, "truncation-strong-limit"},
      {true, check_semi_commutator, "semi-commutator"},
      {true, check_block_fredholm, "block-fredholm"},
      {true, check_eigensolver, "eigensolver-oracles"},
  };
  std::vector<CheckResult> out;
  for (const auto& entry : entries) {
    if (opt.fast && !entry.in_fast) continue;
    auto t0 = std::chrono::steady_clock::now();
    CheckResult res;
    try {
      res = entry.fn(opt);
    } catch (const std::exception& e) {
      res.name = entry.name;
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    out.push_back(std::move(res));
  }
  return out;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

template <class Stream>
void print_results(Stream& os, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    char line[512];
    std::snprintf(line, sizeof(line), "[%s] %-28s %s (%.2fs)\n",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(),
                  r.seconds);
    os << line;
  }
}

}  // namespace bergmanosc::checks
