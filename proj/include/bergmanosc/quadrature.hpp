#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "bergmanosc/common.hpp"
#include "bergmanosc/geometry.hpp"
#include "bergmanosc/symbols.hpp"

namespace bergmanosc {

struct QuadratureConfig {
  int panels = 4;       // base panel count per dimension
  int order = 8;        // Gauss-Legendre nodes per panel
  double tol = 1e-9;    // relative tolerance target
  bool oscillation_refinement = true;
  int max_depth = 12;   // panel-doubling rounds
  int osc_panel_cap = 2000000;  // half-wave panels per radial pass
};

inline void validate(const QuadratureConfig& cfg) {
  if (cfg.panels < 1 || cfg.order < 2 || cfg.order > 64 || !(cfg.tol > 0.0) ||
      cfg.max_depth < 0 || cfg.max_depth > 20)
    throw BadParameters("quadrature config out of range");
}

// A quadrature result. converged=false flags an unmet tolerance; the value
// and the error estimate are still meaningful.
struct Integral {
  complexd value{0.0, 0.0};
  double error = 0.0;
  bool converged = true;
};

struct GLRule {
  std::vector<double> x;  // nodes on [-1,1]
  std::vector<double> w;
};

namespace detail {

inline GLRule make_gauss_legendre(int n) {
  GLRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[i] = -x;
    rule.w[i] = w;
    rule.x[n - 1 - i] = x;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace detail

inline const GLRule& gauss_legendre(int n) {
  static std::map<int, GLRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, detail::make_gauss_legendre(n)).first;
  }
  return it->second;
}

// Metadata steering radial panel placement for a bare callable.
struct RadialHints {
  bool radial = false;
  std::vector<double> breakpoints;
  std::optional<double> osc_exponent;
};

inline RadialHints hints_of(const Symbol& f) {
  return RadialHints{f.radial, f.radial_breakpoints, f.osc_exponent};
}

namespace detail {

template <class F>
complexd gl_segment(F&& f, double a, double b, const GLRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  complexd acc(0.0, 0.0);
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    acc += rule.w[i] * f(mid + half * rule.x[i]);
  }
  return half * acc;
}

// Sorted segment edges for [lo, hi]: symbol breakpoints, and on the outer
// region the sine-phase zeros 1 - (m pi)^{-1/b} so each panel spans at most
// one half-oscillation. Throws UnderResolved past the panel cap.
inline std::vector<double> radial_edges(double lo, double hi, const RadialHints& h,
                                        const QuadratureConfig& cfg) {
  std::vector<double> edges{lo, hi};
  for (double bp : h.breakpoints) {
    if (bp > lo && bp < hi) edges.push_back(bp);
  }
  if (h.osc_exponent && cfg.oscillation_refinement) {
    const double b = *h.osc_exponent;
    const double start = std::max(lo, 0.5);
    if (hi > start) {
      const double tau_lo = std::pow(1.0 - start, -b);
      const double tau_hi = std::pow(1.0 - hi, -b);
      const double m_hi_d = std::floor(tau_hi / pi);
      long m_lo = static_cast<long>(std::ceil(tau_lo / pi));
      if (!std::isfinite(m_hi_d) || m_hi_d - m_lo > cfg.osc_panel_cap) {
        throw UnderResolved("radial_edges: oscillation panel cap exceeded");
      }
      long m_hi = static_cast<long>(m_hi_d);
      for (long m = m_lo; m <= m_hi; ++m) {
        double r = 1.0 - std::pow(m * pi, -1.0 / b);
        if (r > lo && r < hi) edges.push_back(r);
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

template <class F>
complexd sum_segments(F&& f, const std::vector<double>& edges, int split,
                      const GLRule& rule) {
  complexd acc(0.0, 0.0);
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double a = edges[s], b = edges[s + 1];
    for (int j = 0; j < split; ++j) {
      double aa = a + (b - a) * j / split;
      double bb = a + (b - a) * (j + 1) / split;
      acc += gl_segment(f, aa, bb, rule);
    }
  }
  return acc;
}

}  // namespace detail

// Adaptive integral of g(rho) d rho over [lo, hi] (no implicit weights).
template <class F>
Integral integrate_radial_fn(F&& g, double lo, double hi, const RadialHints& hints,
                             const QuadratureConfig& cfg = {}) {
  Integral out;
  if (hi <= lo) return out;
  auto edges = detail::radial_edges(lo, hi, hints, cfg);
  const GLRule& coarse = gauss_legendre(cfg.order);
  const GLRule& fine = gauss_legendre(std::min(2 * cfg.order, 64));
  int split = 1;
  for (int depth = 0; depth <= cfg.max_depth; ++depth) {
    complexd i1 = detail::sum_segments(g, edges, split, coarse);
    complexd i2 = detail::sum_segments(g, edges, split, fine);
    out.value = i2;
    out.error = std::abs(i2 - i1);
    out.converged = out.error <= cfg.tol * std::max(1.0, std::abs(i2));
    if (out.converged || depth == cfg.max_depth) break;
    split *= 2;
  }
  return out;
}

namespace detail {

// One tensor pass over a polar rectangle with the normalized area weight
// rho d rho d phi / pi.
template <class F>
complexd tensor_polar(F&& f, const std::vector<double>& redges,
                      double phi_lo, double phi_hi, int phi_panels, int radial_split,
                      const GLRule& rule) {
  complexd acc(0.0, 0.0);
  const double dphi = (phi_hi - phi_lo) / phi_panels;
  for (int p = 0; p < phi_panels; ++p) {
    const double a = phi_lo + p * dphi;
    const double mid = a + 0.5 * dphi, half = 0.5 * dphi;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double phi = mid + half * rule.x[i];
      auto radial = [&](double rho) { return f(rho, phi) * rho; };
      acc += (half * rule.w[i]) * sum_segments(radial, redges, radial_split, rule);
    }
  }
  return acc / pi;
}

}  // namespace detail

// Integral of f against normalized area measure over a polar rectangle.
// Angles are taken as given (unreduced); f must be 2*pi-periodic.
template <class F>
Integral integrate_polar_rect_fn(F&& f, const Box& box, const RadialHints& hints,
                                 const QuadratureConfig& cfg = {}) {
  Integral out;
  const double dphi = box.phi_hi - box.phi_lo;
  if (dphi <= 0.0 || box.rho_hi <= box.rho_lo) return out;
  if (hints.radial) {
    auto g = [&](double rho) { return f(rho, box.phi_lo) * rho; };
    out = integrate_radial_fn(g, box.rho_lo, box.rho_hi, hints, cfg);
    out.value *= dphi / pi;
    out.error *= dphi / pi;
    return out;
  }
  auto redges = detail::radial_edges(box.rho_lo, box.rho_hi, hints, cfg);
  const GLRule& coarse = gauss_legendre(cfg.order);
  const GLRule& fine = gauss_legendre(std::min(2 * cfg.order, 64));
  int phi_panels = cfg.panels;
  int split = 1;
  for (int depth = 0; depth <= cfg.max_depth; ++depth) {
    complexd i1 = detail::tensor_polar(f, redges, box.phi_lo, box.phi_hi,
                                       phi_panels, split, coarse);
    complexd i2 = detail::tensor_polar(f, redges, box.phi_lo, box.phi_hi,
                                       phi_panels, split, fine);
    out.value = i2;
    out.error = std::abs(i2 - i1);
    out.converged = out.error <= cfg.tol * std::max(1.0, std::abs(i2));
    if (out.converged || depth == cfg.max_depth) break;
    phi_panels *= 2;
    split *= 2;
  }
  return out;
}

inline Integral integrate_polar_rect(const Symbol& f, const Box& box,
                                     const QuadratureConfig& cfg = {}) {
  validate(cfg);
  return integrate_polar_rect_fn(f.eval, box, hints_of(f), cfg);
}

// Alias emphasizing the argument is a Carleson-type box.
inline Integral integrate_box(const Symbol& f, const Box& box,
                              const QuadratureConfig& cfg = {}) {
  return integrate_polar_rect(f, box, cfg);
}

// Integral of f over a hyperbolic disc, by angular Gauss panels and a
// root-found radial chord per angular node.
template <class F>
Integral integrate_disc_fn(F&& f, const DiscRegion& disc, const RadialHints& hints,
                           const QuadratureConfig& cfg = {}) {
  Integral out;
  const double phi_lo = disc.center().theta - disc.theta0();
  const double phi_hi = disc.center().theta + disc.theta0();
  const GLRule& coarse = gauss_legendre(cfg.order);
  const GLRule& fine = gauss_legendre(std::min(2 * cfg.order, 64));

  auto pass = [&](int phi_panels, const GLRule& rule, int split) {
    complexd acc(0.0, 0.0);
    const double dphi = (phi_hi - phi_lo) / phi_panels;
    for (int p = 0; p < phi_panels; ++p) {
      const double a = phi_lo + p * dphi;
      const double mid = a + 0.5 * dphi, half = 0.5 * dphi;
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double phi = mid + half * rule.x[i];
        auto chord = disc.radial_interval(phi);
        if (!chord) continue;
        auto [r1, r2] = *chord;
        if (r2 <= r1) continue;
        auto radial = [&](double rho) { return f(rho, phi) * rho; };
        auto redges = detail::radial_edges(r1, r2, hints, cfg);
        acc += (half * rule.w[i]) * detail::sum_segments(radial, redges, split, rule);
      }
    }
    return acc / pi;
  };

  int phi_panels = std::max(cfg.panels, 4);
  int split = 1;
  for (int depth = 0; depth <= cfg.max_depth; ++depth) {
    complexd i1 = pass(phi_panels, coarse, split);
    complexd i2 = pass(phi_panels, fine, split);
    out.value = i2;
    out.error = std::abs(i2 - i1);
    out.converged = out.error <= cfg.tol * std::max(1.0, std::abs(i2));
    if (out.converged || depth == cfg.max_depth) break;
    phi_panels *= 2;
    split *= 2;
  }
  return out;
}

// For radial integrands, a metric-disc integral reduces to one radial pass:
// the disc is a Euclidean disc centered on the ray through z, so the angular
// half-width at radius rho is acos((rho^2 + c^2 - R^2)/(2 rho c)). Working in
// t = asin((rho - c)/R) removes the sqrt endpoint behavior of that width.
// Requires a disc with 0 outside (r1 > 0).
template <class G>
Integral disc_radial_integral_fn(G&& g, const DiscRegion& disc,
                                 const RadialHints& hints,
                                 const QuadratureConfig& cfg = {}) {
  Integral out;
  auto iv = disc.radial_interval(disc.center().theta);
  if (!iv) return out;
  const double r1 = iv->first, r2 = iv->second;
  if (r2 <= r1) return out;
  if (r1 <= 0.0) throw BadParameters("disc_radial_integral_fn: disc contains 0");
  const double c = 0.5 * (r1 + r2), R = 0.5 * (r2 - r1);
  auto edges_rho = detail::radial_edges(r1, r2, hints, cfg);
  std::vector<double> edges_t(edges_rho.size());
  for (std::size_t i = 0; i < edges_rho.size(); ++i)
    edges_t[i] = std::asin(std::clamp((edges_rho[i] - c) / R, -1.0, 1.0));
  edges_t.front() = -0.5 * pi;
  edges_t.back() = 0.5 * pi;
  auto integrand = [&](double t) {
    const double ct = std::cos(t);
    const double rho = c + R * std::sin(t);
    const double cosb =
        std::clamp((rho * rho + c * c - R * R) / (2.0 * rho * c), -1.0, 1.0);
    return g(rho) * (2.0 * std::acos(cosb) * rho * R * ct / pi);
  };
  const GLRule& coarse = gauss_legendre(cfg.order);
  const GLRule& fine = gauss_legendre(std::min(2 * cfg.order, 64));
  int split = 1;
  for (int depth = 0; depth <= cfg.max_depth; ++depth) {
    complexd i1 = detail::sum_segments(integrand, edges_t, split, coarse);
    complexd i2 = detail::sum_segments(integrand, edges_t, split, fine);
    out.value = i2;
    out.error = std::abs(i2 - i1);
    out.converged = out.error <= cfg.tol * std::max(1.0, std::abs(i2));
    if (out.converged || depth == cfg.max_depth) break;
    split *= 2;
  }
  return out;
}

inline Integral integrate_disc(const Symbol& f, const DiscRegion& disc,
                               const QuadratureConfig& cfg = {}) {
  validate(cfg);
  auto iv = disc.radial_interval(disc.center().theta);
  if (f.radial && iv && iv->first > 0.0) {
    auto g = [&](double rho) { return f.eval(rho, 0.0); };
    return disc_radial_integral_fn(g, disc, hints_of(f), cfg);
  }
  return integrate_disc_fn(f.eval, disc, hints_of(f), cfg);
}

// ---------------------------------------------------------------------------
// Cumulative integral table over a box: cum(i,j) holds the integral of f over
// [rho_0, rho_i] x [phi_0, phi_j], so any grid-aligned sub-rectangle integral
// is four lookups.
struct PrefixTable {
  Box domain;
  int nr = 0, nphi = 0;
  std::vector<double> rho_edges, phi_edges;
  std::vector<complexd> cum;  // (nr+1) x (nphi+1), row-major in rho

  complexd at(int i, int j) const { return cum[static_cast<std::size_t>(i) * (nphi + 1) + j]; }

  complexd rect(int i0, int i1, int j0, int j1) const {
    return at(i1, j1) - at(i0, j1) - at(i1, j0) + at(i0, j0);
  }

  int locate_rho(double rho, double tol = 1e-12) const {
    for (int i = 0; i <= nr; ++i) {
      if (std::abs(rho_edges[i] - rho) <= tol) return i;
    }
    throw BadParameters("PrefixTable: rho not on a grid line");
  }

  int locate_phi(double phi, double tol = 1e-12) const {
    for (int j = 0; j <= nphi; ++j) {
      if (std::abs(phi_edges[j] - phi) <= tol) return j;
    }
    throw BadParameters("PrefixTable: phi not on a grid line");
  }

  complexd rect_box(const Box& b) const {
    return rect(locate_rho(b.rho_lo), locate_rho(b.rho_hi),
                locate_phi(b.phi_lo), locate_phi(b.phi_hi));
  }
};

inline PrefixTable prefix_table(const Symbol& f, const Box& domain, int nr, int nphi,
                                const QuadratureConfig& cfg = {}) {
  PrefixTable t;
  t.domain = domain;
  t.nr = nr;
  t.nphi = nphi;
  t.rho_edges.resize(nr + 1);
  t.phi_edges.resize(nphi + 1);
  for (int i = 0; i <= nr; ++i) {
    t.rho_edges[i] = domain.rho_lo + (domain.rho_hi - domain.rho_lo) * i / nr;
  }
  for (int j = 0; j <= nphi; ++j) {
    t.phi_edges[j] = domain.phi_lo + (domain.phi_hi - domain.phi_lo) * j / nphi;
  }
  const GLRule& rule = gauss_legendre(cfg.order);
  auto hints = hints_of(f);

  // cell integrals, then two cumulative sweeps
  std::vector<complexd> cell(static_cast<std::size_t>(nr) * nphi);
  if (f.radial) {
    std::vector<complexd> radial(nr);
    for (int i = 0; i < nr; ++i) {
      auto g = [&](double rho) { return f.eval(rho, domain.phi_lo) * rho; };
      auto redges = detail::radial_edges(t.rho_edges[i], t.rho_edges[i + 1], hints, cfg);
      radial[i] = detail::sum_segments(g, redges, 1, rule);
    }
    for (int i = 0; i < nr; ++i) {
      for (int j = 0; j < nphi; ++j) {
        cell[static_cast<std::size_t>(i) * nphi + j] =
            radial[i] * ((t.phi_edges[j + 1] - t.phi_edges[j]) / pi);
      }
    }
  } else {
    for (int i = 0; i < nr; ++i) {
      auto redges = detail::radial_edges(t.rho_edges[i], t.rho_edges[i + 1], hints, cfg);
      for (int j = 0; j < nphi; ++j) {
        Box b{t.rho_edges[i], t.rho_edges[i + 1], t.phi_edges[j], t.phi_edges[j + 1]};
        cell[static_cast<std::size_t>(i) * nphi + j] =
            detail::tensor_polar(f.eval, redges, b.phi_lo, b.phi_hi, 1, 1, rule);
      }
    }
  }

  t.cum.assign(static_cast<std::size_t>(nr + 1) * (nphi + 1), complexd(0.0, 0.0));
  for (int i = 1; i <= nr; ++i) {
    for (int j = 1; j <= nphi; ++j) {
      t.cum[static_cast<std::size_t>(i) * (nphi + 1) + j] =
          cell[static_cast<std::size_t>(i - 1) * nphi + (j - 1)] +
          t.cum[static_cast<std::size_t>(i - 1) * (nphi + 1) + j] +
          t.cum[static_cast<std::size_t>(i) * (nphi + 1) + (j - 1)] -
          t.cum[static_cast<std::size_t>(i - 1) * (nphi + 1) + (j - 1)];
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Improper radial integrals of oscillatory integrands up to the boundary,
// summed half-wave by half-wave. `alternating` enables the series tail bound
// |tail| <= |last term|; otherwise the tail is extrapolated from the decay
// rate of the last terms.
template <class F>
Integral oscillatory_radial_tail(F&& g, double lo, double b, bool alternating,
                                 const QuadratureConfig& cfg = {}) {
  Integral out;
  const GLRule& rule = gauss_legendre(cfg.order);
  const double tau_lo = std::pow(1.0 - lo, -b);
  long m = static_cast<long>(std::ceil(tau_lo / pi));
  double prev_edge = lo;
  complexd sum(0.0, 0.0);
  double last_mag = 0.0;
  std::vector<std::pair<double, double>> log_terms;  // (log m, log |I_m|)
  int small_streak = 0;
  const double tol_abs = cfg.tol;
  long count = 0;
  for (; count < cfg.osc_panel_cap; ++count, ++m) {
    double edge = 1.0 - std::pow(m * pi, -1.0 / b);
    complexd term = detail::gl_segment(g, prev_edge, edge, rule);
    sum += term;
    last_mag = std::abs(term);
    if (last_mag > 0.0 && m > 1) {
      log_terms.emplace_back(std::log(static_cast<double>(m)), std::log(last_mag));
      if (log_terms.size() > 64) log_terms.erase(log_terms.begin());
    }
    prev_edge = edge;
    if (last_mag <= tol_abs * std::max(1.0, std::abs(sum))) {
      if (++small_streak >= 3) break;
    } else {
      small_streak = 0;
    }
  }
  out.value = sum;
  if (alternating) {
    out.error = last_mag;
    out.converged = small_streak >= 3;
    return out;
  }
  // power-law tail: |I_m| ~ c m^{-s}, remainder ~ |I_M| M / (s-1)
  double s_est = 0.0;
  if (log_terms.size() >= 8) {
    double n = static_cast<double>(log_terms.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : log_terms) {
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    s_est = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  if (s_est > 1.0) {
    out.error = last_mag * m / (s_est - 1.0);
    out.converged = out.error <= 10.0 * tol_abs * std::max(1.0, std::abs(sum));
  } else {
    out.error = last_mag * m;
    out.converged = false;
  }
  return out;
}

// Integral of |f| over the disc against normalized area. For oscillatory
// radial symbols the outer region is summed half-wave by half-wave with a
// decay-rate tail estimate, so the result is finite and flagged whenever the
// tail fails to decay.
inline Integral l1_norm(const Symbol& f, const QuadratureConfig& cfg = {}) {
  auto af = symbol_abs(f);
  if (f.osc_exponent && f.radial) {
    const double b = *f.osc_exponent;
    double inner_hi = 0.5;
    for (double bp : f.radial_breakpoints) inner_hi = std::max(inner_hi, std::min(bp, 0.9));
    auto g = [&](double rho) { return af.eval(rho, 0.0) * rho; };
    RadialHints h = hints_of(af);
    h.osc_exponent.reset();
    Integral inner = integrate_radial_fn(g, 0.0, inner_hi, h, cfg);
    Integral outer = oscillatory_radial_tail(g, inner_hi, b, false, cfg);
    Integral out;
    out.value = 2.0 * (inner.value + outer.value);
    out.error = 2.0 * (inner.error + outer.error);
    out.converged = inner.converged && outer.converged;
    return out;
  }
  Box full{0.0, 1.0 - 1e-15, 0.0, two_pi};
  return integrate_polar_rect(af, full, cfg);
}

// ---------------------------------------------------------------------------
// Radial moments mu_n = int_0^1 f(rho) rho^{2n+1} d rho, n = 0..count-1, in
// one shared pass over the radial nodes. These feed the diagonal matrix
// elements of multiplication by a radial symbol.
struct RadialMoments {
  std::vector<complexd> mu;
  bool converged = true;
  double tail = 0.0;
};

namespace detail {

// Graded edges accumulating toward 1 so that rho^{2n} is resolved.
inline std::vector<double> graded_edges(const std::vector<double>& breakpoints,
                                        double hi, int count) {
  std::vector<double> edges{0.0, hi};
  for (double bp : breakpoints) {
    if (bp > 0.0 && bp < hi) edges.push_back(bp);
  }
  int levels = 2 * static_cast<int>(std::ceil(std::log2(std::max(count, 2)))) + 8;
  for (int j = 1; j <= levels; ++j) {
    double r = 1.0 - std::pow(2.0, -0.5 * j);
    if (r > 0.0 && r < hi) edges.push_back(r);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace detail

inline RadialMoments radial_moments(const Symbol& f, int count,
                                    const QuadratureConfig& cfg = {}) {
  if (!f.radial) throw BadParameters("radial_moments: symbol is not radial");
  RadialMoments out;
  out.mu.assign(count, complexd(0.0, 0.0));
  const GLRule& rule = gauss_legendre(std::max(cfg.order, 16));

  auto accumulate_segment = [&](double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double rho = mid + half * rule.x[i];
      const complexd base = (half * rule.w[i]) * f.eval(rho, 0.0) * rho;
      const double r2 = rho * rho;
      complexd term = base;
      for (int n = 0; n < count; ++n) {
        out.mu[n] += term;
        term *= r2;
      }
    }
  };

  if (f.osc_exponent) {
    const double b = *f.osc_exponent;
    double inner_hi = 0.5;
    for (double bp : f.radial_breakpoints) inner_hi = std::max(inner_hi, std::min(bp, 0.9));
    auto inner_edges = detail::graded_edges(f.radial_breakpoints, inner_hi, count);
    for (std::size_t s = 0; s + 1 < inner_edges.size(); ++s) {
      accumulate_segment(inner_edges[s], inner_edges[s + 1]);
    }
    // outer half-waves, shared across all moments; stop once a whole wave
    // contributes below tolerance to every moment (rho^{2n+1} <= 1 makes the
    // n = 0 magnitude an upper bound).
    const double tau_lo = std::pow(1.0 - inner_hi, -b);
    long m = static_cast<long>(std::ceil(tau_lo / pi));
    double prev_edge = inner_hi;
    int small_streak = 0;
    double wave_mag = 0.0;
    std::vector<complexd> before(count);
    for (long c = 0; c < cfg.osc_panel_cap; ++c, ++m) {
      double edge = 1.0 - std::pow(m * pi, -1.0 / b);
      before = out.mu;
      accumulate_segment(prev_edge, edge);
      wave_mag = 0.0;
      for (int n = 0; n < count; ++n) {
        wave_mag = std::max(wave_mag, std::abs(out.mu[n] - before[n]));
      }
      prev_edge = edge;
      if (wave_mag <= cfg.tol) {
        if (++small_streak >= 3) break;
      } else {
        small_streak = 0;
      }
    }
    out.tail = wave_mag;
    out.converged = small_streak >= 3;
  } else {
    auto edges = detail::graded_edges(f.radial_breakpoints, 1.0, count);
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
      accumulate_segment(edges[s], edges[s + 1]);
    }
  }
  return out;
}

// Radial nodes and weights resolving both f's structure and polynomials up to
// rho^{2n}: sum_i w_i g(rho_i) approximates int_0^1 g(rho) d rho.
struct RadialGrid {
  std::vector<double> rho;
  std::vector<double> w;
};

inline RadialGrid radial_grid(const std::vector<double>& breakpoints, int bandlimit_n,
                              const QuadratureConfig& cfg = {}) {
  auto edges = detail::graded_edges(breakpoints, 1.0, std::max(bandlimit_n, 2));
  const GLRule& rule = gauss_legendre(std::max(cfg.order, 16));
  RadialGrid grid;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double mid = 0.5 * (edges[s] + edges[s + 1]);
    const double half = 0.5 * (edges[s + 1] - edges[s]);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      grid.rho.push_back(mid + half * rule.x[i]);
      grid.w.push_back(half * rule.w[i]);
    }
  }
  return grid;
}

inline RadialGrid radial_grid(const Symbol& f, int bandlimit_n,
                              const QuadratureConfig& cfg = {}) {
  if (f.osc_exponent && !f.radial) {
    throw UnderResolved("radial_grid: oscillatory non-radial symbols unsupported");
  }
  return radial_grid(f.radial_breakpoints, bandlimit_n, cfg);
}

}  // namespace bergmanosc
