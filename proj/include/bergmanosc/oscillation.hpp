#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bergmanosc/common.hpp"
#include "bergmanosc/geometry.hpp"
#include "bergmanosc/quadrature.hpp"
#include "bergmanosc/symbols.hpp"
#include "bergmanosc/thresholds.hpp"

namespace bergmanosc {

// Result of one sup-type functional evaluation. refinement_delta is the
// change of the sup under one grid doubling.
struct OscillationReport {
  Point z;
  std::string functional;
  double value = 0.0;
  int grid_r = 0;
  int grid_phi = 0;
  double refinement_delta = 0.0;
};

// A quantity sampled along radii tending to 1, with a log-log fit of
// value against (1 - r). slope s means value ~ C (1-r)^s.
struct RadialProfile {
  std::string functional;
  std::string symbol;
  std::vector<double> radii;
  std::vector<double> values;
  std::optional<double> slope;
  std::optional<double> residual;  // rms residual of the fit
};

namespace detail {

// Least squares of log(value) on log(1-r), ignoring values at or below the
// floor. Requires at least 5 usable points.
inline std::pair<std::optional<double>, std::optional<double>> fit_loglog(
    const std::vector<double>& radii, const std::vector<double>& values,
    std::size_t min_points = 5) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (values[i] > thresholds::ratio_floor && radii[i] < 1.0) {
      xs.push_back(std::log(1.0 - radii[i]));
      ys.push_back(std::log(values[i]));
    }
  }
  if (xs.size() < min_points) return {std::nullopt, std::nullopt};
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) return {std::nullopt, std::nullopt};
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (intercept + slope * xs[i]);
    rss += e * e;
  }
  return {slope, std::sqrt(rss / n)};
}

}  // namespace detail

inline void fit_profile(RadialProfile& p) {
  auto [slope, residual] = detail::fit_loglog(p.radii, p.values);
  p.slope = slope;
  p.residual = residual;
}

// ---------------------------------------------------------------------------
// Averages

inline complexd box_average(const Symbol& f, const Point& z,
                            const QuadratureConfig& cfg = {}) {
  return integrate_polar_rect(f, box(z), cfg).value / box_area(z);
}

// Average of f over the sub-box up to zeta, against the FULL box area of z.
inline complexd partial_average(const Symbol& f, const Point& z, const Point& zeta,
                                const QuadratureConfig& cfg = {}) {
  Box sb = sub_box(z, zeta);
  if (sb.rho_hi <= sb.rho_lo || sb.phi_hi <= sb.phi_lo) return complexd(0.0, 0.0);
  return integrate_polar_rect(f, sb, cfg).value / box_area(z);
}

inline complexd disc_average(const Symbol& f, const Point& z, double r_h,
                             const QuadratureConfig& cfg = {}) {
  DiscRegion disc = hyperbolic_disc(z, r_h);
  complexd mass = integrate_disc(f, disc, cfg).value;
  auto one = constant_symbol(1.0, "one");
  complexd area = integrate_disc(one, disc, cfg).value;
  return mass / area;
}

// Mean p-oscillation over the hyperbolic disc D(z, r_h):
// (1/|D|) int_D |f - f_avg|^p dA.
inline double bmo_local(const Symbol& f, const Point& z, double p = 1.0,
                        double r_h = 1.0, const QuadratureConfig& cfg = {}) {
  if (p < 1.0) throw BadParameters("bmo_local: p must be >= 1");
  DiscRegion disc = hyperbolic_disc(z, r_h);
  auto one = constant_symbol(1.0, "one");
  double area = integrate_disc(one, disc, cfg).value.real();
  complexd avg = integrate_disc(f, disc, cfg).value / area;
  RadialHints h = hints_of(f);
  auto iv = disc.radial_interval(disc.center().theta);
  if (f.radial && iv && iv->first > 0.0) {
    auto dev1 = [&](double rho) {
      return complexd(std::pow(std::abs(f.eval(rho, 0.0) - avg), p), 0.0);
    };
    return disc_radial_integral_fn(dev1, disc, h, cfg).value.real() / area;
  }
  auto dev = [&](double rho, double phi) {
    return complexd(std::pow(std::abs(f.eval(rho, phi) - avg), p), 0.0);
  };
  return integrate_disc_fn(dev, disc, h, cfg).value.real() / area;
}

// The box-average field z -> f^(z), packaged as a symbol so the oscillation
// functionals can be applied to it. Radial symbols get a per-radius cache.
inline Symbol hat_symbol(const Symbol& f, const QuadratureConfig& cfg = {}) {
  Symbol s;
  s.name = "hat(" + f.name + ")";
  if (f.radial) {
    auto cache = std::make_shared<std::map<double, complexd>>();
    Symbol inner = f;
    s.eval = [inner, cfg, cache](double rho, double) {
      auto it = cache->find(rho);
      if (it != cache->end()) return it->second;
      complexd v = box_average(inner, Point{rho, 0.0}, cfg);
      (*cache)[rho] = v;
      return v;
    };
  } else {
    Symbol inner = f;
    s.eval = [inner, cfg](double rho, double phi) {
      return box_average(inner, Point{rho, phi}, cfg);
    };
  }
  s.radial = f.radial;
  s.bounded = f.bounded;
  s.bound = f.bound;
  s.continuous = true;
  return s;
}

// Same for the hyperbolic-disc average field z -> f_avg(z, r_h).
inline Symbol disc_average_symbol(const Symbol& f, double r_h = 1.0,
                                  const QuadratureConfig& cfg = {}) {
  Symbol s;
  s.name = "hat1(" + f.name + ")";
  Symbol inner = f;
  if (f.radial) {
    auto cache = std::make_shared<std::map<double, complexd>>();
    s.eval = [inner, r_h, cfg, cache](double rho, double) {
      auto it = cache->find(rho);
      if (it != cache->end()) return it->second;
      complexd v = disc_average(inner, Point{rho, 0.0}, r_h, cfg);
      (*cache)[rho] = v;
      return v;
    };
  } else {
    s.eval = [inner, r_h, cfg](double rho, double phi) {
      return disc_average(inner, Point{rho, phi}, r_h, cfg);
    };
  }
  s.radial = f.radial;
  s.bounded = f.bounded;
  s.bound = f.bound;
  s.continuous = true;
  return s;
}

// ---------------------------------------------------------------------------
// Oscillation omega(f)(z) = sup over D(z,1) of |f(z) - f(w)|, by sampling
// plus one local refinement pass around the maximizer.
inline double oscillation_omega(const Symbol& f, const Point& z,
                                const QuadratureConfig& cfg = {},
                                int n_ang = 16, int n_rad = 8) {
  (void)cfg;
  if (!f.continuous) {
    throw BadParameters("oscillation_omega: symbol not flagged continuous");
  }
  DiscRegion disc = hyperbolic_disc(z, 1.0);
  const complexd fz = f.eval(z.r, z.theta);

  if (f.radial) {
    auto chord = disc.radial_interval(disc.center().theta);
    if (!chord) return 0.0;
    auto [r1, r2] = *chord;
    const int n = n_ang * n_rad;
    double best = 0.0, best_r = z.r;
    for (int i = 0; i <= n; ++i) {
      double r = r1 + (r2 - r1) * i / n;
      double v = std::abs(fz - f.eval(r, disc.center().theta));
      if (v > best) { best = v; best_r = r; }
    }
    double step = (r2 - r1) / n;
    for (int i = -8; i <= 8; ++i) {
      double r = std::clamp(best_r + step * i / 8.0, r1, r2);
      best = std::max(best, std::abs(fz - f.eval(r, disc.center().theta)));
    }
    return best;
  }

  const double phi_lo = disc.center().theta - disc.theta0();
  const double phi_hi = disc.center().theta + disc.theta0();
  double best = 0.0, best_phi = disc.center().theta, best_r = z.r;
  double rstep = 0.0;
  for (int j = 0; j < n_ang; ++j) {
    double phi = phi_lo + (phi_hi - phi_lo) * (j + 0.5) / n_ang;
    auto chord = disc.radial_interval(phi);
    if (!chord) continue;
    auto [r1, r2] = *chord;
    for (int i = 0; i <= n_rad; ++i) {
      double r = r1 + (r2 - r1) * i / n_rad;
      double v = std::abs(fz - f.eval(r, phi));
      if (v > best) {
        best = v;
        best_phi = phi;
        best_r = r;
        rstep = (r2 - r1) / n_rad;
      }
    }
  }
  // refinement pass on a local half-spacing grid
  double phistep = (phi_hi - phi_lo) / n_ang;
  for (int dj = -4; dj <= 4; ++dj) {
    double phi = best_phi + phistep * dj / 4.0;
    auto chord = disc.radial_interval(phi);
    if (!chord) continue;
    auto [r1, r2] = *chord;
    for (int di = -4; di <= 4; ++di) {
      double r = std::clamp(best_r + rstep * di / 4.0, r1, r2);
      best = std::max(best, std::abs(fz - f.eval(r, phi)));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Prefix-table sup functionals over the corner zeta of B(z, zeta).

struct GridSpec {
  int nr = 32;
  int nphi = 32;
};

namespace detail {

// sup over grid corners of |S_f(zeta) - c * |B(z,zeta)|| / |B(z)|.
inline double corner_sup(const PrefixTable& t, complexd c, double box_area_z) {
  double best = 0.0;
  const double rho0 = t.rho_edges.front();
  const double phi0 = t.phi_edges.front();
  for (int i = 0; i <= t.nr; ++i) {
    const double ai = (t.rho_edges[i] * t.rho_edges[i] - rho0 * rho0) / (2.0 * pi);
    for (int j = 0; j <= t.nphi; ++j) {
      double sub_area = ai * (t.phi_edges[j] - phi0);
      double v = std::abs(t.at(i, j) - c * sub_area);
      if (v > best) best = v;
    }
  }
  return best / box_area_z;
}

}  // namespace detail

// sup over zeta of |partial_average(f, z, zeta)|, prefix table + one doubling.
inline OscillationReport averaging_local_report(const Symbol& f, const Point& z,
                                                const GridSpec& grid = {},
                                                const QuadratureConfig& cfg = {},
                                                bool refine = true) {
  if (grid.nr < 16 || grid.nphi < 16) {
    throw BadParameters("averaging_local: grid must be at least 16x16");
  }
  const Box b = box(z);
  const double area = box_area(z);
  PrefixTable t1 = prefix_table(f, b, grid.nr, grid.nphi, cfg);
  double v1 = detail::corner_sup(t1, complexd(0.0, 0.0), area);
  OscillationReport rep{z, "averaging_local", v1, grid.nr, grid.nphi, 0.0};
  if (refine) {
    PrefixTable t2 = prefix_table(f, b, 2 * grid.nr, 2 * grid.nphi, cfg);
    double v2 = detail::corner_sup(t2, complexd(0.0, 0.0), area);
    rep.value = v2;
    rep.grid_r = 2 * grid.nr;
    rep.grid_phi = 2 * grid.nphi;
    rep.refinement_delta = std::abs(v2 - v1);
    if (rep.refinement_delta >
        thresholds::refinement_gate * std::max(v2, thresholds::ratio_floor)) {
      throw RefinementUnstable("averaging_local: grid doubling moved the sup by >5%");
    }
  }
  return rep;
}

inline double averaging_local(const Symbol& f, const Point& z,
                              const GridSpec& grid = {},
                              const QuadratureConfig& cfg = {}) {
  return averaging_local_report(f, z, grid, cfg).value;
}

// sup over zeta of |int_{B(z,zeta)} (f - f^(z))| / |B(z)|. One prefix table
// of f; the subtracted term is f^(z) times the closed-form sub-box area.
inline OscillationReport bwmo_local_report(const Symbol& f, const Point& z,
                                           const GridSpec& grid = {},
                                           const QuadratureConfig& cfg = {},
                                           bool refine = true) {
  if (grid.nr < 16 || grid.nphi < 16) {
    throw BadParameters("bwmo_local: grid must be at least 16x16");
  }
  const Box b = box(z);
  const double area = box_area(z);
  const complexd fhat = box_average(f, z, cfg);
  PrefixTable t1 = prefix_table(f, b, grid.nr, grid.nphi, cfg);
  double v1 = detail::corner_sup(t1, fhat, area);
  OscillationReport rep{z, "bwmo_local", v1, grid.nr, grid.nphi, 0.0};
  if (refine) {
    PrefixTable t2 = prefix_table(f, b, 2 * grid.nr, 2 * grid.nphi, cfg);
    double v2 = detail::corner_sup(t2, fhat, area);
    rep.value = v2;
    rep.grid_r = 2 * grid.nr;
    rep.grid_phi = 2 * grid.nphi;
    rep.refinement_delta = std::abs(v2 - v1);
    if (rep.refinement_delta >
        thresholds::refinement_gate * std::max(v2, thresholds::ratio_floor)) {
      throw RefinementUnstable("bwmo_local: grid doubling moved the sup by >5%");
    }
  }
  return rep;
}

inline double bwmo_local(const Symbol& f, const Point& z, const GridSpec& grid = {},
                         const QuadratureConfig& cfg = {}, bool refine = true) {
  return bwmo_local_report(f, z, grid, cfg, refine).value;
}

// sup over grid-aligned sub-rectangles [z~, zeta] of box(z) of
// |int (f - f^(z))| / |B(z)|, the two-corner strengthening of bwmo_local.
inline double suprect_local(const Symbol& f, const Point& z, const GridSpec& grid = {},
                            const QuadratureConfig& cfg = {}) {
  const Box b = box(z);
  const double area = box_area(z);
  const complexd fhat = box_average(f, z, cfg);
  PrefixTable t = prefix_table(f, b, grid.nr, grid.nphi, cfg);
  double best = 0.0;
  for (int i0 = 0; i0 <= t.nr; ++i0) {
    for (int i1 = i0 + 1; i1 <= t.nr; ++i1) {
      const double ar =
          (t.rho_edges[i1] * t.rho_edges[i1] - t.rho_edges[i0] * t.rho_edges[i0]) /
          (2.0 * pi);
      for (int j0 = 0; j0 <= t.nphi; ++j0) {
        for (int j1 = j0 + 1; j1 <= t.nphi; ++j1) {
          double sub_area = ar * (t.phi_edges[j1] - t.phi_edges[j0]);
          double v = std::abs(t.rect(i0, i1, j0, j1) - fhat * sub_area);
          if (v > best) best = v;
        }
      }
    }
  }
  return best / area;
}

// ---------------------------------------------------------------------------
// Sample lattices

// 12 radii with 1-r geometric from 0.5 down to 1e-3.
inline std::vector<double> default_radii(int n = 12, double gap_hi = 0.5,
                                         double gap_lo = 1e-3) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = 1.0 - gap_hi * std::pow(gap_lo / gap_hi, static_cast<double>(i) / (n - 1));
  }
  return out;
}

// 7 radii with 1-r geometric from 0.1 down to 1e-3, the boundary-approach
// ladder used by the vanishing profiles.
inline std::vector<double> profile_radii(int n = 7) {
  return default_radii(n, 0.1, 1e-3);
}

inline std::vector<double> lattice_angles(const Symbol& f, int n = 32) {
  if (f.radial) return {0.0};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = two_pi * i / n;
  return out;
}

// max of bwmo_local over the z-lattice; an under-approximation of the
// seminorm, deterministic for any thread count.
inline double bwmo_seminorm(const Symbol& f,
                            const std::vector<double>& radii,
                            const std::vector<double>& angles,
                            const GridSpec& grid = {},
                            const QuadratureConfig& cfg = {}, int threads = 1) {
  std::vector<Point> pts;
  for (double r : radii) {
    for (double a : angles) pts.push_back(Point{r, a});
  }
  std::vector<double> vals(pts.size(), 0.0);
  parallel_for(pts.size(), threads, [&](std::size_t i) {
    vals[i] = bwmo_local(f, pts[i], grid, cfg, false);
  });
  double best = 0.0;
  for (double v : vals) best = std::max(best, v);
  return best;
}

inline double bwmo_seminorm(const Symbol& f, const GridSpec& grid = {},
                            const QuadratureConfig& cfg = {}, int threads = 1) {
  return bwmo_seminorm(f, default_radii(), lattice_angles(f), grid, cfg, threads);
}

// Generic radial profile: per radius, sup of `local(r, angle)` over angles.
template <class Local>
RadialProfile profile_over_lattice(std::string functional, std::string symbol_name,
                                   const std::vector<double>& radii,
                                   const std::vector<double>& angles, Local&& local,
                                   int threads = 1) {
  RadialProfile p;
  p.functional = std::move(functional);
  p.symbol = std::move(symbol_name);
  p.radii = radii;
  p.values.assign(radii.size(), 0.0);
  std::vector<double> flat(radii.size() * angles.size(), 0.0);
  parallel_for(flat.size(), threads, [&](std::size_t k) {
    std::size_t i = k / angles.size();
    std::size_t j = k % angles.size();
    flat[k] = local(radii[i], angles[j]);
  });
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double best = 0.0;
    for (std::size_t j = 0; j < angles.size(); ++j) {
      best = std::max(best, flat[i * angles.size() + j]);
    }
    p.values[i] = best;
  }
  fit_profile(p);
  return p;
}

// Per-radius sup over angles of bwmo_local, with slope fit: the vanishing
// weak-mean-oscillation diagnostic.
inline RadialProfile vwmo_profile(const Symbol& f, const std::vector<double>& radii,
                                  const std::vector<double>& angles,
                                  const GridSpec& grid = {},
                                  const QuadratureConfig& cfg = {}, int threads = 1) {
  return profile_over_lattice(
      "vwmo", f.name, radii, angles,
      [&](double r, double a) {
        return bwmo_local(f, Point{r, a}, grid, cfg, false);
      },
      threads);
}

inline RadialProfile vwmo_profile(const Symbol& f, const QuadratureConfig& cfg = {},
                                  int threads = 1) {
  return vwmo_profile(f, profile_radii(), lattice_angles(f), GridSpec{}, cfg, threads);
}

inline RadialProfile box_average_profile(const Symbol& f,
                                         const std::vector<double>& radii,
                                         const std::vector<double>& angles,
                                         const QuadratureConfig& cfg = {},
                                         int threads = 1) {
  return profile_over_lattice(
      "abs_box_average", f.name, radii, angles,
      [&](double r, double a) {
        return std::abs(box_average(f, Point{r, a}, cfg));
      },
      threads);
}

inline RadialProfile bmo_profile(const Symbol& f, const std::vector<double>& radii,
                                 const std::vector<double>& angles, double p = 1.0,
                                 double r_h = 1.0, const QuadratureConfig& cfg = {},
                                 int threads = 1) {
  return profile_over_lattice(
      "bmo" + std::to_string(static_cast<int>(p)), f.name, radii, angles,
      [&](double r, double a) {
        return bmo_local(f, Point{r, a}, p, r_h, cfg);
      },
      threads);
}

inline RadialProfile averaging_profile(const Symbol& f,
                                       const std::vector<double>& radii,
                                       const std::vector<double>& angles,
                                       const GridSpec& grid = {},
                                       const QuadratureConfig& cfg = {},
                                       int threads = 1) {
  return profile_over_lattice(
      "averaging_local", f.name, radii, angles,
      [&](double r, double a) {
        return averaging_local_report(f, Point{r, a}, grid, cfg, false).value;
      },
      threads);
}

inline RadialProfile omega_hat_profile(const Symbol& f,
                                       const std::vector<double>& radii,
                                       const std::vector<double>& angles,
                                       const QuadratureConfig& cfg = {},
                                       int threads = 1) {
  Symbol fhat = hat_symbol(f, cfg);
  return profile_over_lattice(
      "omega_hat", f.name, radii, angles,
      [&](double r, double a) {
        return oscillation_omega(fhat, Point{r, a}, cfg);
      },
      threads);
}

// ---------------------------------------------------------------------------
// Inclusion-exclusion: four signed corners turning anchored sub-box integrals
// into the integral over the rectangle spanned by zeta1 and zeta2.
inline std::array<std::pair<Point, int>, 4> inclusion_exclusion_corners(
    const Point& z, const Point& zeta1, const Point& zeta2) {
  if (!precsim(zeta1, zeta2, z)) {
    throw OrderViolation("inclusion_exclusion_corners: zeta1 must precede zeta2");
  }
  const Box b = box(z);
  const double phi1 = *b.lift_angle(zeta1.theta);
  const double phi2 = *b.lift_angle(zeta2.theta);
  return {std::make_pair(zeta2, +1),
          std::make_pair(Point{zeta1.r, reduce_angle(phi2)}, -1),
          std::make_pair(Point{zeta2.r, reduce_angle(phi1)}, -1),
          std::make_pair(zeta1, +1)};
}

// |f^(z) - average of f over the rectangle spanned by z~ and zeta|, where the
// spanned rectangle uses its OWN area. Requires |B(z)| <= 2 |B(z~, zeta)|.
inline double corollary37_gap(const Symbol& f, const Point& z, const Point& ztilde,
                              const Point& zeta, const QuadratureConfig& cfg = {}) {
  Box spanned = span_box(z, ztilde, zeta);
  const double sub_area = spanned.area();
  const double area = box_area(z);
  if (sub_area <= 0.0 || area / sub_area > 2.0 + 1e-12) {
    throw AreaRatioViolation("corollary37_gap: |B(z)| / |B(z~,zeta)| exceeds 2");
  }
  complexd sub_avg = integrate_polar_rect(f, spanned, cfg).value / sub_area;
  return std::abs(box_average(f, z, cfg) - sub_avg);
}

}  // namespace bergmanosc
