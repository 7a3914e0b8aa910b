#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "bergmanosc/common.hpp"

namespace bergmanosc {

// Point of the open unit disc in polar form. The angular coordinate is kept
// explicitly so that points with r = 0 still carry a direction (the level-0
// decomposition boxes need it).
struct Point {
  double r = 0.0;      // in [0, 1)
  double theta = 0.0;  // normalized to [0, 2*pi)

  Point() = default;
  Point(double radius, double angle) : r(radius), theta(reduce_angle(angle)) {
    assert(r >= 0.0 && r < 1.0);
  }

  complexd value() const { return std::polar(r, theta); }

  static Point from_complex(complexd z) {
    return Point(std::abs(z), std::arg(z) < 0 ? std::arg(z) + two_pi : std::arg(z));
  }
};

// Polar rectangle. The angular interval is stored unreduced: phi_hi may
// exceed 2*pi to encode wraparound; membership reduces angles mod 2*pi at
// the last moment.
struct Box {
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  double phi_lo = 0.0;
  double phi_hi = 0.0;

  Box() = default;
  Box(double rl, double rh, double pl, double ph)
      : rho_lo(rl), rho_hi(rh), phi_lo(pl), phi_hi(ph) {
    assert(rho_lo <= rho_hi && rho_hi < 1.0);
    assert(phi_lo <= phi_hi && phi_hi - phi_lo <= two_pi + 1e-12);
  }

  double radial_width() const { return rho_hi - rho_lo; }
  double angular_width() const { return phi_hi - phi_lo; }

  // Normalized area (dA = rho drho dphi / pi).
  double area() const {
    return angular_width() * (rho_hi * rho_hi - rho_lo * rho_lo) / (2.0 * pi);
  }

  // Representative of `phi` mod 2*pi inside [phi_lo, phi_hi], if one exists.
  std::optional<double> lift_angle(double phi, double tol = 1e-12) const {
    double base = reduce_angle(phi);
    for (int k = -1; k <= 2; ++k) {
      double cand = base + k * two_pi;
      if (cand >= phi_lo - tol && cand <= phi_hi + tol) {
        return std::clamp(cand, phi_lo, phi_hi);
      }
    }
    return std::nullopt;
  }

  bool contains(double rho, double phi, double tol = 1e-12) const {
    if (rho < rho_lo - tol || rho > rho_hi + tol) return false;
    return lift_angle(phi, tol).has_value();
  }
  bool contains(const Point& p, double tol = 1e-12) const {
    return contains(p.r, p.theta, tol);
  }
};

// Mobius transform interchanging 0 and z.
inline complexd mobius(complexd z, complexd w) {
  return (z - w) / (1.0 - w * std::conj(z));
}
inline complexd mobius(const Point& z, const Point& w) {
  return mobius(z.value(), w.value());
}

// Hyperbolic (Bergman) distance on the disc,
//   beta(z, w) = (1/2) log((1 + |phi_z(w)|) / (1 - |phi_z(w)|)) = atanh |phi_z(w)|.
inline double bergman_distance(complexd z, complexd w) {
  double m = std::abs(mobius(z, w));
  if (m >= 1.0) m = std::nextafter(1.0, 0.0);
  return 0.5 * std::log((1.0 + m) / (1.0 - m));
}
inline double bergman_distance(const Point& z, const Point& w) {
  return bergman_distance(z.value(), w.value());
}

// Carleson-type box attached to z = r e^{i theta}:
// rho in [r, 1 - (1-r)/2], phi in [theta, theta + pi (1-r)] (unreduced).
inline Box box(const Point& z) {
  double h = 1.0 - z.r;
  return Box(z.r, 1.0 - 0.5 * h, z.theta, z.theta + pi * h);
}

// Closed-form normalized area of box(z): h^2/2 - 3 h^3/8 with h = 1 - r.
inline double box_area(const Point& z) {
  double h = 1.0 - z.r;
  return h * h * (0.5 - 0.375 * h);
}
inline double box_area(double r) { return box_area(Point(r, 0.0)); }

// Sub-box of box(z) spanned from the lower-left corner (z itself) up to zeta.
inline Box sub_box(const Point& z, const Point& zeta) {
  Box b = box(z);
  auto phi = b.lift_angle(zeta.theta);
  if (!phi || zeta.r < b.rho_lo - 1e-12 || zeta.r > b.rho_hi + 1e-12) {
    throw PointOutsideBox("sub_box: zeta outside box(z)");
  }
  double rho = std::clamp(zeta.r, b.rho_lo, b.rho_hi);
  return Box(b.rho_lo, rho, b.phi_lo, *phi);
}

// Partial order on box(z): zeta1 precedes zeta2 iff rho1 <= rho2 and
// phi1 <= phi2 in the unreduced angular coordinate of box(z).
inline bool precsim(const Point& zeta1, const Point& zeta2, const Point& z) {
  Box b = box(z);
  auto p1 = b.lift_angle(zeta1.theta);
  auto p2 = b.lift_angle(zeta2.theta);
  if (!p1 || !p2 || !b.contains(zeta1) || !b.contains(zeta2)) {
    throw PointOutsideBox("precsim: point outside box(z)");
  }
  return zeta1.r <= zeta2.r + 1e-15 && *p1 <= *p2 + 1e-15;
}

// Polar rectangle spanned by two order-comparable points of box(z),
// B(zeta1, zeta2) = [rho1, rho2] x [phi1, phi2] in unreduced coordinates.
inline Box span_box(const Point& z, const Point& zeta1, const Point& zeta2) {
  if (!precsim(zeta1, zeta2, z)) {
    throw OrderViolation("span_box: zeta1 does not precede zeta2 in box(z)");
  }
  Box b = box(z);
  double p1 = *b.lift_angle(zeta1.theta);
  double p2 = *b.lift_angle(zeta2.theta);
  return Box(std::min(zeta1.r, zeta2.r), std::max(zeta1.r, zeta2.r),
             std::min(p1, p2), std::max(p1, p2));
}

namespace detail {

// Minimizer of a unimodal function on [lo, hi] by ternary search.
template <typename F>
double unimodal_min(F&& f, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) <= f(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return 0.5 * (lo + hi);
}

template <typename F>
double bisect(F&& f, double lo, double hi) {
  // f(lo), f(hi) must have opposite signs; returns a root to ~1e-14.
  double flo = f(lo);
  for (int it = 0; it < 120 && hi - lo > 1e-14; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// Hyperbolic disc D(z, r_h) = { w : beta(z, w) < r_h } in the polar
// presentation: angles theta +- theta0 around the center's angle, and for
// each admissible angle the radial chord [r1(phi), r2(phi)].
// r1 = 0 exactly when the origin lies inside the disc (beta(z,0) < r_h).
class DiscRegion {
 public:
  DiscRegion(const Point& z, double r_h, int n_angles = 128)
      : center_(z), radius_(r_h) {
    assert(r_h > 0.0);
    theta0_ = find_theta0();
    deltas_.reserve(n_angles);
    r1_.reserve(n_angles);
    r2_.reserve(n_angles);
    for (int i = 0; i < n_angles; ++i) {
      double delta = -theta0_ + (i + 0.5) * (2.0 * theta0_ / n_angles);
      auto iv = radial_interval(center_.theta + delta);
      if (!iv) throw RootFindFailure("DiscRegion: interior angle does not meet the disc");
      deltas_.push_back(delta);
      r1_.push_back(iv->first);
      r2_.push_back(iv->second);
    }
  }

  const Point& center() const { return center_; }
  double hyperbolic_radius() const { return radius_; }
  double theta0() const { return theta0_; }
  double phi_lo() const { return center_.theta - theta0_; }
  double phi_hi() const { return center_.theta + theta0_; }
  const std::vector<double>& sample_deltas() const { return deltas_; }
  const std::vector<double>& sample_r1() const { return r1_; }
  const std::vector<double>& sample_r2() const { return r2_; }

  // Radial chord of the disc along the ray at absolute angle phi, found by
  // bisection on rho -> beta(z, rho e^{i phi}) - r_h. Empty if the ray
  // misses the disc.
  std::optional<std::pair<double, double>> radial_interval(double phi) const {
    auto g = [&](double rho) {
      return bergman_distance(center_.value(), std::polar(rho, phi)) - radius_;
    };
    const double hi = 1.0 - 1e-13;
    double rho_star = detail::unimodal_min(g, 0.0, hi);
    if (g(rho_star) >= 0.0) return std::nullopt;
    double r2 = detail::bisect(g, rho_star, hi);
    double r1 = (g(0.0) < 0.0) ? 0.0 : detail::bisect(g, 0.0, rho_star);
    return std::make_pair(r1, r2);
  }

  bool contains(complexd w) const {
    return bergman_distance(center_.value(), w) < radius_;
  }

 private:
  double find_theta0() const {
    auto min_beta = [&](double delta) {
      auto g = [&](double rho) {
        return bergman_distance(center_.value(),
                                std::polar(rho, center_.theta + delta));
      };
      double rho_star = detail::unimodal_min(g, 0.0, 1.0 - 1e-13);
      return g(rho_star) - radius_;
    };
    if (min_beta(pi) < 0.0) return pi;  // every ray meets the disc
    if (radius_ > 2.0 + 1e-9) {
      // Callers keep r_h <= 2; beyond that the bracket below is untested.
      throw RootFindFailure("DiscRegion: hyperbolic radius above supported range");
    }
    return detail::bisect(min_beta, 0.0, pi);
  }

  Point center_;
  double radius_ = 1.0;
  double theta0_ = 0.0;
  std::vector<double> deltas_, r1_, r2_;
};

inline DiscRegion hyperbolic_disc(const Point& z, double r_h, int n_angles = 128) {
  return DiscRegion(z, r_h, n_angles);
}

// One tile of the dyadic box decomposition of the disc.
struct DecompositionBox {
  int level = 0;
  int index = 0;
  Point center;
  Box tile;
};

// Dyadic decomposition: level k has radius r_k = 1 - 2^{-k} and 2^{k+1}
// equally spaced centers; box(z_{k,j}) spans [r_k, r_{k+1}] radially and an
// angle of pi 2^{-k}, so each level tiles its annulus exactly and levels
// 0..L cover |z| <= 1 - 2^{-(L+1)}.
inline std::vector<DecompositionBox> disc_decomposition(int max_level) {
  assert(max_level >= 0);
  std::vector<DecompositionBox> out;
  for (int k = 0; k <= max_level; ++k) {
    double rk = 1.0 - std::ldexp(1.0, -k);
    int count = 1 << (k + 1);
    double step = pi * std::ldexp(1.0, -k);
    for (int j = 0; j < count; ++j) {
      Point c(rk, j * step);
      out.push_back(DecompositionBox{k, j, c, box(c)});
    }
  }
  return out;
}

// Level/index of the decomposition tile whose half-open cell contains the
// point (rho, phi). Interior points of tiles map to that tile.
inline std::pair<int, int> decomposition_locate(double rho, double phi) {
  assert(rho >= 0.0 && rho < 1.0);
  int k = rho <= 0.0 ? 0 : static_cast<int>(std::floor(-std::log2(1.0 - rho)));
  if (k < 0) k = 0;
  double step = pi * std::ldexp(1.0, -k);
  int count = 1 << (k + 1);
  int j = static_cast<int>(std::floor(reduce_angle(phi) / step));
  if (j >= count) j = count - 1;
  return {k, j};
}

}  // namespace bergmanosc
