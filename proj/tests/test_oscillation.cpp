#include <catch2/catch_amalgamated.hpp>

#include <bergmanosc/bergmanosc.hpp>

#include <cmath>

using namespace bergmanosc;

TEST_CASE("box average of a constant is the constant") {
  for (double r : {0.2, 0.7, 0.95}) {
    complexd got = box_average(constant_symbol(complexd(2.0, -1.0)), Point{r, 0.4});
    REQUIRE(std::abs(got - complexd(2.0, -1.0)) < 1e-11);
  }
}

TEST_CASE("partial average at the far corner equals the box average") {
  Symbol f = rand_smooth(5);
  Point z{0.5, 0.2};
  Box b = box(z);
  const Point corner{b.rho_hi, b.phi_hi};
  complexd partial = partial_average(f, z, corner);
  complexd full = box_average(f, z);
  REQUIRE(std::abs(partial - full) < 1e-10);
}

TEST_CASE("partial average keeps the box normalization") {
  // over a sub-box half the radial span of B(z), the partial average of the
  // constant 1 is |sub| / |B(z)|
  Point z{0.5, 0.0};
  Box b = box(z);
  const Point zeta{0.5 * (b.rho_lo + b.rho_hi), b.phi_hi};
  complexd got = partial_average(constant_symbol(1.0), z, zeta);
  const double want = sub_box(z, zeta).area() / box_area(z);
  REQUIRE(got.real() == Catch::Approx(want).epsilon(1e-10));
}

TEST_CASE("disc average of a constant is the constant") {
  complexd got = disc_average(constant_symbol(3.0), Point{0.6, 1.0}, 1.0);
  REQUIRE(std::abs(got - complexd(3.0, 0.0)) < 1e-9);
}

TEST_CASE("mean oscillation of a constant vanishes") {
  REQUIRE(bmo_local(constant_symbol(5.0), Point{0.5, 0.3}) < 1e-9);
}

TEST_CASE("mean oscillation rejects p below one") {
  REQUIRE_THROWS_AS(bmo_local(constant_symbol(1.0), Point{0.5, 0.0}, 0.5),
                    BadParameters);
}

TEST_CASE("mean oscillation radial reduction agrees with the chord assembly") {
  Symbol f = abs_z_squared_symbol();
  Point z{0.55, 0.8};
  double fast = bmo_local(f, z);
  Symbol g = f;
  g.radial = false;
  double slow = bmo_local(g, z);
  REQUIRE(fast == Catch::Approx(slow).margin(1e-7));
  REQUIRE(fast > 0.0);
}

TEST_CASE("oscillation sup requires a continuity declaration") {
  Symbol f = example45(1.0, 1.0);  // discontinuous at rho = 1/2
  REQUIRE_FALSE(f.continuous);
  REQUIRE_THROWS_AS(oscillation_omega(f, Point{0.9, 0.0}), BadParameters);
}

TEST_CASE("oscillation sup of a constant vanishes") {
  REQUIRE(oscillation_omega(constant_symbol(4.0), Point{0.5, 0.0}) == 0.0);
}

TEST_CASE("oscillation sup dominates sampled deviations") {
  Symbol f = rand_smooth(17);
  Point z{0.6, 1.2};
  const double om = oscillation_omega(f, z);
  DiscRegion d = hyperbolic_disc(z, 1.0);
  const complexd fz = f.eval(z.r, z.theta);
  // an independent sample scan can beat the lattice sup only by its own
  // interpolation error, a fraction of a percent for this smooth field
  double best = 0.0;
  for (int j = 0; j < 40; ++j) {
    double phi = d.phi_lo() + (d.phi_hi() - d.phi_lo()) * (j + 0.5) / 40.0;
    auto chord = d.radial_interval(phi);
    if (!chord) continue;
    for (int i = 0; i <= 12; ++i) {
      double rho = chord->first + (chord->second - chord->first) * i / 12.0;
      best = std::max(best, std::abs(fz - f.eval(rho, phi)));
    }
  }
  REQUIRE(om >= 0.98 * best);
  REQUIRE(om <= 2.0 * f.bound);
}

TEST_CASE("hat field of a constant is the constant and is continuous") {
  Symbol h = hat_symbol(constant_symbol(2.5));
  REQUIRE(h.continuous);
  REQUIRE(std::abs(h.eval(0.8, 0.3) - complexd(2.5, 0.0)) < 1e-11);
}

TEST_CASE("corner functionals match a direct scan of sub-box averages") {
  Symbol f = rand_smooth(23);
  Point z{0.6, 0.5};
  const int n = 16;
  double reported = bwmo_local(f, z, GridSpec{n, n}, QuadratureConfig{}, false);

  // brute force: same corner lattice, every sub-box integrated directly
  Box b = box(z);
  const double area = box_area(z);
  complexd favg = box_average(f, z);
  double brute = 0.0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      double rho = b.rho_lo + (b.rho_hi - b.rho_lo) * i / n;
      double phi = b.phi_lo + (b.phi_hi - b.phi_lo) * j / n;
      complexd sub = integrate_polar_rect(f, Box{b.rho_lo, rho, b.phi_lo, phi}).value;
      double sub_area = sub_box(z, Point{rho, reduce_angle(phi)}).area();
      brute = std::max(brute, std::abs(sub - favg * sub_area) / area);
    }
  }
  REQUIRE(reported == Catch::Approx(brute).margin(1e-7));
}

TEST_CASE("refined corner functional stays close on smooth symbols") {
  Symbol f = rand_smooth(29);
  Point z{0.7, 2.0};
  OscillationReport rep = bwmo_local_report(f, z, GridSpec{16, 16});
  REQUIRE(rep.value >= 0.0);
  REQUIRE(rep.grid_r == 32);  // the doubled grid is the one reported
  REQUIRE(rep.refinement_delta <=
          thresholds::refinement_gate * std::max(rep.value, 1e-12));
}

TEST_CASE("corner functional rejects grids below the minimum") {
  REQUIRE_THROWS_AS(
      bwmo_local_report(rand_smooth(1), Point{0.5, 0.0}, GridSpec{8, 8}),
      BadParameters);
}

TEST_CASE("default radii grade toward the boundary") {
  auto radii = default_radii(10, 0.5, 1e-3);
  REQUIRE(radii.size() == 10);
  REQUIRE(radii.front() == Catch::Approx(0.5));
  REQUIRE(radii.back() == Catch::Approx(0.999));
  for (std::size_t i = 1; i < radii.size(); ++i) REQUIRE(radii[i] > radii[i - 1]);
}

TEST_CASE("lattice angles collapse for radial symbols") {
  REQUIRE(lattice_angles(example45(1.0, 1.0), 32).size() == 1);
  REQUIRE(lattice_angles(rand_smooth(3), 8).size() == 8);
}

TEST_CASE("profiles of a constant vanish identically") {
  auto radii = std::vector<double>{0.5, 0.7, 0.9};
  RadialProfile p = vwmo_profile(constant_symbol(1.0), radii, {0.0}, GridSpec{16, 16});
  REQUIRE(p.values.size() == 3);
  for (double v : p.values) REQUIRE(v < 1e-11);
}

TEST_CASE("log-log fit recovers an exact power law") {
  RadialProfile p;
  p.functional = "synthetic";
  p.radii = {0.9, 0.95, 0.99, 0.995, 0.999, 0.9995};
  for (double r : p.radii) p.values.push_back(3.0 * std::pow(1.0 - r, 1.5));
  fit_profile(p);
  REQUIRE(p.slope.has_value());
  REQUIRE(*p.slope == Catch::Approx(1.5).epsilon(1e-10));
  REQUIRE(*p.residual < 1e-10);
}

TEST_CASE("log-log fit declines degenerate data") {
  RadialProfile p;
  p.radii = {0.9, 0.95, 0.99, 0.995, 0.999};
  p.values = {0.0, 0.0, 0.0, 0.0, 0.0};  // zeros carry no slope information
  fit_profile(p);
  REQUIRE_FALSE(p.slope.has_value());
}

TEST_CASE("signed corners reproduce the spanned rectangle integral") {
  Symbol f = rand_smooth(41);
  Point z{0.5, 1.1};
  Box b = box(z);
  const Point zeta1{0.55, b.phi_lo + 0.2};
  const Point zeta2{0.68, b.phi_lo + 0.6};
  auto corners = inclusion_exclusion_corners(z, zeta1, zeta2);
  int sign_sum = 0;
  complexd acc(0.0, 0.0);
  for (const auto& [zeta, sign] : corners) {
    sign_sum += sign;
    acc += static_cast<double>(sign) * integrate_box(f, sub_box(z, zeta)).value;
  }
  REQUIRE(sign_sum == 0);
  complexd direct = integrate_box(f, span_box(z, zeta1, zeta2)).value;
  REQUIRE(std::abs(acc - direct) < 1e-9);
}

TEST_CASE("signed corners demand ordered points") {
  Point z{0.5, 0.0};
  Box b = box(z);
  const Point zeta1{0.55, b.phi_lo + 0.6};
  const Point zeta2{0.68, b.phi_lo + 0.2};  // angular order reversed
  REQUIRE_THROWS_AS(inclusion_exclusion_corners(z, zeta1, zeta2), OrderViolation);
}

TEST_CASE("two-scale average gap enforces the area ratio window") {
  Symbol f = rand_smooth(2);
  Point z{0.5, 0.0};
  Box b = box(z);
  // a spanned rectangle covering most of the box passes the 2x area gate
  Point lo{b.rho_lo + 0.02, b.phi_lo + 0.05};
  Point hi{b.rho_hi - 0.01, b.phi_hi - 0.05};
  REQUIRE(corollary37_gap(f, z, lo, hi) >= 0.0);
  // gap of a constant is zero regardless of the rectangle
  REQUIRE(corollary37_gap(constant_symbol(3.0), z, lo, hi) < 1e-10);
  // a small spanned rectangle leaves the admissible window
  Point small_lo{0.55, b.phi_lo + 0.1};
  Point small_hi{0.70, b.phi_lo + 0.3};
  REQUIRE_THROWS_AS(corollary37_gap(f, z, small_lo, small_hi),
                    AreaRatioViolation);
}

TEST_CASE("corner sup seminorm properties on the lattice") {
  Symbol f = rand_smooth(9);
  Symbol g = rand_smooth(10);
  const std::vector<double> radii{0.5, 0.8};
  const std::vector<double> angles{0.0, pi};
  const GridSpec grid{16, 16};
  const double sf = bwmo_seminorm(f, radii, angles, grid);
  const double sg = bwmo_seminorm(g, radii, angles, grid);
  const double s2f = bwmo_seminorm(symbol_scale(f, 2.0), radii, angles, grid);
  const double sfg = bwmo_seminorm(symbol_add(f, g), radii, angles, grid);
  REQUIRE(s2f == Catch::Approx(2.0 * sf).epsilon(1e-8));
  REQUIRE(sfg <= sf + sg + 1e-8);
  REQUIRE(bwmo_seminorm(constant_symbol(7.0), radii, angles, grid) < 1e-10);
}
