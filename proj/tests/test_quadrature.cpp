#include <catch2/catch_amalgamated.hpp>

#include <bergmanosc/bergmanosc.hpp>

#include <cmath>
#include <random>

using namespace bergmanosc;

TEST_CASE("config validation rejects out-of-range settings") {
  QuadratureConfig bad;
  bad.panels = 0;
  REQUIRE_THROWS_AS(validate(bad), BadParameters);
  bad = {};
  bad.order = 1;
  REQUIRE_THROWS_AS(validate(bad), BadParameters);
  bad = {};
  bad.order = 65;
  REQUIRE_THROWS_AS(validate(bad), BadParameters);
  bad = {};
  bad.tol = 0.0;
  REQUIRE_THROWS_AS(validate(bad), BadParameters);
  bad = {};
  bad.max_depth = 21;
  REQUIRE_THROWS_AS(validate(bad), BadParameters);
  REQUIRE_NOTHROW(validate(QuadratureConfig{}));
}

TEST_CASE("gauss rule integrates polynomials to machine precision") {
  const GLRule& rule = gauss_legendre(8);
  // degree 15 is exact for an 8-node rule
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    acc += rule.w[i] * std::pow(rule.x[i], 14);
  }
  REQUIRE(acc == Catch::Approx(2.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("unit disc integrals of reference symbols") {
  Box disc{0.0, 1.0 - 1e-15, 0.0, two_pi};
  auto one = constant_symbol(1.0);
  REQUIRE(integrate_polar_rect(one, disc).value.real() ==
          Catch::Approx(1.0).epsilon(1e-12));
  REQUIRE(integrate_polar_rect(abs_z_squared_symbol(), disc).value.real() ==
          Catch::Approx(0.5).epsilon(1e-12));
  // odd angular dependence integrates to zero
  REQUIRE(std::abs(integrate_polar_rect(zk_symbol(1), disc).value) < 1e-12);
}

TEST_CASE("box integral of the constant equals the closed-form area") {
  for (double r : {0.0, 0.5, 0.9, 0.99}) {
    Point z{r, 0.3};
    auto got = integrate_box(constant_symbol(1.0), box(z));
    REQUIRE(got.converged);
    REQUIRE(got.value.real() == Catch::Approx(box_area(z)).epsilon(1e-12));
  }
}

TEST_CASE("hyperbolic disc area closed form tanh^2") {
  auto one = constant_symbol(1.0);
  for (double rh : {0.5, 1.0, 2.0}) {
    DiscRegion d = hyperbolic_disc(Point{0.0, 0.0}, rh);
    double got = integrate_disc(one, d).value.real();
    REQUIRE(got == Catch::Approx(std::tanh(rh) * std::tanh(rh)).epsilon(1e-9));
  }
  // off-center: normalized area of D(z, r_h) is (1-|z|^2)^2 s^2 / (1-s^2|z|^2)^2
  // with s = tanh(r_h), since D is the Euclidean disc image of a round disc
  // under the Mobius map.
  const double s = std::tanh(1.0);
  for (double r : {0.3, 0.7}) {
    DiscRegion d = hyperbolic_disc(Point{r, 1.1}, 1.0);
    const double om = 1.0 - r * r;
    const double want = om * om * s * s / std::pow(1.0 - s * s * r * r, 2.0);
    REQUIRE(integrate_disc(one, d).value.real() ==
            Catch::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("linearity of the box integral") {
  Symbol f = rand_smooth(11);
  Symbol g = rand_smooth(12);
  Point z{0.4, 0.9};
  Box b = box(z);
  complexd lhs =
      integrate_box(symbol_add(symbol_scale(f, 2.5), symbol_scale(g, -0.75)), b)
          .value;
  complexd rhs = 2.5 * integrate_box(f, b).value - 0.75 * integrate_box(g, b).value;
  REQUIRE(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("additivity across radial and angular splits") {
  Symbol f = rand_smooth(21);
  Box b{0.3, 0.8, 0.5, 2.1};
  complexd whole = integrate_polar_rect(f, b).value;
  const double rm = 0.55, pm = 1.4;
  complexd parts =
      integrate_polar_rect(f, Box{b.rho_lo, rm, b.phi_lo, b.phi_hi}).value +
      integrate_polar_rect(f, Box{rm, b.rho_hi, b.phi_lo, b.phi_hi}).value;
  REQUIRE(std::abs(whole - parts) < 1e-12);
  parts = integrate_polar_rect(f, Box{b.rho_lo, b.rho_hi, b.phi_lo, pm}).value +
          integrate_polar_rect(f, Box{b.rho_lo, b.rho_hi, pm, b.phi_hi}).value;
  REQUIRE(std::abs(whole - parts) < 1e-12);
}

TEST_CASE("monte carlo cross-check on a non-radial smooth symbol") {
  Symbol f = rand_smooth(33);
  Box b{0.25, 0.85, 0.4, 1.9};
  complexd quad = integrate_polar_rect(f, b).value;

  std::mt19937 gen(5150);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int n = 400000;
  double acc = 0.0, acc2 = 0.0;
  for (int i = 0; i < n; ++i) {
    // area-uniform sampling in the polar rectangle
    double u = U(gen);
    double rho = std::sqrt(b.rho_lo * b.rho_lo +
                           u * (b.rho_hi * b.rho_hi - b.rho_lo * b.rho_lo));
    double phi = b.phi_lo + U(gen) * (b.phi_hi - b.phi_lo);
    double v = f.eval(rho, phi).real();
    acc += v;
    acc2 += v * v;
  }
  const double mean = acc / n;
  const double var = std::max(0.0, acc2 / n - mean * mean);
  const double mc = mean * b.area();
  const double sigma = std::sqrt(var / n) * b.area();
  REQUIRE(std::abs(quad.real() - mc) < 5.0 * sigma + 1e-12);
}

TEST_CASE("radial fast path agrees with the tensor product path") {
  Symbol f = example45(1.0, 1.0);
  Box b = box(Point{0.9, 0.3});
  complexd fast = integrate_polar_rect(f, b).value;
  Symbol g = f;
  g.radial = false;  // force the 2-D assembly
  complexd slow = integrate_polar_rect(g, b).value;
  REQUIRE(std::abs(fast - slow) < 1e-9);
}

TEST_CASE("oscillatory box integral is stable under order doubling") {
  Symbol f = example45(2.0, 1.0);
  Box b = box(Point{0.9, 0.0});
  QuadratureConfig c8;
  c8.order = 8;
  QuadratureConfig c16;
  c16.order = 16;
  auto a = integrate_polar_rect(f, b, c8);
  auto bb = integrate_polar_rect(f, b, c16);
  REQUIRE(a.converged);
  REQUIRE(bb.converged);
  REQUIRE(std::abs(a.value - bb.value) < 1e-8 * std::max(1.0, std::abs(a.value)));
}

TEST_CASE("panel cap on oscillatory integrands raises UnderResolved") {
  Symbol f = example45(2.0, 1.0);
  QuadratureConfig cfg;
  cfg.osc_panel_cap = 50;
  REQUIRE_THROWS_AS(integrate_polar_rect(f, box(Point{0.99, 0.0}), cfg),
                    UnderResolved);
}

TEST_CASE("disc integral radial reduction agrees with the chord assembly") {
  Symbol f = rand_smooth(7, 0, 5);  // width 0: radial polynomial
  REQUIRE(f.radial);
  DiscRegion d = hyperbolic_disc(Point{0.6, 0.9}, 1.0);
  complexd fast = integrate_disc(f, d).value;
  Symbol g = f;
  g.radial = false;
  complexd slow = integrate_disc(g, d).value;
  REQUIRE(std::abs(fast - slow) < 1e-8);
}

TEST_CASE("prefix table reproduces direct integrals on grid rectangles") {
  Symbol f = rand_smooth(3);
  Point z{0.5, 0.2};
  Box b = box(z);
  PrefixTable t = prefix_table(f, b, 8, 8);

  // full domain
  complexd direct = integrate_polar_rect(f, b).value;
  REQUIRE(std::abs(t.rect_box(b) - direct) < 1e-10);

  // a single interior cell
  Box cell{t.rho_edges[2], t.rho_edges[3], t.phi_edges[4], t.phi_edges[5]};
  complexd cell_direct = integrate_polar_rect(f, cell).value;
  REQUIRE(std::abs(t.rect_box(cell) - cell_direct) < 1e-10);

  // an aligned 3 x 2 block
  Box blk{t.rho_edges[1], t.rho_edges[4], t.phi_edges[3], t.phi_edges[5]};
  REQUIRE(std::abs(t.rect_box(blk) - integrate_polar_rect(f, blk).value) < 1e-10);
}

TEST_CASE("prefix table base row and column are zero") {
  Symbol f = rand_smooth(4);
  PrefixTable t = prefix_table(f, box(Point{0.5, 0.0}), 4, 4);
  for (int i = 0; i <= 4; ++i) {
    REQUIRE(std::abs(t.at(i, 0)) == 0.0);
    REQUIRE(std::abs(t.at(0, i)) == 0.0);
  }
}

TEST_CASE("prefix table cumulative values are monotone for positive integrands") {
  auto one = constant_symbol(1.0);
  PrefixTable t = prefix_table(one, box(Point{0.4, 0.1}), 5, 5);
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      REQUIRE(t.at(i, j).real() >= t.at(i - 1, j).real() - 1e-15);
      REQUIRE(t.at(i, j).real() >= t.at(i, j - 1).real() - 1e-15);
    }
  }
}

TEST_CASE("prefix table rejects off-grid lookups") {
  PrefixTable t = prefix_table(constant_symbol(1.0), box(Point{0.5, 0.0}), 4, 4);
  REQUIRE_THROWS_AS(t.locate_rho(0.5 * (t.rho_edges[0] + t.rho_edges[1])),
                    BadParameters);
}

TEST_CASE("oscillatory tail sum matches a substitution oracle") {
  // integral of sin(1/(1-rho)) on [lo, 1): substitute u = 1/(1-rho), giving
  // integral of sin(u)/u^2 on [1/(1-lo), infinity), summed far past the
  // oscillation scale with plain quadrature.
  const double lo = 0.9;
  auto g = [](double rho) { return complexd(std::sin(1.0 / (1.0 - rho)), 0.0); };
  Integral got = oscillatory_radial_tail(g, lo, 1.0, true);
  REQUIRE(got.converged);

  const GLRule& rule = gauss_legendre(32);
  const double u0 = 1.0 / (1.0 - lo);
  double ref = 0.0;
  const double span = pi;  // half-wave panels in u
  for (int k = 0; k < 4000; ++k) {
    const double a = u0 + k * span, b = a + span;
    const double mid = 0.5 * (a + b), half = 0.5 * span;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double u = mid + half * rule.x[i];
      ref += half * rule.w[i] * std::sin(u) / (u * u);
    }
  }
  REQUIRE(got.value.real() == Catch::Approx(ref).margin(1e-8));
}

TEST_CASE("l1 norm of reference symbols") {
  REQUIRE(l1_norm(constant_symbol(1.0)).value.real() ==
          Catch::Approx(1.0).epsilon(1e-10));
  REQUIRE(l1_norm(abs_z_squared_symbol()).value.real() ==
          Catch::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("radial grid covers breakpoints with nodes in between") {
  RadialGrid g = radial_grid(std::vector<double>{0.5}, 32, QuadratureConfig{});
  REQUIRE(!g.rho.empty());
  REQUIRE(g.rho.size() == g.w.size());
  for (double r : g.rho) {
    REQUIRE(r > 0.0);
    REQUIRE(r < 1.0);
  }
  // weights integrate 1 over [0,1]
  double total = 0.0;
  for (double w : g.w) total += w;
  REQUIRE(total == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("radial moments reproduce monomial integrals") {
  // moments of f(rho) = rho^2: 2 (n+1) int rho^2 rho^(2n+1) drho = (n+1)/(n+2)
  auto m = radial_moments(abs_z_squared_symbol(), 6);
  REQUIRE(m.mu.size() == 6);
  for (std::size_t n = 0; n < 6; ++n) {
    const double want = 1.0 / (2.0 * n + 4.0);
    REQUIRE(m.mu[n].real() == Catch::Approx(want).epsilon(1e-11));
  }
}
