#include "bergmanosc/spectra.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

using namespace bergmanosc;

namespace {

// synthetic trace theta -> e^{ik theta} on n uniform samples
CurveSamples circle_trace(int k, int n) {
  CurveSamples c;
  c.r = 0.9;
  c.angles.resize(n);
  c.values.resize(n);
  for (int j = 0; j < n; ++j) {
    c.angles[j] = two_pi * j / n;
    c.values[j] = std::polar(1.0, k * c.angles[j]);
  }
  return c;
}

}  // namespace

TEST_CASE("winding numbers of synthetic circle traces", "[spectra]") {
  for (int k : {0, 1, -1, 3, -3}) {
    CHECK(winding_number(circle_trace(k, 64)) == k);
  }
}

TEST_CASE("winding number rejects unreliable traces", "[spectra]") {
  // 4 samples of e^{3 i theta} step by 3 pi/2, beyond the resolvable pi/2
  CHECK_THROWS_AS(winding_number(circle_trace(3, 4)), UnderResolved);
  CurveSamples tiny = circle_trace(1, 1);
  CHECK_THROWS_AS(winding_number(tiny), BadParameters);
  CurveSamples through_zero = circle_trace(1, 32);
  through_zero.values[5] = complexd(1e-7, 0.0);
  CHECK_THROWS_AS(winding_number(through_zero), CurveThroughZero);
}

TEST_CASE("transform dispatch matches the named extensions", "[spectra]") {
  Symbol f = abs_z_squared_symbol();
  Point z{0.9, 0.5};
  CHECK(transform_value(f, z, Transform::hat) == box_average(f, z));
  CHECK(transform_value(f, z, Transform::tilde) == berezin_symbol(f, z));
  CHECK(std::string(transform_name(Transform::hat)) == "hat");
  CHECK(std::string(transform_name(Transform::tilde)) == "tilde");
}

TEST_CASE("sampled curves of radial symbols are constant", "[spectra]") {
  CurveSamples c = sample_curve(abs_z_squared_symbol(), 0.9, 16, Transform::tilde);
  REQUIRE(c.values.size() == 16);
  for (const auto& v : c.values) CHECK(v == c.values[0]);
  CHECK_THROWS_AS(sample_curve(abs_z_squared_symbol(), 0.0, 8, Transform::hat),
                  BadParameters);
}

TEST_CASE("monomial symbols have index minus their power", "[spectra]") {
  CHECK(fredholm_index(zk_symbol(2), 0.9, Transform::hat) == -2);
  CHECK(fredholm_index(conj_zk_symbol(1), 0.9, Transform::hat) == 1);
}

TEST_CASE("index ladder settles on the outer radii", "[spectra]") {
  IndexReport rep = fredholm_index_ladder(zk_symbol(1), Transform::hat, {},
                                          {0.9, 0.95});
  CHECK(rep.stable);
  CHECK(rep.index == -1);
  REQUIRE(rep.indices.size() == 2);
  CHECK(rep.indices[0].has_value());
  CHECK(rep.indices[1].has_value());
}

TEST_CASE("vanishing extensions are flagged as not Fredholm", "[spectra]") {
  Symbol zero = constant_symbol(0.0);
  CHECK_THROWS_AS(fredholm_index(zero, 0.9, Transform::hat), NotFredholmError);
  CHECK_THROWS_AS(
      fredholm_index_ladder(zero, Transform::hat, {}, {0.9, 0.95}),
      NotFredholmError);
  CHECK_THROWS_AS(
      fredholm_index_ladder(zk_symbol(1), Transform::hat, {}, {0.9}),
      BadParameters);
}

TEST_CASE("cluster sets validate radii and respect radial symmetry", "[spectra]") {
  CHECK_THROWS_AS(
      cluster_set(abs_z_squared_symbol(), {1.2}, 4, Transform::hat),
      BadParameters);
  ClusterSet cs = cluster_set(abs_z_squared_symbol(), {0.9}, 8, Transform::tilde);
  REQUIRE(cs.values.size() == 1);
  REQUIRE(cs.values[0].size() == 8);
  for (const auto& v : cs.values[0]) CHECK(v == cs.values[0][0]);
  CHECK(cluster_max_modulus(cs, 0) == Catch::Approx(std::abs(cs.values[0][0])));
}

TEST_CASE("essential norm of a constant symbol is its modulus", "[spectra]") {
  EssentialNormReport rep =
      essential_norm_report(constant_symbol(1.0), {0.9, 0.99}, 8);
  REQUIRE(rep.max_hat.size() == 2);
  CHECK(rep.max_hat[0] == Catch::Approx(1.0).margin(1e-9));
  CHECK(rep.max_hat[1] == Catch::Approx(1.0).margin(1e-9));
  CHECK(rep.value == Catch::Approx(1.0).margin(1e-9));
  CHECK(essential_norm_estimate(constant_symbol(1.0), {0.9, 0.99}, 8) ==
        Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("spectrum report bundles section and boundary data", "[spectra]") {
  SpectrumReport rep =
      spectrum_report(z_plus_conj_symbol(), 24, {0.9, 0.95}, 8);
  CHECK(rep.N == 24);
  REQUIRE(rep.eigenvalues.size() == 24);
  // section of a real symbol bounded by 2 keeps a real spectrum inside [-2, 2]
  for (const auto& lam : rep.eigenvalues) {
    CHECK(std::abs(lam.imag()) < 1e-8);
    CHECK(std::abs(lam.real()) < 2.0 + 1e-8);
  }
  CHECK(rep.essential.value <= 2.0 + 1e-8);
  REQUIRE(rep.cluster.values.size() == 2);
  CHECK_THROWS_AS(spectrum_report(z_plus_conj_symbol(), 513, {0.9, 0.95}, 4),
                  BadParameters);
}

TEST_CASE("block determinant margin separates invertible boundary data",
          "[spectra]") {
  MatrixSymbol good = diag_matrix_symbol({zk_symbol(1), conj_zk_symbol(1)});
  BlockFredholmReport rep = block_fredholm_check(good, {0.9, 0.95}, 4);
  CHECK(rep.fredholm);
  // the Berezin map fixes z and conj z, so the det is r^2 = 0.81 at worst
  CHECK(rep.margin == Catch::Approx(0.81).margin(1e-6));
  REQUIRE(rep.radii_used.size() == 2);

  MatrixSymbol bad = diag_matrix_symbol({zk_symbol(1), constant_symbol(0.0)});
  BlockFredholmReport rep2 = block_fredholm_check(bad, {0.9, 0.95}, 4);
  CHECK_FALSE(rep2.fredholm);
  CHECK(rep2.margin < 1e-12);

  CHECK_THROWS_AS(block_fredholm_check(good, {0.9}, 4), BadParameters);
  CHECK_THROWS_AS(block_fredholm_check(MatrixSymbol{}, {0.9, 0.95}, 4),
                  BadParameters);
}
