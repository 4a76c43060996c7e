#include <doctest.h>

#include <cmath>

#include "mrcf/harmonics.hpp"
#include "test_support.hpp"

using namespace mrcf;
using mrcf_test::Rng;

namespace {

double max_spec_diff(const HarmonicSpectrum& a, const HarmonicSpectrum& b) {
  return (a.coeffs - b.coeffs).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("make_grid sizing and quadrature weights") {
  auto g2 = make_grid(2);
  CHECK(g2->n_theta == 3);
  CHECK(g2->n_phi == 6);
  CHECK(g2->l_max == 2);
  // sum of gl_weight * 2 pi / n_phi over all nodes is the sphere area
  double total = g2->gl_weights.sum() * g2->n_phi * g2->phi_step();
  CHECK(total == doctest::Approx(kFourPi).epsilon(1e-13));

  auto g32 = make_grid(32);
  CHECK(g32->n_theta == 33);
  CHECK(g32->n_phi == 66);

  // nodes strictly interior
  CHECK(g32->theta_nodes.minCoeff() > 0.0);
  CHECK(g32->theta_nodes.maxCoeff() < kPi);

  CHECK_THROWS_AS(make_grid(1), std::invalid_argument);
}

TEST_CASE("quadrature integrates cos^2 theta exactly") {
  auto g = make_grid(4);
  ScalarField f{g, g->nz.square()};
  CHECK(spherical_area(f) == doctest::Approx(kFourPi / 3.0).epsilon(1e-13));
}

TEST_CASE("forward transform of elementary fields") {
  auto g = make_grid(8);

  ScalarField ones{g, ArrayXXd::Ones(g->n_theta, g->n_phi)};
  HarmonicSpectrum s1 = sht_forward(ones);
  CHECK(std::abs(s1.at(0, 0) - 2.0 * std::sqrt(kPi)) < 1e-12);
  s1.at(0, 0) = 0.0;
  CHECK(s1.coeffs.cwiseAbs().maxCoeff() < 1e-12);

  ScalarField cost{g, g->nz};
  HarmonicSpectrum s2 = sht_forward(cost);
  CHECK(std::abs(s2.at(1, 0) - 2.0 * std::sqrt(kPi / 3.0)) < 1e-12);
  s2.at(1, 0) = 0.0;
  CHECK(s2.coeffs.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("synthesis of elementary spectra") {
  auto g = make_grid(6);

  HarmonicSpectrum c(6);
  c.at(0, 0) = 2.0 * std::sqrt(kPi);
  ScalarField f = sht_inverse_real(c, g);
  CHECK((f.values - 1.0).abs().maxCoeff() < 1e-13);

  HarmonicSpectrum d(6);
  d.at(1, 0) = 2.0 * std::sqrt(kPi / 3.0);
  ScalarField h = sht_inverse_real(d, g);
  CHECK((h.values - g->nz).abs().maxCoeff() < 1e-12);

  HarmonicSpectrum z(6);
  ComplexField zf = sht_inverse(z, g);
  CHECK(zf.values.abs().maxCoeff() == 0.0);

  HarmonicSpectrum big(8);
  CHECK_THROWS_AS(sht_inverse(big, g), std::invalid_argument);
}

TEST_CASE("round-trip is the identity on band-limited fields") {
  auto g = make_grid(32);
  Rng rng(2024);
  for (int rep = 0; rep < 3; ++rep) {
    HarmonicSpectrum spec = mrcf_test::random_complex_spectrum(32, rng, 1.0, 0.0);
    ComplexField f = sht_inverse(spec, g);
    HarmonicSpectrum back = sht_forward(f);
    CHECK(max_spec_diff(spec, back) < 1e-10);
  }
  // real fields keep the reality condition
  HarmonicSpectrum rs = mrcf_test::random_real_spectrum(32, rng);
  CHECK(rs.reality_defect() < 1e-12);
  HarmonicSpectrum back = sht_forward(sht_inverse_real(rs, g));
  CHECK(back.reality_defect() < 1e-12);
  CHECK(max_spec_diff(rs, back) < 1e-10);
}

TEST_CASE("laplacian multiplies modes by -l(l+1)") {
  HarmonicSpectrum s(4);
  s.at(0, 0) = 1.0;
  s.at(1, 0) = 1.0;
  s.at(2, 1) = Complex(0.5, -0.25);
  HarmonicSpectrum lap = laplacian(s);
  CHECK(lap.at(0, 0) == Complex(0.0, 0.0));
  CHECK(lap.at(1, 0) == Complex(-2.0, 0.0));
  CHECK(lap.at(2, 1) == Complex(-3.0, 1.5));
}

TEST_CASE("eigen-relation through the sampled transform") {
  auto g = make_grid(16);
  for (int l = 0; l <= 16; ++l)
    for (int m = -l; m <= l; ++m) {
      HarmonicSpectrum e(16);
      e.at(l, m) = 1.0;
      HarmonicSpectrum lap = laplacian(sht_forward(sht_inverse(e, g)));
      e.at(l, m) = -double(l) * (l + 1);
      CHECK(max_spec_diff(lap, e) < 1e-9);
    }
}

TEST_CASE("dbar of elementary fields") {
  auto g = make_grid(8);

  // constant
  ScalarField c{g, ArrayXXd::Constant(g->n_theta, g->n_phi, 3.5)};
  CHECK(dbar(c).values.abs().maxCoeff() < 1e-13);

  // r = sin(theta) cos(phi) = (xi + conj(xi)) / (1 + xi conj(xi))
  ScalarField r{g, g->nx};
  ComplexField d = dbar(r);
  ArrayXXcd expect = (1.0 - g->xi.square()) / g->w.square().cast<Complex>();
  CHECK((d.values - expect).abs().maxCoeff() < 1e-12);

  // partial is the conjugate derivative: partial(real f) = conj(dbar(f))
  ComplexField p = partial(r);
  CHECK((p.values - d.values.conjugate()).abs().maxCoeff() < 1e-12);
}

TEST_CASE("operator factorization (1+xi conj(xi))^2 partial dbar = laplacian") {
  auto g = make_grid(18);  // two degrees of headroom over the band limit
  Rng rng(7);
  HarmonicSpectrum spec = mrcf_test::random_real_spectrum(16, rng, 1.0, 1.0);
  ScalarField f = sht_inverse_real(spec, g);
  ComplexField composed = partial(dbar(f));
  ArrayXXcd lhs = g->w.square().cast<Complex>() * composed.values;
  ScalarField lap = sht_inverse_real(laplacian(spec), g);
  CHECK((lhs.real() - lap.values).abs().maxCoeff() < 1e-8);
  CHECK(lhs.imag().abs().maxCoeff() < 1e-8);
}

TEST_CASE("weighted derivative machinery agrees with the plain one at p = 0") {
  auto g = make_grid(12);
  Rng rng(11);
  HarmonicSpectrum spec = mrcf_test::random_complex_spectrum(10, rng);
  ComplexField f = sht_inverse(spec, g);
  CHECK((dbar_weighted(f, 0).values - dbar(f).values).abs().maxCoeff() < 1e-11);
  CHECK((partial_weighted(f, 0).values - partial(f).values).abs().maxCoeff() < 1e-11);
  // laplacian through the weighted route
  ComplexField lw = laplacian_weighted_values(f, 0);
  ComplexField ls = sht_inverse(laplacian(spec), g);
  CHECK((lw.values - ls.values).abs().maxCoeff() < 1e-9);
}

TEST_CASE("mixed chart derivatives commute") {
  auto g = make_grid(14);
  Rng rng(13);
  HarmonicSpectrum spec = mrcf_test::random_complex_spectrum(10, rng);
  ComplexField f = sht_inverse(spec, g);
  ComplexField a = partial(dbar(f));
  ComplexField b = dbar(partial(f));
  CHECK((a.values - b.values).abs().maxCoeff() < 1e-10);
}

TEST_CASE("spherical area of elementary fields") {
  auto g = make_grid(4);
  ScalarField one{g, ArrayXXd::Ones(g->n_theta, g->n_phi)};
  CHECK(spherical_area(one) == doctest::Approx(kFourPi).epsilon(1e-13));
  ScalarField cost{g, g->nz};
  CHECK(std::abs(spherical_area(cost)) < 1e-13);
  ScalarField both{g, 1.0 + g->nz};
  CHECK(spherical_area(both) == doctest::Approx(kFourPi).epsilon(1e-13));
}

TEST_CASE("Parseval on an oversampled product grid") {
  const int L = 10;
  Rng rng(21);
  HarmonicSpectrum fs = mrcf_test::random_real_spectrum(L, rng);
  HarmonicSpectrum gs = mrcf_test::random_real_spectrum(L, rng);
  auto big = make_grid(2 * L);
  ScalarField f = sht_inverse_real(fs, big);
  ScalarField h = sht_inverse_real(gs, big);
  ScalarField prod{big, f.values * h.values};
  const double lhs = spherical_area(prod);
  Complex rhs(0.0, 0.0);
  for (int l = 0; l <= L; ++l)
    for (int m = -l; m <= l; ++m) rhs += fs.at(l, m) * std::conj(gs.at(l, m));
  CHECK(std::abs(lhs - rhs.real()) < 1e-10);
  CHECK(std::abs(rhs.imag()) < 1e-12);
}

TEST_CASE("point evaluation matches grid synthesis and handles poles") {
  auto g = make_grid(10);
  Rng rng(31);
  HarmonicSpectrum spec = mrcf_test::random_complex_spectrum(10, rng);
  ComplexField f = sht_inverse(spec, g);
  const int j = 4, k = 7;
  Complex v = evaluate_spectrum(spec, g->theta_nodes[j], g->phi_nodes[k]);
  CHECK(std::abs(v - f.values(j, k)) < 1e-11);

  HarmonicSpectrum cz(4);
  cz.at(1, 0) = 2.0 * std::sqrt(kPi / 3.0);  // cos(theta)
  CHECK(std::abs(evaluate_spectrum(cz, 0.0, 0.0) - 1.0) < 1e-14);
  CHECK(std::abs(evaluate_spectrum(cz, kPi, 0.0) + 1.0) < 1e-14);
}
