#include <doctest.h>

#include <cmath>

#include "mrcf/line_space.hpp"
#include "test_support.hpp"

using namespace mrcf;
using mrcf_test::Rng;

namespace {

OrientedLine north_line(Complex xi, Complex eta) {
  return {OrientedLine::Chart::north, xi, eta};
}

// Independent check for the perpendicular distance: parametrize the line
// through two of its points and minimize the distance to the origin.
double perp_by_minimization(const OrientedLine& line) {
  Eigen::Vector3d p0 = line_to_point(line, 0.0);
  Eigen::Vector3d p1 = line_to_point(line, 1.0);
  Eigen::Vector3d d = p1 - p0;
  const double s = -p0.dot(d) / d.squaredNorm();
  return (p0 + s * d).norm();
}

}  // namespace

TEST_CASE("line_to_point at elementary lines") {
  CHECK((line_to_point(north_line(0.0, 0.0), 5.0) - Eigen::Vector3d(0, 0, 5)).norm() < 1e-15);
  CHECK((line_to_point(north_line(0.0, 0.5), 1.0) - Eigen::Vector3d(1, 0, 1)).norm() < 1e-15);
  CHECK(line_to_point(north_line(1.0, 0.0), 0.0).norm() < 1e-15);
}

TEST_CASE("point_to_line inverts line_to_point") {
  auto [eta0, r0] = point_to_line({0, 0, 5}, 0.0);
  CHECK(std::abs(eta0) < 1e-15);
  CHECK(r0 == doctest::Approx(5.0));

  auto [eta1, r1] = point_to_line({1, 0, 0}, 0.0);
  CHECK(std::abs(eta1 - 0.5) < 1e-15);
  CHECK(std::abs(r1) < 1e-15);

  Rng rng(101);
  for (int i = 0; i < 100; ++i) {
    Eigen::Vector3d p(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    Complex xi(rng.uniform(-1, 1), rng.uniform(-1, 1));
    auto [eta, r] = point_to_line(p, xi);
    Eigen::Vector3d back = line_to_point(north_line(xi, eta), r);
    CHECK((back - p).norm() < 1e-12);
  }
}

TEST_CASE("perpendicular distance against brute-force minimization") {
  CHECK(perp_distance(north_line(0.0, 0.0)) == 0.0);
  CHECK(perp_distance(north_line(0.0, 0.5)) == doctest::Approx(1.0));

  Rng rng(102);
  for (int i = 0; i < 100; ++i) {
    OrientedLine line = north_line({rng.uniform(-1, 1), rng.uniform(-1, 1)},
                                   {rng.uniform(-2, 2), rng.uniform(-2, 2)});
    CHECK(std::abs(perp_distance(line) - perp_by_minimization(line)) < 1e-10);
  }
}

TEST_CASE("chart switch preserves the geometry near the equator") {
  Rng rng(103);
  for (int i = 0; i < 50; ++i) {
    const double ang = rng.uniform(0, 2 * kPi);
    const double mag = rng.uniform(0.95, 1.05);
    OrientedLine line = north_line(mag * Complex(std::cos(ang), std::sin(ang)),
                                   {rng.uniform(-2, 2), rng.uniform(-2, 2)});
    OrientedLine south = to_chart(line, OrientedLine::Chart::south);
    CHECK(std::abs(perp_distance(line) - perp_distance(south)) < 1e-12);
    for (double r : {-1.0, 0.0, 2.0})
      CHECK((line_to_point(line, r) - line_to_point(south, r)).norm() < 1e-12);
    CHECK((direction_vector(line.xi, line.chart) -
           direction_vector(south.xi, south.chart)).norm() < 1e-12);
  }
}

TEST_CASE("direction_vector basics and the sphere support identity") {
  CHECK((direction_vector(0.0, OrientedLine::Chart::north) - Eigen::Vector3d(0, 0, 1)).norm() < 1e-14);
  CHECK((direction_vector(1.0, OrientedLine::Chart::north) - Eigen::Vector3d(1, 0, 0)).norm() < 1e-14);
  auto g = make_grid(8);
  Rng rng(104);
  Eigen::Vector3d c(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
  const double radius = rng.uniform(0.5, 2.0);
  SupportField r = sphere_support(CenterPoint::from_vec(c), radius, g);
  for (int j = 0; j < g->n_theta; ++j)
    for (int k = 0; k < g->n_phi; k += 3) {
      Eigen::Vector3d n = direction_vector(g->xi(j, k), OrientedLine::Chart::north);
      CHECK(std::abs(n.norm() - 1.0) < 1e-14);
      CHECK(std::abs(r.field.values(j, k) - (c.dot(n) + radius)) < 1e-12);
    }
}

TEST_CASE("section of a support function") {
  auto g = make_grid(8);

  SupportField rc{ScalarField{g, ArrayXXd::Constant(g->n_theta, g->n_phi, 2.0)}};
  CHECK(section_from_support(rc).field.values.abs().maxCoeff() < 1e-12);

  // r = sin(theta) cos(phi): the lines through (1,0,0)
  SupportField rx{ScalarField{g, g->nx}};
  SectionField fx = section_from_support(rx);
  SectionField hx = holomorphic_section({Complex(1.0, 0.0), 0.0}, g);
  CHECK((fx.field.values - hx.field.values).abs().maxCoeff() < 1e-11);
  CHECK((fx.field.values - 0.5 * (1.0 - g->xi.square())).abs().maxCoeff() < 1e-11);

  // r = cos(theta): the lines through (0,0,1), F = -xi
  SupportField rz{ScalarField{g, g->nz}};
  SectionField fz = section_from_support(rz);
  CHECK((fz.field.values + g->xi).abs().maxCoeff() < 1e-11);
}

TEST_CASE("slopes of elementary sections") {
  auto g = make_grid(10);

  SectionField zero{make_complex_field(g)};
  SlopeFields s0 = slopes(zero);
  CHECK(s0.sigma.values.abs().maxCoeff() < 1e-13);
  CHECK(s0.rho.values.abs().maxCoeff() < 1e-13);
  CHECK(s0.lambda.values.abs().maxCoeff() < 1e-13);

  // translated sphere: rho cancels the l=1 support term
  SupportField r{ScalarField{g, 1.5 + g->nx}};
  SlopeFields s1 = slopes(section_from_support(r));
  CHECK(s1.sigma.values.abs().maxCoeff() < 1e-10);
  CHECK(s1.lambda.values.abs().maxCoeff() < 1e-10);
  CHECK((s1.rho.values + g->nx).abs().maxCoeff() < 1e-10);

  // imaginary potential: rho + i lambda = (1/2) Laplacian(i cos theta)
  SupportField rz{ScalarField{g, g->nz}};
  SectionField fi = section_from_support(rz);
  fi.field.values *= Complex(0.0, 1.0);
  SlopeFields s2 = slopes(fi);
  CHECK(s2.rho.values.abs().maxCoeff() < 1e-10);
  CHECK((s2.lambda.values + g->nz).abs().maxCoeff() < 1e-10);
}

TEST_CASE("holomorphic sections have vanishing sigma and lambda") {
  auto g = make_grid(8);
  Rng rng(105);
  for (int i = 0; i < 10; ++i) {
    const double scale = (i < 5) ? 1.0 : 10.0;
    CenterPoint c{Complex(scale * rng.uniform(-1, 1), scale * rng.uniform(-1, 1)),
                  scale * rng.uniform(-1, 1)};
    SectionField F = holomorphic_section(c, g);
    SlopeFields s = slopes(F);
    CHECK(s.sigma.values.abs().maxCoeff() < 1e-9);
    CHECK(s.lambda.values.abs().maxCoeff() < 1e-9);
    // dbar F = -conj(sigma) vanishes as well
    ComplexField G{g, F.field.values / g->w.square().cast<Complex>()};
    CHECK((g->w.square().cast<Complex>() * dbar_weighted(G, 2).values)
              .abs()
              .maxCoeff() < 1e-9);
  }
}

TEST_CASE("Lagrangian criterion: support-derived sections have lambda = 0") {
  auto g = make_grid(16);
  Rng rng(106);
  for (int i = 0; i < 5; ++i) {
    HarmonicSpectrum spec = mrcf_test::random_real_spectrum(8, rng, 0.5);
    SupportField r{sht_inverse_real(spec, g)};
    SlopeFields s = slopes(section_from_support(r));
    CHECK(s.lambda.values.abs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("rho is half the Laplacian of the support") {
  auto g = make_grid(16);
  Rng rng(107);
  HarmonicSpectrum spec = mrcf_test::random_real_spectrum(8, rng, 0.5);
  SupportField r{sht_inverse_real(spec, g)};
  SlopeFields s = slopes(section_from_support(r));
  ScalarField lap = sht_inverse_real(laplacian(spec), g);
  CHECK((s.rho.values - 0.5 * lap.values).abs().maxCoeff() < 1e-8);
}

TEST_CASE("radii of curvature of spheres") {
  auto g = make_grid(8);

  SupportField r1{ScalarField{g, ArrayXXd::Constant(g->n_theta, g->n_phi, 2.5)}};
  RadiiResult rr1 = radii_of_curvature(r1, slopes(section_from_support(r1)));
  CHECK(rr1.convex);
  CHECK((rr1.r1.values - 2.5).abs().maxCoeff() < 1e-10);
  CHECK((rr1.r2.values - 2.5).abs().maxCoeff() < 1e-10);

  // translated sphere keeps both radii equal to R
  SupportField r2{ScalarField{g, 1.5 + g->nx}};
  RadiiResult rr2 = radii_of_curvature(r2, slopes(section_from_support(r2)));
  CHECK(rr2.convex);
  CHECK((rr2.r1.values - 1.5).abs().maxCoeff() < 1e-10);
  CHECK((rr2.r2.values - 1.5).abs().maxCoeff() < 1e-10);

  // a thin body with a large l=2 ripple loses convexity
  SupportField r3{ScalarField{g, 0.1 + 2.0 * (3.0 * g->nz.square() - 1.0)}};
  RadiiResult rr3 = radii_of_curvature(r3, slopes(section_from_support(r3)));
  CHECK_FALSE(rr3.convex);
}

TEST_CASE("translation action") {
  auto g = make_grid(8);
  CenterPoint c{Complex(1.0, 0.0), 0.0};

  SupportField one{ScalarField{g, ArrayXXd::Ones(g->n_theta, g->n_phi)}};
  SupportField moved = translate(one, c);
  CHECK((moved.field.values - (1.0 + g->nx)).abs().maxCoeff() < 1e-13);

  SectionField zero{make_complex_field(g)};
  SectionField shifted = translate(zero, c);
  SectionField hol = holomorphic_section(c, g);
  CHECK((shifted.field.values - hol.field.values).abs().maxCoeff() == 0.0);

  // a translated line passes through the translated points
  Rng rng(109);
  for (int i = 0; i < 20; ++i) {
    CenterPoint cc{Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(-1, 1)};
    OrientedLine line = north_line({rng.uniform(-1, 1), rng.uniform(-1, 1)},
                                   {rng.uniform(-1, 1), rng.uniform(-1, 1)});
    OrientedLine tl = translate(line, cc);
    Eigen::Vector3d p = line_to_point(line, 0.7);
    auto [eta_chk, r_chk] = point_to_line(p + cc.vec(), tl.xi);
    CHECK(std::abs(eta_chk - tl.eta) < 1e-13);
    (void)r_chk;
  }
}

TEST_CASE("sigma and r+rho are translation invariants") {
  auto g = make_grid(16);
  Rng rng(108);
  for (int i = 0; i < 20; ++i) {
    HarmonicSpectrum spec = mrcf_test::random_real_spectrum(8, rng, 0.4);
    SupportField r{sht_inverse_real(spec, g)};
    CenterPoint c{Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.uniform(-1, 1)};
    SupportField rt = translate(r, c);

    SlopeFields s = slopes(section_from_support(r));
    SlopeFields st = slopes(section_from_support(rt));
    CHECK((s.sigma.values - st.sigma.values).abs().maxCoeff() < 1e-10);
    ArrayXXd m0 = r.field.values + s.rho.values;
    ArrayXXd m1 = rt.field.values + st.rho.values;
    CHECK((m0 - m1).abs().maxCoeff() < 1e-10);
  }
}
