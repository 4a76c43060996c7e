#ifndef MRCF_LINE_SPACE_HPP
#define MRCF_LINE_SPACE_HPP

#include "mrcf/harmonics.hpp"

namespace mrcf {

/// A point of R^3 written as (x^1 + i x^2, x^3); also used for sphere centres.
struct CenterPoint {
  Complex alpha{0.0, 0.0};  // x^1 + i x^2
  double b = 0.0;           // x^3

  Eigen::Vector3d vec() const { return {alpha.real(), alpha.imag(), b}; }
  static CenterPoint from_vec(const Eigen::Vector3d& v) {
    return {Complex(v[0], v[1]), v[2]};
  }
};

/// One oriented line in the two-chart stereographic atlas of T S^2.
/// The north chart is xi = tan(theta/2) e^{i phi}; the south chart holds the
/// configuration rotated by pi about the x-axis, so the transition is
/// (xi, eta) -> (1/xi, -eta/xi^2) and coordinates stay bounded.
struct OrientedLine {
  enum class Chart { north, south };
  Chart chart = Chart::north;
  Complex xi{0.0, 0.0};
  Complex eta{0.0, 0.0};
};

/// Switch chart if |xi| has left the unit disc (with a small hysteresis).
OrientedLine normalize_chart(const OrientedLine& line);
OrientedLine to_chart(const OrientedLine& line, OrientedLine::Chart target);

/// Point at signed distance r along the line from its closest point to the origin.
Eigen::Vector3d line_to_point(const OrientedLine& line, double r);

/// Inverse of line_to_point for a given direction coordinate (north chart):
/// eta and the signed distance r of the point along that line.
std::pair<Complex, double> point_to_line(const Eigen::Vector3d& p, Complex xi);

/// Perpendicular distance of the line to the origin: 2|eta| / (1 + xi conj(xi)).
double perp_distance(const OrientedLine& line);

/// Unit direction vector of the line with coordinate xi in the given chart.
Eigen::Vector3d direction_vector(Complex xi, OrientedLine::Chart chart);

/// Support function r of a convex surface, sampled at line directions.
struct SupportField {
  ScalarField field;
};

/// Lagrangian (or general) section F of T S^2 -> S^2, sampled at directions.
struct SectionField {
  ComplexField field;
};

/// Complex slopes of a section: dbar F = -conj(sigma) and
/// (1+xi conj(xi))^2 partial(F / (1+xi conj(xi))^2) = rho + i lambda.
struct SlopeFields {
  ComplexField sigma;
  ScalarField rho;
  ScalarField lambda;
};

/// F = (1/2) (1 + xi conj(xi))^2 dbar r.
SectionField section_from_support(const SupportField& r);

/// Quadratic holomorphic section of the lines through a point:
/// F = (1/2)(alpha - 2 b xi - conj(alpha) xi^2).
SectionField holomorphic_section(const CenterPoint& c, GridPtr grid);

/// Complex slopes of a section (spectral, exact for band-limited sections).
SlopeFields slopes(const SectionField& F);

struct RadiiResult {
  ScalarField r1;  // larger radius of curvature
  ScalarField r2;  // smaller radius of curvature
  bool convex = true;
};

/// r_{1,2} = (r + rho) +/- |sigma|; flags a non-convex state when the smaller
/// radius crosses zero somewhere.
RadiiResult radii_of_curvature(const SupportField& r, const SlopeFields& s);

/// Translation taking the origin to c: r gains the support of the point c.
SupportField translate(const SupportField& r, const CenterPoint& c);
/// eta gains the quadratic holomorphic section of c.
SectionField translate(const SectionField& F, const CenterPoint& c);
OrientedLine translate(const OrientedLine& line, const CenterPoint& c);

/// Support values of the sphere |x - c| = radius: r = c.n + radius.
SupportField sphere_support(const CenterPoint& c, double radius, GridPtr grid);

/// Band-limited projection of the ellipsoid support sqrt(a^2 nx^2 + b^2 ny^2 + c^2 nz^2).
SupportField ellipsoid_support(double a, double b, double c, GridPtr grid);

}  // namespace mrcf

#endif
