#include "mrcf/line_space.hpp"

#include <cmath>
#include <stdexcept>

namespace mrcf {

namespace {

const Complex kI(0.0, 1.0);

// Rotation by pi about the x-axis; conjugating by it realizes the chart switch.
Eigen::Vector3d flip_x(const Eigen::Vector3d& v) { return {v[0], -v[1], -v[2]}; }

Eigen::Vector3d phi_map(Complex xi, Complex eta, double r) {
  const Complex xb = std::conj(xi);
  const double s = std::norm(xi);
  const double w = 1.0 + s;
  const Complex a =
      (2.0 * (eta - std::conj(eta) * xi * xi) + 2.0 * xi * w * r) / (w * w);
  const double x3 =
      (-2.0 * (eta * xb + std::conj(eta) * xi).real() + (1.0 - s * s) * r) / (w * w);
  return {a.real(), a.imag(), x3};
}

}  // namespace

OrientedLine to_chart(const OrientedLine& line, OrientedLine::Chart target) {
  if (line.chart == target) return line;
  if (std::abs(line.xi) == 0.0)
    throw std::invalid_argument("chart switch undefined at xi = 0");
  OrientedLine out;
  out.chart = target;
  out.xi = 1.0 / line.xi;
  out.eta = -line.eta / (line.xi * line.xi);
  return out;
}

OrientedLine normalize_chart(const OrientedLine& line) {
  if (std::abs(line.xi) <= 1.0 + 1e-9) return line;
  return to_chart(line, line.chart == OrientedLine::Chart::north
                            ? OrientedLine::Chart::south
                            : OrientedLine::Chart::north);
}

Eigen::Vector3d line_to_point(const OrientedLine& line, double r) {
  Eigen::Vector3d p = phi_map(line.xi, line.eta, r);
  return line.chart == OrientedLine::Chart::north ? p : flip_x(p);
}

std::pair<Complex, double> point_to_line(const Eigen::Vector3d& p, Complex xi) {
  const Complex a(p[0], p[1]);
  const Complex ab = std::conj(a);
  const double x3 = p[2];
  const double s = std::norm(xi);
  const Complex eta = 0.5 * (a - 2.0 * x3 * xi - ab * xi * xi);
  const double r = ((a * std::conj(xi) + ab * xi).real() + x3 * (1.0 - s)) / (1.0 + s);
  return {eta, r};
}

double perp_distance(const OrientedLine& line) {
  return 2.0 * std::abs(line.eta) / (1.0 + std::norm(line.xi));
}

Eigen::Vector3d direction_vector(Complex xi, OrientedLine::Chart chart) {
  const double s = std::norm(xi);
  const double w = 1.0 + s;
  Eigen::Vector3d n(2.0 * xi.real() / w, 2.0 * xi.imag() / w, (1.0 - s) / w);
  return chart == OrientedLine::Chart::north ? n : flip_x(n);
}

SectionField section_from_support(const SupportField& r) {
  ComplexField d = dbar(r.field);
  SectionField F;
  F.field.grid = r.field.grid;
  F.field.values = 0.5 * r.field.grid->w.square().cast<Complex>() * d.values;
  return F;
}

SectionField holomorphic_section(const CenterPoint& c, GridPtr grid) {
  SectionField F;
  F.field.grid = grid;
  const auto& xi = grid->xi;
  F.field.values =
      0.5 * (c.alpha - 2.0 * c.b * xi - std::conj(c.alpha) * xi.square());
  return F;
}

SlopeFields slopes(const SectionField& F) {
  const GridPtr grid = F.field.grid;
  const auto wc = grid->w.cast<Complex>();
  // Band-limited representative G = F / W^2.
  ComplexField G;
  G.grid = grid;
  G.values = F.field.values / (wc * wc);

  SlopeFields out;
  ComplexField dF_rep = dbar_weighted(G, 2);  // dbar F = W^2 * dF_rep
  out.sigma.grid = grid;
  out.sigma.values = -(wc * wc * dF_rep.values).conjugate();

  ComplexField pg = partial(G);
  ArrayXXcd rho_lam = wc * wc * pg.values;  // rho + i lambda
  out.rho.grid = grid;
  out.rho.values = rho_lam.real();
  out.lambda.grid = grid;
  out.lambda.values = rho_lam.imag();
  return out;
}

RadiiResult radii_of_curvature(const SupportField& r, const SlopeFields& s) {
  RadiiResult out;
  ArrayXXd mean = r.field.values + s.rho.values;
  ArrayXXd astig = s.sigma.values.abs();
  out.r1.grid = r.field.grid;
  out.r2.grid = r.field.grid;
  out.r1.values = mean + astig;
  out.r2.values = mean - astig;
  out.convex = (out.r2.values > 0.0).all();
  return out;
}

SupportField translate(const SupportField& r, const CenterPoint& c) {
  const auto& g = *r.field.grid;
  SupportField out;
  out.field.grid = r.field.grid;
  ArrayXXcd num = c.alpha * g.xi.conjugate() + std::conj(c.alpha) * g.xi;
  out.field.values =
      r.field.values + (num.real() + c.b * (2.0 - g.w)) / g.w;
  return out;
}

SectionField translate(const SectionField& F, const CenterPoint& c) {
  SectionField shift = holomorphic_section(c, F.field.grid);
  SectionField out;
  out.field.grid = F.field.grid;
  out.field.values = F.field.values + shift.field.values;
  return out;
}

OrientedLine translate(const OrientedLine& line, const CenterPoint& c) {
  // In the south chart the translation vector appears rotated by pi about x.
  CenterPoint cc = c;
  if (line.chart == OrientedLine::Chart::south)
    cc = CenterPoint{std::conj(c.alpha), -c.b};
  OrientedLine out = line;
  out.eta += 0.5 * (cc.alpha - 2.0 * cc.b * line.xi - std::conj(cc.alpha) * line.xi * line.xi);
  return out;
}

SupportField sphere_support(const CenterPoint& c, double radius, GridPtr grid) {
  SupportField out;
  out.field.grid = grid;
  const auto& g = *grid;
  out.field.values =
      c.alpha.real() * g.nx + c.alpha.imag() * g.ny + c.b * g.nz + radius;
  return out;
}

SupportField ellipsoid_support(double a, double b, double c, GridPtr grid) {
  SupportField raw;
  raw.field.grid = grid;
  const auto& g = *grid;
  raw.field.values =
      (a * a * g.nx.square() + b * b * g.ny.square() + c * c * g.nz.square()).sqrt();
  // project to the grid band limit so field and spectrum agree
  return SupportField{sht_inverse_real(sht_forward(raw.field), grid)};
}

}  // namespace mrcf
