#include "mrcf/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace mrcf {

namespace {

// Surface point over the poles from the spectrum of r: p = r n + grad r, where
// only the m = 0 and m = -1 modes survive in the limit.
Eigen::Vector3d apex_point(const HarmonicSpectrum& spec, bool north) {
  Complex a(0.0, 0.0);
  double z = 0.0;
  for (int l = 0; l <= spec.l_max; ++l) {
    // \bar P_l^0(+-1) and the theta-slope of the m = +-1 functions at the poles
    const double p0 = std::sqrt((2.0 * l + 1.0) / kFourPi) *
                      ((!north && (l & 1)) ? -1.0 : 1.0);
    z += (spec.at(l, 0) * p0).real();
    if (l >= 1) {
      double slope = 0.5 * std::sqrt((2.0 * l + 1.0) * l * (l + 1.0) / kFourPi);
      if (!north && !(l & 1)) slope = -slope;  // parity of P_l^1 about the equator
      a += spec.at(l, -1) * (north ? 2.0 * slope : -2.0 * slope);
    }
  }
  if (!north) z = -z;
  return {a.real(), a.imag(), z};
}

}  // namespace

SurfaceResult reconstruct_surface(const SupportField& r) {
  const GridPtr grid = r.field.grid;
  const SphereGrid& g = *grid;
  SurfaceResult out;

  SectionField F = section_from_support(r);
  SlopeFields s = slopes(F);
  RadiiResult radii = radii_of_curvature(r, s);
  out.convex = radii.convex;

  out.mesh.vertices.resize(g.n_nodes() + 2);
  for (int j = 0; j < g.n_theta; ++j)
    for (int k = 0; k < g.n_phi; ++k) {
      OrientedLine line{OrientedLine::Chart::north, g.xi(j, k), F.field.values(j, k)};
      out.mesh.vertices[j * g.n_phi + k] = line_to_point(line, r.field.values(j, k));
    }

  HarmonicSpectrum spec = sht_forward(r.field);
  out.north_apex = g.n_nodes();
  out.south_apex = g.n_nodes() + 1;
  out.mesh.vertices[out.north_apex] = apex_point(spec, true);
  out.mesh.vertices[out.south_apex] = apex_point(spec, false);

  auto vid = [&](int j, int k) { return j * g.n_phi + (k % g.n_phi); };
  for (int j = 0; j + 1 < g.n_theta; ++j)
    for (int k = 0; k < g.n_phi; ++k) {
      const int a = vid(j, k), b = vid(j + 1, k), c = vid(j + 1, k + 1), d = vid(j, k + 1);
      out.mesh.faces.push_back({a, b, c});
      out.mesh.faces.push_back({a, c, d});
    }
  for (int k = 0; k < g.n_phi; ++k) {
    out.mesh.faces.push_back({out.north_apex, vid(0, k), vid(0, k + 1)});
    out.mesh.faces.push_back({out.south_apex, vid(g.n_theta - 1, k + 1), vid(g.n_theta - 1, k)});
  }
  return out;
}

void write_obj(const TriangleMesh& mesh, std::ostream& os) {
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
    os << buf;
  }
  for (const auto& f : mesh.faces) {
    std::snprintf(buf, sizeof(buf), "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    os << buf;
  }
}

}  // namespace mrcf
