#ifndef MRCF_MESH_HPP
#define MRCF_MESH_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include "mrcf/line_space.hpp"

namespace mrcf {

/// Triangle mesh with counterclockwise (outward) face orientation.
struct TriangleMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;
};

struct SurfaceResult {
  TriangleMesh mesh;
  bool convex = true;
  // vertex index of grid node (j,k) is j*n_phi + k; the two fan apexes follow
  int north_apex = 0;
  int south_apex = 0;
};

/// Rebuild the surface from its support function: one vertex per grid node at
/// the point of the normal line (xi, F(xi)) at distance r(xi), quad-split
/// triangulation with two polar fans.  Non-convexity is flagged, not fatal.
SurfaceResult reconstruct_surface(const SupportField& r);

/// Write v/f records, 17 significant digits.
void write_obj(const TriangleMesh& mesh, std::ostream& os);

}  // namespace mrcf

#endif
