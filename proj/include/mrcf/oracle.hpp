#ifndef MRCF_ORACLE_HPP
#define MRCF_ORACLE_HPP

#include "mrcf/mesh.hpp"

namespace mrcf {
namespace oracle {

/// Uniform cell-centred latitude-longitude grid excluding the poles:
/// theta_i = (i + 1/2) pi / n_theta, phi_k = k 2 pi / n_phi.
struct LatLongGrid {
  int n_theta = 0;
  int n_phi = 0;
  double dtheta = 0.0;
  double dphi = 0.0;
  ArrayXd theta;
  ArrayXd phi;
};

LatLongGrid make_latlong(int n_theta, int n_phi);

/// 5-point finite-difference Laplace-Beltrami operator,
/// (1/sin)d_theta(sin d_theta .) + (1/sin^2) d_phi^2, O(h^2).
/// The flux form closes naturally at the poles (sin(0) = sin(pi) = 0).
ArrayXXd fd_laplacian(const LatLongGrid& g, const ArrayXXd& f);

/// Largest explicitly stable RK4 step for d/dt f = fd_laplacian(f) + c f.
double stable_dt(const LatLongGrid& g, double c);

/// Classical RK4 integration of the reaction-diffusion flow to time T.
/// Throws when dt exceeds the stability bound or when the solution norm
/// grows past the e^{(c+1)T} envelope (instability detection).
ArrayXXd timestep_flow(const LatLongGrid& g, const ArrayXXd& f0, double c,
                       double dt, double T);

/// Centre integrals by composite trapezoid rule on a fine lat-long grid
/// (>= 400 x 800 enforced); deliberately independent of the Gauss-Legendre
/// machinery.
CenterPoint quad_center(const LatLongGrid& g, const ArrayXXd& r);

struct MeshCurvatureSample {
  int vertex = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double r1 = 0.0;  // larger principal radius
  double r2 = 0.0;
};

struct MeshRadiiResult {
  std::vector<MeshCurvatureSample> samples;
  int skipped = 0;  // degenerate fits
};

/// Per-vertex principal radii by algebraic quadric fitting over the two-ring
/// neighbourhood.  Vertices with degenerate fits are skipped and counted.
MeshRadiiResult mesh_principal_radii(const TriangleMesh& mesh);

}  // namespace oracle
}  // namespace mrcf

#endif
