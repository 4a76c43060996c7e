#ifndef MRCF_SPHERE_GRID_HPP
#define MRCF_SPHERE_GRID_HPP

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace mrcf {

using Complex = std::complex<double>;
using Eigen::ArrayXd;
using Eigen::ArrayXXcd;
using Eigen::ArrayXXd;

constexpr double kPi = 3.14159265358979323846;
constexpr double kFourPi = 4.0 * kPi;

/// Gauss-Legendre x uniform-longitude quadrature grid on S^2.
///
/// Colatitude nodes are the roots of P_{n_theta}, so no node sits on a pole,
/// and the weights are the standard Gauss-Legendre weights on [-1,1]
/// (sum over nodes of gl_weight * 2*pi/n_phi = 4*pi).  The grid is exact for
/// spherical polynomials of degree <= l_max and carries the tables used by
/// the transforms: normalized associated Legendre values, their colatitude
/// derivatives, and Fourier phase matrices for the longitude direction.
struct SphereGrid {
  int l_max = 0;
  int n_theta = 0;
  int n_phi = 0;

  ArrayXd theta_nodes;  // colatitudes in (0, pi), ascending
  ArrayXd gl_weights;   // weights on x = cos(theta); sum = 2
  ArrayXd phi_nodes;    // 2*pi*k/n_phi

  // plm[m] is (l_max+1-m) x n_theta with row l-m holding \bar P_l^m(cos theta_j),
  // orthonormal over S^2 and carrying the Condon-Shortley sign.  dplm is d/dtheta.
  std::vector<Eigen::MatrixXd> plm;
  std::vector<Eigen::MatrixXd> dplm;

  Eigen::MatrixXcd fourier_fwd;  // n_phi x (2 l_max+1), exp(-i m phi) * (2 pi / n_phi)
  Eigen::MatrixXcd fourier_syn;  // (2 l_max+1) x n_phi, exp(+i m phi)

  // Chart caches for the stereographic coordinate xi = tan(theta/2) e^{i phi}.
  ArrayXXcd xi;           // n_theta x n_phi
  ArrayXXd w;             // 1 + xi conj(xi)
  ArrayXXd nx, ny, nz;    // direction vector per node
  ArrayXXd cos_half_sq;   // cos^2(theta/2)
  ArrayXXd half_cot;      // 1 / (2 tan(theta/2))
  ArrayXXcd e_iphi;       // e^{i phi}

  double phi_step() const { return 2.0 * kPi / n_phi; }
  int n_nodes() const { return n_theta * n_phi; }
};

using GridPtr = std::shared_ptr<const SphereGrid>;

/// Build the default grid for band limit l_max: n_theta = l_max+1 Gauss-Legendre
/// colatitudes, n_phi = 2*l_max+2 longitudes.  Rejects l_max < 2.
GridPtr make_grid(int l_max);

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
void gauss_legendre(int n, ArrayXd& nodes, ArrayXd& weights);

/// Orthonormal associated Legendre values \bar P_l^m(x) for a single x,
/// all 0 <= m <= l <= l_max, Condon-Shortley phase.  out[m] has length l_max+1-m.
void legendre_column(int l_max, double x, std::vector<ArrayXd>& out);

/// Real field sampled on a SphereGrid.
struct ScalarField {
  GridPtr grid;
  ArrayXXd values;  // n_theta x n_phi
};

/// Complex field sampled on a SphereGrid.
struct ComplexField {
  GridPtr grid;
  ArrayXXcd values;
};

inline ScalarField make_scalar_field(GridPtr g) {
  return ScalarField{g, ArrayXXd::Zero(g->n_theta, g->n_phi)};
}
inline ComplexField make_complex_field(GridPtr g) {
  return ComplexField{g, ArrayXXcd::Zero(g->n_theta, g->n_phi)};
}

}  // namespace mrcf

#endif
