#ifndef MRCF_HARMONICS_HPP
#define MRCF_HARMONICS_HPP

#include "mrcf/sphere_grid.hpp"

namespace mrcf {

/// Coefficients B_lm of a field in the orthonormal complex spherical-harmonic
/// basis with Condon-Shortley phase, 0 <= l <= l_max, -l <= m <= l.
/// A real-valued field satisfies conj(B_lm) = (-1)^m B_{l,-m}.
struct HarmonicSpectrum {
  int l_max = 0;
  Eigen::VectorXcd coeffs;  // (l_max+1)^2 entries, index l*l + l + m

  HarmonicSpectrum() = default;
  explicit HarmonicSpectrum(int L)
      : l_max(L), coeffs(Eigen::VectorXcd::Zero((L + 1) * (L + 1))) {}

  Complex& at(int l, int m) { return coeffs[l * l + l + m]; }
  Complex at(int l, int m) const { return coeffs[l * l + l + m]; }

  /// Max violation of the real-field symmetry conj(B_lm) = (-1)^m B_{l,-m}.
  double reality_defect() const;
};

/// Forward transform: B_lm = sum over nodes of f * conj(Y_l^m) * w dA.
/// Exact for fields band-limited to the grid's l_max.
HarmonicSpectrum sht_forward(const ComplexField& f);
HarmonicSpectrum sht_forward(const ScalarField& f);

/// Pointwise synthesis sum B_lm Y_l^m on the given grid.
/// Requires spec.l_max <= grid->l_max.
ComplexField sht_inverse(const HarmonicSpectrum& spec, GridPtr grid);
/// Synthesis of a real-symmetric spectrum; imaginary part is discarded.
ScalarField sht_inverse_real(const HarmonicSpectrum& spec, GridPtr grid);

/// Spectral Laplace-Beltrami operator: B_lm -> -l(l+1) B_lm.
HarmonicSpectrum laplacian(const HarmonicSpectrum& spec);

/// Integral of the field over S^2 (equals 2 sqrt(pi) B_00).
double spherical_area(const ScalarField& f);
Complex spherical_area(const ComplexField& f);

/// Evaluate a spectrum at an arbitrary point (works at the poles).
Complex evaluate_spectrum(const HarmonicSpectrum& spec, double theta, double phi);

// Synthesis of the colatitude / longitude derivatives of a spectrum.
ComplexField synth_dtheta(const HarmonicSpectrum& spec, GridPtr grid);
ComplexField synth_dphi(const HarmonicSpectrum& spec, GridPtr grid);

/// d/d conj(xi) in the chart xi = tan(theta/2) e^{i phi}, computed spectrally:
/// dbar = e^{i phi} [cos^2(theta/2) d_theta + i/(2 tan(theta/2)) d_phi].
/// Exact when the input is band-limited one degree below the grid capacity.
ComplexField dbar(const ComplexField& f);
ComplexField dbar(const ScalarField& f);

/// d/d xi, the conjugate chart derivative of dbar.
ComplexField partial(const ComplexField& f);
ComplexField partial(const ScalarField& f);

// ---------------------------------------------------------------------------
// Weighted fields X = (1+xi conj(xi))^p * T with band-limited T.
//
// Sections and their slopes blow up at the south pole in the north chart; they
// stay in this class, which is closed under the chart derivatives:
//   dbar X    = W^p * [ (p xi T + W dbar T) / W ]
//   partial X = W^p * [ (p conj(xi) T + W partial T) / W ]
// and the bracket is again band-limited (one degree higher).
// ---------------------------------------------------------------------------

/// Representative of dbar(W^p T): returns T' with dbar X = W^p T'.
ComplexField dbar_weighted(const ComplexField& T, int p);
/// Representative of partial(W^p T): returns T' with partial X = W^p T'.
ComplexField partial_weighted(const ComplexField& T, int p);
/// Chart values of the Laplacian of X = W^p T:  Delta X = W^{p+2} * T''
/// with T'' = partial_weighted(dbar_weighted(T)).
ComplexField laplacian_weighted_values(const ComplexField& T, int p);

}  // namespace mrcf

#endif
