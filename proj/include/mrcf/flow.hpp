#ifndef MRCF_FLOW_HPP
#define MRCF_FLOW_HPP

#include <optional>
#include <string>
#include <vector>

#include "mrcf/line_space.hpp"

namespace mrcf {

/// Spectral state of the flow at time t.  The support potential r and the
/// imaginary potential s define the section F = (1/2) W^2 dbar(r + i s);
/// s is zero for Lagrangian data.  Both spectra satisfy the real-field
/// reality condition.
struct FlowState {
  double t = 0.0;
  HarmonicSpectrum r_spec;
  HarmonicSpectrum s_spec;
  int l_max = 0;
  double lambda_coeff = -2.0;  // reaction coefficient of the imaginary potential
};

FlowState make_flow_state(const HarmonicSpectrum& r0,
                          const HarmonicSpectrum* s0 = nullptr,
                          double lambda_coeff = -2.0);

/// Exact mode-wise solution of (d/dt - Laplacian) f = c f over duration t >= 0:
/// B_lm -> B_lm * exp([c - l(l+1)] t).
HarmonicSpectrum evolve_scalar(const HarmonicSpectrum& spec0, double c, double t);

/// Advance the state to absolute time t >= state.t: support potential with
/// reaction 2, imaginary potential with the state's lambda coefficient.
FlowState evolve_support(const FlowState& state, double t);

/// Prop-5 style evolution of a lambda spectrum, reaction coeff (default -2).
HarmonicSpectrum evolve_lambda(const HarmonicSpectrum& lambda0, double t,
                               double coeff = -2.0);

/// Support values of the state on a grid (grid capacity >= state band limit).
ScalarField support_at(const FlowState& state, GridPtr grid);

/// Section of the state's potentials on a grid.  The values are exact when
/// the grid capacity exceeds the state band limit by at least one degree.
SectionField section_at(const FlowState& state, GridPtr grid);

struct CenterExtraction {
  CenterPoint quadrature;  // direct integrals of r against the l=1 kernels
  CenterPoint spectral;    // recovered from the l=1 modes of rho
  double disagreement = 0.0;
};

/// Both centre routes.  The quadrature route integrates r sin^2(theta) e^{i phi}
/// and r sin(theta) cos(theta); the spectral route reads the l=1 modes of the
/// slope rho.  Requires the field's data band to sit two degrees below the
/// grid capacity for the rho route to be alias-free in its l=1 modes (the
/// Gauss-Legendre rules keep low modes exact even on a tight grid).
CenterExtraction extract_center_detail(const SupportField& r);

/// Centre of the limiting round sphere.  Throws std::runtime_error when the
/// two routes disagree by more than 1e-8 (a convention bug, not a data error).
CenterPoint extract_center(const SupportField& r);

/// Mean of r over the sphere: the radius of the limit of the rescaled flow.
double rescaled_limit_radius(const SupportField& r0);

enum class AreaFate { Converges, BlowsUp };

struct DichotomyResult {
  AreaFate fate = AreaFate::Converges;
  double growth_constant = 0.0;  // C with |f_t| >= C e^t, 0 for converging data
};

/// Converges iff the spherical area of f0 vanishes (within
/// 1e-10 * max|f0| * 4 pi); otherwise fits the exponential lower bound.
DichotomyResult area_dichotomy(const ScalarField& f0);

enum class ResidualKind {
  support,       // (dt - Lap) r = 2 r
  chi2,          // (dt - Lap) chi^2 = 2 chi^2 - 4 (rho^2 + |sigma|^2)
  section_A,     // (dt - Lap) F = -2 conj(xi)/(1+xi conj(xi)) dbar F
  section_B,     // (dt - Lap) F = -2 conj(xi) (1+xi conj(xi)) dbar F
  rho,           // (dt - Lap) rho = 2 rho
  lambda_minus,  // (dt - Lap) lambda = -2 lambda
  lambda_plus,   // (dt - Lap) lambda = +2 lambda
  sigma,         // (dt - Lap) sigma = -2(1+2 xi conj(xi)) sigma
                 //            + 2(1+xi conj(xi)) (conj(xi) dbar sigma - xi partial sigma)
};

/// Max-norm residual of the named evolution equation at absolute time t.
/// The time derivative is a centred difference of exactly evolved states;
/// spatial terms are evaluated spectrally on a grid oversampled to twice the
/// state band limit.  Section and sigma residuals are measured in the bounded
/// trivialization (divided by W^2), since their chart values grow towards the
/// south pole.
double pde_residual(ResidualKind kind, const FlowState& state, double t,
                    double dt = 1e-4);

struct FlowTimeSample {
  double t = 0.0;
  double area = 0.0;
  double sup_lambda = 0.0;
  CenterPoint center;
  double f_dist_c0 = 0.0;  // sup |F_t - F_inf|
  double f_dist_c2 = 0.0;  // sup over the field and its first/second derivatives
  bool convex = true;
};

struct ResidualTable {
  double support = 0.0, chi2 = 0.0, section_a = 0.0, section_b = 0.0;
  double rho = 0.0, lambda_minus = 0.0, lambda_plus = 0.0, sigma = 0.0;
  std::string preferred_section_variant;  // "A", "B", "both-small", "inconclusive"
  std::string preferred_lambda_sign;      // "minus", "plus", "degenerate"
};

struct FlowReport {
  std::vector<FlowTimeSample> samples;
  ResidualTable residuals;
  double residual_time = 0.0;
  double fitted_c0_exponent;      // NaN when not computable
  double fitted_c2_exponent;
  double fitted_lambda_exponent;
  CenterPoint center0;            // from t=0 data only
  double r00 = 0.0;
  bool convex_throughout = true;
  double route_disagreement = 0.0;
  bool route_agreement = true;
};

/// Run the flow from r0 (and optional imaginary potential s0) and record the
/// convergence diagnostics at the sampled times.  F_inf is the holomorphic
/// section of the centre extracted from the t=0 data only.
FlowReport convergence_report(const SupportField& r0,
                              const HarmonicSpectrum* s0,
                              const std::vector<double>& times,
                              double lambda_coeff = -2.0);

}  // namespace mrcf

#endif
