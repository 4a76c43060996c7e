#include "mrcf/harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace mrcf {

namespace {

const Complex kI(0.0, 1.0);

void check_field(const ComplexField& f) {
  if (!f.grid) throw std::invalid_argument("field has no grid");
  if (f.values.rows() != f.grid->n_theta || f.values.cols() != f.grid->n_phi)
    throw std::invalid_argument("field shape does not match grid");
}

ComplexField to_complex(const ScalarField& f) {
  ComplexField c;
  c.grid = f.grid;
  c.values = f.values.cast<Complex>();
  return c;
}

// Per-m coefficient block of a spectrum as a vector over l = |m|..L,
// including the (-1)^m sign that maps \bar P_l^{|m|} to the m < 0 basis.
Eigen::VectorXcd m_block(const HarmonicSpectrum& spec, int m) {
  const int am = std::abs(m);
  const double sign = (m < 0 && (am & 1)) ? -1.0 : 1.0;
  Eigen::VectorXcd b(spec.l_max + 1 - am);
  for (int l = am; l <= spec.l_max; ++l) b[l - am] = sign * spec.at(l, m);
  return b;
}

// Generic synthesis with a caller-selected theta table and per-m scaling.
ComplexField synth_impl(const HarmonicSpectrum& spec, GridPtr grid,
                        const std::vector<Eigen::MatrixXd>& table,
                        bool scale_by_im) {
  if (!grid) throw std::invalid_argument("synthesis: null grid");
  if (spec.l_max > grid->l_max)
    throw std::invalid_argument("synthesis: spectrum band limit exceeds grid");
  const int L = spec.l_max;
  const int Lg = grid->l_max;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(grid->n_theta, 2 * Lg + 1);
  for (int m = -L; m <= L; ++m) {
    const int am = std::abs(m);
    Eigen::VectorXcd b = m_block(spec, m);
    if (scale_by_im) b *= Complex(0.0, double(m));
    C.col(m + Lg) = table[am].topRows(L + 1 - am).transpose() * b;
  }
  ComplexField out;
  out.grid = grid;
  out.values = (C * grid->fourier_syn).array();
  return out;
}

}  // namespace

double HarmonicSpectrum::reality_defect() const {
  double worst = 0.0;
  for (int l = 0; l <= l_max; ++l)
    for (int m = 0; m <= l; ++m) {
      const double sign = (m & 1) ? -1.0 : 1.0;
      worst = std::max(worst, std::abs(std::conj(at(l, m)) - sign * at(l, -m)));
    }
  return worst;
}

HarmonicSpectrum sht_forward(const ComplexField& f) {
  check_field(f);
  const SphereGrid& g = *f.grid;
  const int L = g.l_max;
  Eigen::MatrixXcd fm = f.values.matrix() * g.fourier_fwd;  // n_theta x (2L+1)
  fm.array().colwise() *= g.gl_weights.array();
  HarmonicSpectrum spec(L);
  for (int m = -L; m <= L; ++m) {
    const int am = std::abs(m);
    const double sign = (m < 0 && (am & 1)) ? -1.0 : 1.0;
    Eigen::VectorXcd bm = g.plm[am] * fm.col(m + L);
    for (int l = am; l <= L; ++l) spec.at(l, m) = sign * bm[l - am];
  }
  return spec;
}

HarmonicSpectrum sht_forward(const ScalarField& f) { return sht_forward(to_complex(f)); }

ComplexField sht_inverse(const HarmonicSpectrum& spec, GridPtr grid) {
  return synth_impl(spec, grid, grid->plm, false);
}

ScalarField sht_inverse_real(const HarmonicSpectrum& spec, GridPtr grid) {
  ComplexField c = sht_inverse(spec, grid);
  ScalarField out;
  out.grid = grid;
  out.values = c.values.real();
  return out;
}

HarmonicSpectrum laplacian(const HarmonicSpectrum& spec) {
  HarmonicSpectrum out(spec.l_max);
  for (int l = 0; l <= spec.l_max; ++l) {
    const double e = -double(l) * (l + 1);
    for (int m = -l; m <= l; ++m) out.at(l, m) = e * spec.at(l, m);
  }
  return out;
}

double spherical_area(const ScalarField& f) {
  const SphereGrid& g = *f.grid;
  return (f.values.rowwise().sum() * g.gl_weights).sum() * g.phi_step();
}

Complex spherical_area(const ComplexField& f) {
  const SphereGrid& g = *f.grid;
  Complex acc(0.0, 0.0);
  for (int j = 0; j < g.n_theta; ++j) {
    Complex row(0.0, 0.0);
    for (int k = 0; k < g.n_phi; ++k) row += f.values(j, k);
    acc += g.gl_weights[j] * row;
  }
  return acc * g.phi_step();
}

Complex evaluate_spectrum(const HarmonicSpectrum& spec, double theta, double phi) {
  std::vector<ArrayXd> col;
  legendre_column(spec.l_max, std::cos(theta), col);
  Complex acc(0.0, 0.0);
  for (int m = -spec.l_max; m <= spec.l_max; ++m) {
    const int am = std::abs(m);
    const double sign = (m < 0 && (am & 1)) ? -1.0 : 1.0;
    Complex part(0.0, 0.0);
    for (int l = am; l <= spec.l_max; ++l) part += spec.at(l, m) * (sign * col[am][l - am]);
    acc += part * std::polar(1.0, m * phi);
  }
  return acc;
}

ComplexField synth_dtheta(const HarmonicSpectrum& spec, GridPtr grid) {
  return synth_impl(spec, grid, grid->dplm, false);
}

ComplexField synth_dphi(const HarmonicSpectrum& spec, GridPtr grid) {
  return synth_impl(spec, grid, grid->plm, true);
}

ComplexField dbar(const ComplexField& f) {
  check_field(f);
  HarmonicSpectrum spec = sht_forward(f);
  ComplexField vt = synth_dtheta(spec, f.grid);
  ComplexField vp = synth_dphi(spec, f.grid);
  ComplexField out;
  out.grid = f.grid;
  out.values = f.grid->e_iphi *
               (f.grid->cos_half_sq.cast<Complex>() * vt.values +
                kI * f.grid->half_cot.cast<Complex>() * vp.values);
  return out;
}

ComplexField dbar(const ScalarField& f) { return dbar(to_complex(f)); }

ComplexField partial(const ComplexField& f) {
  check_field(f);
  HarmonicSpectrum spec = sht_forward(f);
  ComplexField vt = synth_dtheta(spec, f.grid);
  ComplexField vp = synth_dphi(spec, f.grid);
  ComplexField out;
  out.grid = f.grid;
  out.values = f.grid->e_iphi.conjugate() *
               (f.grid->cos_half_sq.cast<Complex>() * vt.values -
                kI * f.grid->half_cot.cast<Complex>() * vp.values);
  return out;
}

ComplexField partial(const ScalarField& f) { return partial(to_complex(f)); }

ComplexField dbar_weighted(const ComplexField& T, int p) {
  ComplexField dT = dbar(T);
  ComplexField out;
  out.grid = T.grid;
  const auto& g = *T.grid;
  out.values = (double(p) * g.xi * T.values + g.w.cast<Complex>() * dT.values) /
               g.w.cast<Complex>();
  return out;
}

ComplexField partial_weighted(const ComplexField& T, int p) {
  ComplexField dT = partial(T);
  ComplexField out;
  out.grid = T.grid;
  const auto& g = *T.grid;
  out.values = (double(p) * g.xi.conjugate() * T.values +
                g.w.cast<Complex>() * dT.values) /
               g.w.cast<Complex>();
  return out;
}

ComplexField laplacian_weighted_values(const ComplexField& T, int p) {
  ComplexField t1 = dbar_weighted(T, p);
  ComplexField t2 = partial_weighted(t1, p);
  ComplexField out;
  out.grid = T.grid;
  const auto& g = *T.grid;
  ArrayXXd wp = g.w.pow(double(p) + 2.0);
  out.values = wp.cast<Complex>() * t2.values;
  return out;
}

}  // namespace mrcf
