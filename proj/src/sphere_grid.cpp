#include "mrcf/sphere_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace mrcf {

void gauss_legendre(int n, ArrayXd& nodes, ArrayXd& weights) {
  nodes.resize(n);
  weights.resize(n);
  const int half = (n + 1) / 2;
  for (int k = 0; k < half; ++k) {
    // Newton on P_n with the usual Chebyshev-like initial guess.
    double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // recompute derivative at the converged node
    {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[n - 1 - k] = x;   // descending guess order -> ascending x
    nodes[k] = -x;
    weights[n - 1 - k] = wgt;
    weights[k] = wgt;
  }
}

void legendre_column(int l_max, double x, std::vector<ArrayXd>& out) {
  out.assign(l_max + 1, ArrayXd());
  const double sx = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
  double pmm = 1.0 / std::sqrt(kFourPi);
  for (int m = 0; m <= l_max; ++m) {
    ArrayXd& col = out[m];
    col.resize(l_max + 1 - m);
    col[0] = pmm;
    if (m + 1 <= l_max) col[1] = x * std::sqrt(2.0 * m + 3.0) * pmm;
    double a_prev = std::sqrt(2.0 * m + 3.0);
    for (int l = m + 2; l <= l_max; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      col[l - m] = a * (x * col[l - m - 1] - col[l - m - 2] / a_prev);
      a_prev = a;
    }
    // seed for next order, Condon-Shortley sign included
    pmm *= -std::sqrt((2.0 * m + 3.0) / (2.0 * m + 2.0)) * sx;
  }
}

GridPtr make_grid(int l_max) {
  if (l_max < 2)
    throw std::invalid_argument("make_grid: l_max must be >= 2");

  auto g = std::make_shared<SphereGrid>();
  g->l_max = l_max;
  g->n_theta = l_max + 1;
  g->n_phi = 2 * l_max + 2;

  ArrayXd x;
  gauss_legendre(g->n_theta, x, g->gl_weights);
  g->theta_nodes = x.reverse().unaryExpr([](double v) { return std::acos(v); });
  g->gl_weights = g->gl_weights.reverse().eval();  // match ascending theta

  g->phi_nodes.resize(g->n_phi);
  for (int k = 0; k < g->n_phi; ++k) g->phi_nodes[k] = 2.0 * kPi * k / g->n_phi;

  // Legendre and derivative tables, one column per colatitude node.
  g->plm.resize(l_max + 1);
  g->dplm.resize(l_max + 1);
  for (int m = 0; m <= l_max; ++m) {
    g->plm[m].resize(l_max + 1 - m, g->n_theta);
    g->dplm[m].resize(l_max + 1 - m, g->n_theta);
  }
  std::vector<ArrayXd> col;
  for (int j = 0; j < g->n_theta; ++j) {
    const double theta = g->theta_nodes[j];
    const double xj = std::cos(theta);
    const double sj = std::sin(theta);
    legendre_column(l_max, xj, col);
    for (int m = 0; m <= l_max; ++m) {
      for (int l = m; l <= l_max; ++l) {
        const double p = col[m][l - m];
        g->plm[m](l - m, j) = p;
        // d/dtheta \bar P_l^m = (l x \bar P_l^m - c_{lm} \bar P_{l-1}^m)/sin(theta)
        const double pm1 = (l - 1 >= m) ? col[m][l - 1 - m] : 0.0;
        const double c = (l > 0) ? std::sqrt((double(l) * l - double(m) * m) *
                                             (2.0 * l + 1.0) / (2.0 * l - 1.0))
                                 : 0.0;
        g->dplm[m](l - m, j) = (l * xj * p - c * pm1) / sj;
      }
    }
  }

  const int nm = 2 * l_max + 1;
  g->fourier_fwd.resize(g->n_phi, nm);
  g->fourier_syn.resize(nm, g->n_phi);
  const double scale = g->phi_step();
  for (int k = 0; k < g->n_phi; ++k) {
    for (int m = -l_max; m <= l_max; ++m) {
      const double ang = m * g->phi_nodes[k];
      g->fourier_fwd(k, m + l_max) = scale * Complex(std::cos(ang), -std::sin(ang));
      g->fourier_syn(m + l_max, k) = Complex(std::cos(ang), std::sin(ang));
    }
  }

  g->xi.resize(g->n_theta, g->n_phi);
  g->w.resize(g->n_theta, g->n_phi);
  g->nx.resize(g->n_theta, g->n_phi);
  g->ny.resize(g->n_theta, g->n_phi);
  g->nz.resize(g->n_theta, g->n_phi);
  g->cos_half_sq.resize(g->n_theta, g->n_phi);
  g->half_cot.resize(g->n_theta, g->n_phi);
  g->e_iphi.resize(g->n_theta, g->n_phi);
  for (int j = 0; j < g->n_theta; ++j) {
    const double theta = g->theta_nodes[j];
    const double t = std::tan(0.5 * theta);
    const double ch2 = std::cos(0.5 * theta) * std::cos(0.5 * theta);
    for (int k = 0; k < g->n_phi; ++k) {
      const double phi = g->phi_nodes[k];
      const Complex eip(std::cos(phi), std::sin(phi));
      g->xi(j, k) = t * eip;
      g->w(j, k) = 1.0 + t * t;
      g->nx(j, k) = std::sin(theta) * std::cos(phi);
      g->ny(j, k) = std::sin(theta) * std::sin(phi);
      g->nz(j, k) = std::cos(theta);
      g->cos_half_sq(j, k) = ch2;
      g->half_cot(j, k) = 1.0 / (2.0 * t);
      g->e_iphi(j, k) = eip;
    }
  }
  return g;
}

}  // namespace mrcf
