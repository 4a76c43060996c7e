#include "mrcf/flow.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mrcf {

namespace {

const Complex kI(0.0, 1.0);
constexpr double kRouteTol = 1e-8;

HarmonicSpectrum advance(const HarmonicSpectrum& spec, double c, double dt) {
  HarmonicSpectrum out(spec.l_max);
  for (int l = 0; l <= spec.l_max; ++l) {
    const double f = std::exp((c - double(l) * (l + 1)) * dt);
    for (int m = -l; m <= l; ++m) out.at(l, m) = f * spec.at(l, m);
  }
  return out;
}

FlowState advance_state(const FlowState& state, double t) {
  FlowState out = state;
  out.t = t;
  out.r_spec = advance(state.r_spec, 2.0, t - state.t);
  out.s_spec = advance(state.s_spec, state.lambda_coeff, t - state.t);
  return out;
}

// Band-limited representative G = F / W^2 = (1/2) dbar(r + i s) of the state section.
ComplexField section_rep(const FlowState& state, GridPtr grid) {
  ComplexField u;
  u.grid = grid;
  u.values = sht_inverse(state.r_spec, grid).values +
             kI * sht_inverse(state.s_spec, grid).values;
  // the potentials carry the real-field symmetry, so r is the real part
  ComplexField g = dbar(u);
  g.values *= 0.5;
  return g;
}

struct SlopeValues {
  ArrayXXcd sigma;
  ArrayXXd rho;
  ArrayXXd lambda;
};

SlopeValues slopes_from_rep(const ComplexField& G) {
  const auto& g = *G.grid;
  const auto wc = g.w.cast<Complex>();
  SlopeValues out;
  out.sigma = -(wc * wc * dbar_weighted(G, 2).values).conjugate();
  ArrayXXcd rl = wc * wc * partial(G).values;
  out.rho = rl.real();
  out.lambda = rl.imag();
  return out;
}

double max_abs(const ArrayXXcd& a) { return a.abs().maxCoeff(); }
double max_abs(const ArrayXXd& a) { return a.abs().maxCoeff(); }

// Least-squares slope of log(values) against t; NaN when fewer than two
// usable samples.
double fit_log_slope(const std::vector<double>& ts, const std::vector<double>& vs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (!(vs[i] > 0.0)) continue;
    const double y = std::log(vs[i]);
    sx += ts[i];
    sy += y;
    sxx += ts[i] * ts[i];
    sxy += ts[i] * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double det = n * sxx - sx * sx;
  if (det == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / det;
}

}  // namespace

FlowState make_flow_state(const HarmonicSpectrum& r0, const HarmonicSpectrum* s0,
                          double lambda_coeff) {
  FlowState st;
  st.t = 0.0;
  st.l_max = r0.l_max;
  st.r_spec = r0;
  st.s_spec = s0 ? *s0 : HarmonicSpectrum(r0.l_max);
  if (st.s_spec.l_max != r0.l_max) {
    HarmonicSpectrum padded(r0.l_max);
    const int L = std::min(st.s_spec.l_max, r0.l_max);
    for (int l = 0; l <= L; ++l)
      for (int m = -l; m <= l; ++m) padded.at(l, m) = st.s_spec.at(l, m);
    st.s_spec = padded;
  }
  st.lambda_coeff = lambda_coeff;
  return st;
}

HarmonicSpectrum evolve_scalar(const HarmonicSpectrum& spec0, double c, double t) {
  if (t < 0.0) throw std::invalid_argument("evolve_scalar: t must be >= 0");
  return advance(spec0, c, t);
}

FlowState evolve_support(const FlowState& state, double t) {
  if (t < state.t) throw std::invalid_argument("evolve_support: t must be >= state.t");
  return advance_state(state, t);
}

HarmonicSpectrum evolve_lambda(const HarmonicSpectrum& lambda0, double t, double coeff) {
  if (t < 0.0) throw std::invalid_argument("evolve_lambda: t must be >= 0");
  return advance(lambda0, coeff, t);
}

ScalarField support_at(const FlowState& state, GridPtr grid) {
  return sht_inverse_real(state.r_spec, grid);
}

SectionField section_at(const FlowState& state, GridPtr grid) {
  ComplexField g = section_rep(state, grid);
  SectionField F;
  F.field.grid = grid;
  F.field.values = grid->w.square().cast<Complex>() * g.values;
  return F;
}

CenterExtraction extract_center_detail(const SupportField& r) {
  const auto& g = *r.field.grid;
  // quadrature route: x^1 + i x^2 = (3/4pi) Int r sin(theta) e^{i phi} dA,
  // x^3 = (3/4pi) Int r cos(theta) dA
  ScalarField fx{r.field.grid, r.field.values * g.nx};
  ScalarField fy{r.field.grid, r.field.values * g.ny};
  ScalarField fz{r.field.grid, r.field.values * g.nz};
  const double scale = 3.0 / kFourPi;
  CenterExtraction out;
  out.quadrature.alpha =
      scale * Complex(spherical_area(fx), spherical_area(fy));
  out.quadrature.b = scale * spherical_area(fz);

  // spectral route through the slopes of the section of r
  SectionField F = section_from_support(r);
  SlopeFields s = slopes(F);
  HarmonicSpectrum rho_spec = sht_forward(s.rho);
  out.spectral.alpha = -std::sqrt(3.0 / (2.0 * kPi)) * rho_spec.at(1, -1);
  out.spectral.b = -std::sqrt(3.0 / kFourPi) * rho_spec.at(1, 0).real();

  out.disagreement = std::max(
      std::abs(out.quadrature.alpha - out.spectral.alpha),
      std::abs(out.quadrature.b - out.spectral.b));
  return out;
}

CenterPoint extract_center(const SupportField& r) {
  CenterExtraction e = extract_center_detail(r);
  if (e.disagreement > kRouteTol)
    throw std::runtime_error("extract_center: quadrature and spectral routes disagree");
  return e.quadrature;
}

double rescaled_limit_radius(const SupportField& r0) {
  return spherical_area(r0.field) / kFourPi;
}

DichotomyResult area_dichotomy(const ScalarField& f0) {
  DichotomyResult out;
  const double area = spherical_area(f0);
  const double tol = 1e-10 * max_abs(f0.values) * kFourPi;
  if (std::abs(area) <= tol) {
    out.fate = AreaFate::Converges;
    out.growth_constant = 0.0;
    return out;
  }
  out.fate = AreaFate::BlowsUp;
  HarmonicSpectrum spec = sht_forward(f0);
  double c = std::numeric_limits<double>::infinity();
  for (double t : {0.5, 1.0, 1.5, 2.0}) {
    ScalarField ft = sht_inverse_real(advance(spec, 2.0, t), f0.grid);
    c = std::min(c, ft.values.abs().minCoeff() * std::exp(-t));
  }
  out.growth_constant = c;
  return out;
}

double pde_residual(ResidualKind kind, const FlowState& state, double t, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("pde_residual: dt must be positive");
  GridPtr grid = make_grid(2 * state.l_max + 6);
  const auto& g = *grid;
  const auto wc = g.w.cast<Complex>();

  const FlowState st = advance_state(state, t);
  const FlowState stp = advance_state(state, t + dt);
  const FlowState stm = advance_state(state, t - dt);
  const double inv2dt = 0.5 / dt;

  switch (kind) {
    case ResidualKind::support: {
      ArrayXXd rp = support_at(stp, grid).values;
      ArrayXXd rm = support_at(stm, grid).values;
      ArrayXXd rt = support_at(st, grid).values;
      ArrayXXd lap = sht_inverse_real(laplacian(st.r_spec), grid).values;
      return max_abs(((rp - rm) * inv2dt - lap - 2.0 * rt).eval());
    }
    case ResidualKind::rho:
    case ResidualKind::lambda_minus:
    case ResidualKind::lambda_plus: {
      SlopeValues sp = slopes_from_rep(section_rep(stp, grid));
      SlopeValues sm = slopes_from_rep(section_rep(stm, grid));
      SlopeValues sc = slopes_from_rep(section_rep(st, grid));
      const bool is_rho = kind == ResidualKind::rho;
      ArrayXXd qp = is_rho ? sp.rho : sp.lambda;
      ArrayXXd qm = is_rho ? sm.rho : sm.lambda;
      ArrayXXd qc = is_rho ? sc.rho : sc.lambda;
      ScalarField qf{grid, qc};
      ArrayXXd lap = sht_inverse_real(laplacian(sht_forward(qf)), grid).values;
      const double coeff = is_rho ? 2.0 : (kind == ResidualKind::lambda_minus ? -2.0 : 2.0);
      return max_abs(((qp - qm) * inv2dt - lap - coeff * qc).eval());
    }
    case ResidualKind::section_A:
    case ResidualKind::section_B: {
      ComplexField gp = section_rep(stp, grid);
      ComplexField gm = section_rep(stm, grid);
      ComplexField gc = section_rep(st, grid);
      ArrayXXcd dFdt = wc * wc * (gp.values - gm.values) * inv2dt;
      ArrayXXcd lapF = laplacian_weighted_values(gc, 2).values;
      ArrayXXcd dbarF = wc * wc * dbar_weighted(gc, 2).values;
      ArrayXXcd rhs;
      if (kind == ResidualKind::section_A)
        rhs = (-2.0 * g.xi.conjugate() / wc) * dbarF;
      else
        rhs = (-2.0 * g.xi.conjugate() * wc) * dbarF;
      // measured in the bounded trivialization F / W^2
      return max_abs(((dFdt - lapF - rhs) / (wc * wc)).eval());
    }
    case ResidualKind::sigma: {
      ComplexField gp = section_rep(stp, grid);
      ComplexField gm = section_rep(stm, grid);
      ComplexField gc = section_rep(st, grid);
      auto sigma_rep = [&](const ComplexField& rep) {
        ComplexField ts;
        ts.grid = grid;
        ts.values = -dbar_weighted(rep, 2).values.conjugate();
        return ts;  // sigma = W^2 * ts
      };
      ComplexField tsp = sigma_rep(gp);
      ComplexField tsm = sigma_rep(gm);
      ComplexField tsc = sigma_rep(gc);
      ArrayXXcd dsdt = wc * wc * (tsp.values - tsm.values) * inv2dt;
      ArrayXXcd lap = laplacian_weighted_values(tsc, 2).values;
      ArrayXXcd sig = wc * wc * tsc.values;
      ArrayXXcd dbar_s = wc * wc * dbar_weighted(tsc, 2).values;
      ArrayXXcd part_s = wc * wc * partial_weighted(tsc, 2).values;
      ArrayXXcd rhs = -2.0 * (2.0 * g.w - 1.0).cast<Complex>() * sig +
                      2.0 * wc * (g.xi.conjugate() * dbar_s - g.xi * part_s);
      return max_abs(((dsdt - lap - rhs) / (wc * wc)).eval());
    }
    case ResidualKind::chi2: {
      auto chi2_rep = [&](const FlowState& s) {
        ComplexField rep = section_rep(s, grid);
        ComplexField tchi;
        tchi.grid = grid;
        tchi.values = 4.0 * rep.values * rep.values.conjugate();
        return tchi;  // chi^2 = W^2 * tchi, tchi real-valued
      };
      ComplexField tp = chi2_rep(stp);
      ComplexField tm = chi2_rep(stm);
      ComplexField tc = chi2_rep(st);
      ArrayXXd chi = (g.w.cast<Complex>() * g.w.cast<Complex>() * tc.values).real();
      ArrayXXd dchidt = (wc * wc * (tp.values - tm.values) * inv2dt).real();
      ArrayXXd lap = laplacian_weighted_values(tc, 2).values.real();
      SlopeValues sc = slopes_from_rep(section_rep(st, grid));
      ArrayXXd rhs =
          2.0 * chi - 4.0 * (sc.rho.square() + sc.sigma.abs2());
      return max_abs((dchidt - lap - rhs).eval());
    }
  }
  throw std::logic_error("pde_residual: unknown kind");
}

FlowReport convergence_report(const SupportField& r0, const HarmonicSpectrum* s0,
                              const std::vector<double>& times, double lambda_coeff) {
  for (size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]))
      throw std::invalid_argument("convergence_report: times must be ascending");
  if (!times.empty() && times.front() < 0.0)
    throw std::invalid_argument("convergence_report: times must be >= 0");

  FlowReport rep;
  rep.fitted_c0_exponent = std::numeric_limits<double>::quiet_NaN();
  rep.fitted_c2_exponent = std::numeric_limits<double>::quiet_NaN();
  rep.fitted_lambda_exponent = std::numeric_limits<double>::quiet_NaN();

  const int L = r0.field.grid->l_max;
  GridPtr grid = make_grid(L + 6);

  HarmonicSpectrum r0_spec = sht_forward(r0.field);
  FlowState state = make_flow_state(r0_spec, s0, lambda_coeff);

  CenterExtraction c0 = extract_center_detail(r0);
  rep.center0 = c0.quadrature;
  rep.route_disagreement = c0.disagreement;
  rep.route_agreement = c0.disagreement <= kRouteTol;
  rep.r00 = rescaled_limit_radius(r0);

  SectionField f_inf = holomorphic_section(rep.center0, grid);
  ComplexField g_inf;
  g_inf.grid = grid;
  g_inf.values = f_inf.field.values / grid->w.square().cast<Complex>();

  const auto wc = grid->w.cast<Complex>();
  std::vector<double> ts, c0s, c2s, lams;
  for (double t : times) {
    FlowState st = advance_state(state, t);
    FlowTimeSample sample;
    sample.t = t;

    ScalarField rt = support_at(st, grid);
    sample.area = spherical_area(rt);

    CenterExtraction ce = extract_center_detail(SupportField{rt});
    sample.center = ce.quadrature;
    rep.route_disagreement = std::max(rep.route_disagreement, ce.disagreement);
    rep.route_agreement = rep.route_agreement && ce.disagreement <= kRouteTol;

    ComplexField g_t = section_rep(st, grid);
    SlopeValues sl = slopes_from_rep(g_t);
    sample.sup_lambda = max_abs(sl.lambda);

    ArrayXXd r2 = rt.values + sl.rho - sl.sigma.abs();
    sample.convex = (r2 > 0.0).all();
    rep.convex_throughout = rep.convex_throughout && sample.convex;

    ComplexField d;
    d.grid = grid;
    d.values = g_t.values - g_inf.values;
    sample.f_dist_c0 = max_abs((wc * wc * d.values).eval());
    double c2 = sample.f_dist_c0;
    c2 = std::max(c2, max_abs((wc * wc * dbar_weighted(d, 2).values).eval()));
    c2 = std::max(c2, max_abs((wc * wc * partial_weighted(d, 2).values).eval()));
    c2 = std::max(c2, max_abs(laplacian_weighted_values(d, 2).values));
    sample.f_dist_c2 = c2;

    rep.samples.push_back(sample);
    if (t >= 0.5 && t <= 2.0) {
      ts.push_back(t);
      c0s.push_back(sample.f_dist_c0);
      c2s.push_back(sample.f_dist_c2);
      lams.push_back(sample.sup_lambda);
    }
  }

  rep.fitted_c0_exponent = fit_log_slope(ts, c0s);
  rep.fitted_c2_exponent = fit_log_slope(ts, c2s);
  rep.fitted_lambda_exponent = fit_log_slope(ts, lams);

  if (!times.empty()) {
    rep.residual_time = times.front();
    ResidualTable& rt = rep.residuals;
    rt.support = pde_residual(ResidualKind::support, state, rep.residual_time);
    rt.chi2 = pde_residual(ResidualKind::chi2, state, rep.residual_time);
    rt.section_a = pde_residual(ResidualKind::section_A, state, rep.residual_time);
    rt.section_b = pde_residual(ResidualKind::section_B, state, rep.residual_time);
    rt.rho = pde_residual(ResidualKind::rho, state, rep.residual_time);
    rt.lambda_minus = pde_residual(ResidualKind::lambda_minus, state, rep.residual_time);
    rt.lambda_plus = pde_residual(ResidualKind::lambda_plus, state, rep.residual_time);
    rt.sigma = pde_residual(ResidualKind::sigma, state, rep.residual_time);

    if (rt.section_a <= 1e-5 && rt.section_b > 1e-2)
      rt.preferred_section_variant = "A";
    else if (rt.section_b <= 1e-5 && rt.section_a > 1e-2)
      rt.preferred_section_variant = "B";
    else if (rt.section_a <= 1e-5 && rt.section_b <= 1e-5)
      rt.preferred_section_variant = "both-small";
    else
      rt.preferred_section_variant = "inconclusive";

    if (std::max(rt.lambda_minus, rt.lambda_plus) < 1e-12)
      rt.preferred_lambda_sign = "degenerate";
    else
      rt.preferred_lambda_sign =
          rt.lambda_minus <= rt.lambda_plus ? "minus" : "plus";
  }
  return rep;
}

}  // namespace mrcf
