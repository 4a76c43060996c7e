// Command-line driver: scenario runs, centre extraction, equation
// verification, and OBJ surface export.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mrcf/oracle.hpp"
#include "mrcf/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitEngineFlag = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mrcf::ScenarioError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string f17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_run(const std::string& config) {
  mrcf::Scenario sc = mrcf::parse_scenario(slurp(config));
  mrcf::RunRecord rec = mrcf::run_scenario(sc);
  if (!sc.csv_path.empty()) {
    std::ofstream os(sc.csv_path, std::ios::binary);
    if (!os) throw mrcf::ScenarioError("cannot write '" + sc.csv_path + "'");
    mrcf::write_csv(rec, os);
  }
  if (!sc.json_path.empty()) {
    std::ofstream os(sc.json_path, std::ios::binary);
    if (!os) throw mrcf::ScenarioError("cannot write '" + sc.json_path + "'");
    os << mrcf::report_json_text(rec);
  }
  const auto& rep = rec.report;
  std::cout << "scenario " << rec.digest << " samples " << rep.samples.size()
            << " center " << f17(rep.center0.alpha.real()) << " "
            << f17(rep.center0.alpha.imag()) << " " << f17(rep.center0.b)
            << "\n";
  std::cout << "section_variant " << rep.residuals.preferred_section_variant
            << " lambda_sign " << rep.residuals.preferred_lambda_sign << "\n";
  if (!rep.route_agreement || !rep.convex_throughout) {
    std::cout << "flags:" << (rep.route_agreement ? "" : " route-disagreement")
              << (rep.convex_throughout ? "" : " non-convex") << "\n";
    return kExitEngineFlag;
  }
  return kExitOk;
}

int cmd_center(const std::string& config) {
  mrcf::Scenario sc = mrcf::parse_scenario(slurp(config));
  mrcf::SupportField r0 = mrcf::initial_support(sc);
  mrcf::CenterExtraction e = mrcf::extract_center_detail(r0);
  std::cout << "{\n  \"center\": [" << f17(e.quadrature.alpha.real()) << ", "
            << f17(e.quadrature.alpha.imag()) << ", " << f17(e.quadrature.b)
            << "],\n  \"center_spectral\": [" << f17(e.spectral.alpha.real())
            << ", " << f17(e.spectral.alpha.imag()) << ", " << f17(e.spectral.b)
            << "],\n  \"route_disagreement\": " << f17(e.disagreement)
            << ",\n  \"r00\": " << f17(mrcf::rescaled_limit_radius(r0)) << "\n}\n";
  return e.disagreement > 1e-8 ? kExitEngineFlag : kExitOk;
}

// Built-in diagnostic state with l >= 2 energy and a non-Lagrangian part, so
// the variant comparison is informative.
int cmd_verify(int l_max, const std::string& variant) {
  using namespace mrcf;
  if (l_max < 4) throw ScenarioError("verify needs --lmax >= 4");
  HarmonicSpectrum r0(l_max);
  r0.at(0, 0) = 2.0 * std::sqrt(kPi);
  r0.at(1, -1) = 0.3;
  r0.at(1, 1) = -0.3;
  r0.at(2, 0) = 0.25;
  r0.at(3, 0) = 0.1;
  r0.at(2, -1) = Complex(0.10, 0.05);
  r0.at(2, 1) = Complex(-0.10, 0.05);
  HarmonicSpectrum s0(l_max);
  s0.at(1, 0) = 0.2;
  s0.at(2, 0) = 0.15;

  FlowState state = make_flow_state(r0, &s0, variant == "plus" ? 2.0 : -2.0);
  const double t = 0.5;
  auto line = [&](const char* name, ResidualKind kind) {
    std::cout << "residual " << name << " = " << f17(pde_residual(kind, state, t))
              << "\n";
  };
  std::cout << "verify lmax " << l_max << " t " << f17(t) << " lambda_coeff "
            << f17(state.lambda_coeff) << "\n";
  if (variant.empty() || variant == "A") line("section_A", ResidualKind::section_A);
  if (variant.empty() || variant == "B") line("section_B", ResidualKind::section_B);
  if (variant.empty() || variant == "minus")
    line("lambda_minus", ResidualKind::lambda_minus);
  if (variant.empty() || variant == "plus")
    line("lambda_plus", ResidualKind::lambda_plus);
  if (variant.empty()) {
    line("support", ResidualKind::support);
    line("rho", ResidualKind::rho);
    line("chi2", ResidualKind::chi2);
    line("sigma", ResidualKind::sigma);
    const double a = pde_residual(ResidualKind::section_A, state, t);
    const double b = pde_residual(ResidualKind::section_B, state, t);
    std::cout << "preferred_section_variant "
              << (a <= 1e-5 && b > 1e-2   ? "A"
                  : b <= 1e-5 && a > 1e-2 ? "B"
                                          : "inconclusive")
              << "\n";
  }
  return kExitOk;
}

int cmd_export(const std::string& config, double t, const std::string& out) {
  mrcf::Scenario sc = mrcf::parse_scenario(slurp(config));
  mrcf::SurfaceResult surf = mrcf::surface_at_time(sc, t);
  std::ofstream os(out, std::ios::binary);
  if (!os) throw mrcf::ScenarioError("cannot write '" + out + "'");
  mrcf::write_obj(surf.mesh, os);
  std::cout << "wrote " << out << " vertices " << surf.mesh.vertices.size()
            << " faces " << surf.mesh.faces.size() << "\n";
  if (!surf.convex) {
    std::cout << "flags: non-convex\n";
    return kExitEngineFlag;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral simulator for mean-radius-of-curvature flow in the space of oriented lines"};
  app.require_subcommand(1);

  std::string config, out, variant;
  double t = 0.0;
  int l_max = 0;

  auto* run = app.add_subcommand("run", "Run a scenario and write CSV/JSON outputs");
  run->add_option("--config", config, "scenario JSON file")->required();

  auto* center = app.add_subcommand("center", "Extract the limit centre from initial data");
  center->add_option("--config", config, "scenario JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Evolution-equation residuals on a built-in state");
  verify->add_option("--lmax", l_max, "band limit")->required();
  verify->add_option("--variant", variant, "A|B|minus|plus (default: all)")
      ->check(CLI::IsMember({"A", "B", "minus", "plus"}));

  auto* exp = app.add_subcommand("export", "Export the surface at a flow time as OBJ");
  exp->add_option("--config", config, "scenario JSON file")->required();
  exp->add_option("--time", t, "flow time")->required();
  exp->add_option("--out", out, "output OBJ path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (run->parsed()) return cmd_run(config);
    if (center->parsed()) return cmd_center(config);
    if (verify->parsed()) return cmd_verify(l_max, variant);
    if (exp->parsed()) return cmd_export(config, t, out);
  } catch (const mrcf::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "engine error: " << e.what() << "\n";
    return kExitEngineFlag;
  }
  return kExitValidation;
}
