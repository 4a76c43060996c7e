#ifndef MRCF_SCENARIO_HPP
#define MRCF_SCENARIO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mrcf/flow.hpp"
#include "mrcf/mesh.hpp"

namespace mrcf {

/// Schema violation or invalid configuration; the CLI maps this to exit 2.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectrumEntry {
  int l = 0;
  int m = 0;
  double re = 0.0;
  double im = 0.0;
};

/// A batch configuration: initial support (preset, explicit spectrum, or
/// preset plus perturbation), optional imaginary potential, sample times,
/// lambda-coefficient variant and output selections.
struct Scenario {
  enum class Kind { sphere, ellipsoid, spectrum };

  std::string name;
  int l_max = 32;
  Kind kind = Kind::sphere;

  Eigen::Vector3d center = Eigen::Vector3d::Zero();  // sphere preset
  double radius = 1.0;
  Eigen::Vector3d semi_axes = Eigen::Vector3d::Ones();  // ellipsoid preset

  std::vector<SpectrumEntry> spectrum;      // explicit initial spectrum
  std::vector<SpectrumEntry> perturbation;  // added on top of a preset
  std::vector<SpectrumEntry> s0;            // imaginary potential spectrum

  std::string lambda_variant = "minus";  // "minus" or "plus"
  std::vector<double> times;

  std::string csv_path;   // empty = not requested
  std::string json_path;
};

/// Parse and validate a scenario document.  Unknown keys are rejected;
/// explicit spectra must satisfy the reality condition; times must be
/// strictly ascending with t0 >= 0.
Scenario parse_scenario(const std::string& json_text);

/// Canonical serialization (stable key order); parse round-trips to an
/// equal scenario.
std::string serialize_scenario(const Scenario& sc);

/// FNV-1a hash of the canonical serialization.
std::string scenario_digest(const Scenario& sc);

/// Default band limit: MRCF_LMAX environment variable when set, else 32.
int default_l_max();

/// Initial support spectrum of the scenario at its band limit.
HarmonicSpectrum initial_spectrum(const Scenario& sc);
/// Optional imaginary potential spectrum (zero when absent).
HarmonicSpectrum initial_s0_spectrum(const Scenario& sc);
/// Initial support field on the scenario's default grid.
SupportField initial_support(const Scenario& sc);

double lambda_coeff_of(const Scenario& sc);

struct RunRecord {
  std::string digest;
  Scenario scenario;
  FlowReport report;
};

/// Execute the scenario (no file output).
RunRecord run_scenario(const Scenario& sc);

/// Fixed-order CSV time series, 17 significant digits, header row mandatory.
void write_csv(const RunRecord& rec, std::ostream& os);
/// JSON report with stable key order.
std::string report_json_text(const RunRecord& rec);

/// Reconstruct the surface at absolute flow time t.
SurfaceResult surface_at_time(const Scenario& sc, double t);

}  // namespace mrcf

#endif
