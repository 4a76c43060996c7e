#include "mrcf/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

namespace mrcf {

namespace {

using nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require_keys(const ordered_json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ScenarioError("unknown key '" + it.key() + "' in " + where);
}

std::vector<SpectrumEntry> parse_entries(const ordered_json& arr,
                                         const std::string& where, int l_max) {
  if (!arr.is_array()) throw ScenarioError(where + " must be an array");
  std::vector<SpectrumEntry> out;
  std::map<std::pair<int, int>, Complex> seen;
  for (const auto& e : arr) {
    if (!e.is_object()) throw ScenarioError(where + " entries must be objects");
    require_keys(e, where + " entry", {"l", "m", "re", "im"});
    if (!e.contains("l") || !e.contains("m"))
      throw ScenarioError(where + " entry missing l or m");
    SpectrumEntry s;
    s.l = e.at("l").get<int>();
    s.m = e.at("m").get<int>();
    s.re = e.value("re", 0.0);
    s.im = e.value("im", 0.0);
    if (s.l < 0 || s.l > l_max || std::abs(s.m) > s.l)
      throw ScenarioError(where + ": entry (l=" + std::to_string(s.l) +
                          ",m=" + std::to_string(s.m) + ") out of range");
    if (!std::isfinite(s.re) || !std::isfinite(s.im))
      throw ScenarioError(where + ": non-finite coefficient");
    if (seen.count({s.l, s.m}))
      throw ScenarioError(where + ": duplicate entry (l=" + std::to_string(s.l) +
                          ",m=" + std::to_string(s.m) + ")");
    seen[{s.l, s.m}] = Complex(s.re, s.im);
    out.push_back(s);
  }
  // reality condition: conj(B_lm) = (-1)^m B_{l,-m}
  for (const auto& [lm, v] : seen) {
    const auto [l, m] = lm;
    if (m == 0) {
      if (v.imag() != 0.0)
        throw ScenarioError(where + ": m=0 entry (l=" + std::to_string(l) +
                            ") must be real");
      continue;
    }
    auto it = seen.find({l, -m});
    const double sign = (m & 1) ? -1.0 : 1.0;
    if (it == seen.end())
      throw ScenarioError(where + ": entry (l=" + std::to_string(l) +
                          ",m=" + std::to_string(m) +
                          ") has no conjugate partner (reality condition)");
    if (std::abs(std::conj(v) - sign * it->second) > 1e-12)
      throw ScenarioError(where + ": entries (l=" + std::to_string(l) +
                          ",m=+-" + std::to_string(std::abs(m)) +
                          ") violate the reality condition");
  }
  return out;
}

void add_entries(HarmonicSpectrum& spec, const std::vector<SpectrumEntry>& entries) {
  for (const auto& e : entries) spec.at(e.l, e.m) += Complex(e.re, e.im);
}

ordered_json entries_json(const std::vector<SpectrumEntry>& entries) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : entries)
    arr.push_back({{"l", e.l}, {"m", e.m}, {"re", e.re}, {"im", e.im}});
  return arr;
}

}  // namespace

int default_l_max() {
  if (const char* env = std::getenv("MRCF_LMAX")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 2 && v <= 512) return int(v);
    throw ScenarioError("MRCF_LMAX must be an integer in [2, 512]");
  }
  return 32;
}

Scenario parse_scenario(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
  require_keys(j, "scenario",
               {"name", "lmax", "initial", "s0_spectrum", "lambda_variant",
                "times", "outputs"});

  Scenario sc;
  sc.name = j.value("name", std::string());
  sc.l_max = j.contains("lmax") ? j.at("lmax").get<int>() : default_l_max();
  if (sc.l_max < 2 || sc.l_max > 512)
    throw ScenarioError("lmax must be in [2, 512]");

  if (!j.contains("initial")) throw ScenarioError("missing 'initial'");
  const auto& init = j.at("initial");
  if (!init.is_object()) throw ScenarioError("'initial' must be an object");
  require_keys(init, "initial",
               {"preset", "center", "radius", "semi_axes", "spectrum",
                "perturbation"});
  if (init.contains("preset")) {
    const std::string preset = init.at("preset").get<std::string>();
    if (preset == "sphere") {
      sc.kind = Scenario::Kind::sphere;
      if (init.contains("semi_axes"))
        throw ScenarioError("sphere preset does not take 'semi_axes'");
      if (init.contains("center")) {
        auto c = init.at("center");
        if (!c.is_array() || c.size() != 3)
          throw ScenarioError("'center' must be [x1, x2, x3]");
        for (int i = 0; i < 3; ++i) sc.center[i] = c.at(i).get<double>();
      }
      sc.radius = init.value("radius", 1.0);
      if (!std::isfinite(sc.radius)) throw ScenarioError("non-finite radius");
    } else if (preset == "ellipsoid") {
      sc.kind = Scenario::Kind::ellipsoid;
      if (init.contains("center") || init.contains("radius"))
        throw ScenarioError("ellipsoid preset takes only 'semi_axes'");
      if (!init.contains("semi_axes"))
        throw ScenarioError("ellipsoid preset requires 'semi_axes'");
      auto a = init.at("semi_axes");
      if (!a.is_array() || a.size() != 3)
        throw ScenarioError("'semi_axes' must be [a, b, c]");
      for (int i = 0; i < 3; ++i) {
        sc.semi_axes[i] = a.at(i).get<double>();
        if (!(sc.semi_axes[i] > 0.0)) throw ScenarioError("semi-axes must be positive");
      }
    } else {
      throw ScenarioError("unknown preset '" + preset + "'");
    }
    if (init.contains("spectrum"))
      throw ScenarioError("'spectrum' cannot be combined with a preset");
    if (init.contains("perturbation"))
      sc.perturbation = parse_entries(init.at("perturbation"),
                                      "initial.perturbation", sc.l_max);
  } else if (init.contains("spectrum")) {
    sc.kind = Scenario::Kind::spectrum;
    if (init.contains("perturbation"))
      throw ScenarioError("'perturbation' is only for presets; merge it into 'spectrum'");
    sc.spectrum = parse_entries(init.at("spectrum"), "initial.spectrum", sc.l_max);
  } else {
    throw ScenarioError("'initial' needs a 'preset' or a 'spectrum'");
  }

  if (j.contains("s0_spectrum"))
    sc.s0 = parse_entries(j.at("s0_spectrum"), "s0_spectrum", sc.l_max);

  sc.lambda_variant = j.value("lambda_variant", std::string("minus"));
  if (sc.lambda_variant != "minus" && sc.lambda_variant != "plus")
    throw ScenarioError("lambda_variant must be 'minus' or 'plus'");

  if (!j.contains("times")) throw ScenarioError("missing 'times'");
  const auto& times = j.at("times");
  if (!times.is_array() || times.empty())
    throw ScenarioError("'times' must be a non-empty array");
  for (const auto& t : times) sc.times.push_back(t.get<double>());
  if (sc.times.front() < 0.0) throw ScenarioError("times must start at t >= 0");
  for (size_t i = 0; i + 1 < sc.times.size(); ++i)
    if (!(sc.times[i] < sc.times[i + 1]))
      throw ScenarioError("times must be strictly ascending");

  if (j.contains("outputs")) {
    const auto& outs = j.at("outputs");
    if (!outs.is_object()) throw ScenarioError("'outputs' must be an object");
    require_keys(outs, "outputs", {"csv", "json"});
    sc.csv_path = outs.value("csv", std::string());
    sc.json_path = outs.value("json", std::string());
  }
  return sc;
}

std::string serialize_scenario(const Scenario& sc) {
  ordered_json j;
  j["name"] = sc.name;
  j["lmax"] = sc.l_max;
  ordered_json init;
  switch (sc.kind) {
    case Scenario::Kind::sphere:
      init["preset"] = "sphere";
      init["center"] = {sc.center[0], sc.center[1], sc.center[2]};
      init["radius"] = sc.radius;
      if (!sc.perturbation.empty())
        init["perturbation"] = entries_json(sc.perturbation);
      break;
    case Scenario::Kind::ellipsoid:
      init["preset"] = "ellipsoid";
      init["semi_axes"] = {sc.semi_axes[0], sc.semi_axes[1], sc.semi_axes[2]};
      if (!sc.perturbation.empty())
        init["perturbation"] = entries_json(sc.perturbation);
      break;
    case Scenario::Kind::spectrum:
      init["spectrum"] = entries_json(sc.spectrum);
      break;
  }
  j["initial"] = init;
  if (!sc.s0.empty()) j["s0_spectrum"] = entries_json(sc.s0);
  j["lambda_variant"] = sc.lambda_variant;
  j["times"] = sc.times;
  ordered_json outs;
  if (!sc.csv_path.empty()) outs["csv"] = sc.csv_path;
  if (!sc.json_path.empty()) outs["json"] = sc.json_path;
  if (!outs.empty()) j["outputs"] = outs;
  return j.dump(2);
}

std::string scenario_digest(const Scenario& sc) {
  const std::string text = serialize_scenario(sc);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

HarmonicSpectrum initial_spectrum(const Scenario& sc) {
  HarmonicSpectrum spec(sc.l_max);
  switch (sc.kind) {
    case Scenario::Kind::sphere: {
      // support of the sphere: r = c.n + R
      spec.at(0, 0) = 2.0 * std::sqrt(kPi) * sc.radius;
      spec.at(1, 0) = std::sqrt(kFourPi / 3.0) * sc.center[2];
      const Complex a(sc.center[0], sc.center[1]);
      spec.at(1, -1) = std::sqrt(2.0 * kPi / 3.0) * a;
      spec.at(1, 1) = -std::sqrt(2.0 * kPi / 3.0) * std::conj(a);
      break;
    }
    case Scenario::Kind::ellipsoid: {
      GridPtr grid = make_grid(sc.l_max);
      SupportField r =
          ellipsoid_support(sc.semi_axes[0], sc.semi_axes[1], sc.semi_axes[2], grid);
      spec = sht_forward(r.field);
      break;
    }
    case Scenario::Kind::spectrum:
      add_entries(spec, sc.spectrum);
      return spec;
  }
  add_entries(spec, sc.perturbation);
  return spec;
}

HarmonicSpectrum initial_s0_spectrum(const Scenario& sc) {
  HarmonicSpectrum spec(sc.l_max);
  add_entries(spec, sc.s0);
  return spec;
}

SupportField initial_support(const Scenario& sc) {
  return SupportField{sht_inverse_real(initial_spectrum(sc), make_grid(sc.l_max))};
}

double lambda_coeff_of(const Scenario& sc) {
  return sc.lambda_variant == "plus" ? 2.0 : -2.0;
}

RunRecord run_scenario(const Scenario& sc) {
  RunRecord rec;
  rec.scenario = sc;
  rec.digest = scenario_digest(sc);
  SupportField r0 = initial_support(sc);
  HarmonicSpectrum s0 = initial_s0_spectrum(sc);
  rec.report = convergence_report(r0, sc.s0.empty() ? nullptr : &s0, sc.times,
                                  lambda_coeff_of(sc));
  return rec;
}

void write_csv(const RunRecord& rec, std::ostream& os) {
  os << "t,area,sup_lambda,center_x1,center_x2,center_x3,f_dist_c0,f_dist_c2proxy\n";
  for (const auto& s : rec.report.samples) {
    os << fmt17(s.t) << ',' << fmt17(s.area) << ',' << fmt17(s.sup_lambda) << ','
       << fmt17(s.center.alpha.real()) << ',' << fmt17(s.center.alpha.imag()) << ','
       << fmt17(s.center.b) << ',' << fmt17(s.f_dist_c0) << ','
       << fmt17(s.f_dist_c2) << '\n';
  }
}

std::string report_json_text(const RunRecord& rec) {
  ordered_json j;
  j["scenario_digest"] = rec.digest;
  j["name"] = rec.scenario.name;
  j["lmax"] = rec.scenario.l_max;
  j["lambda_variant"] = rec.scenario.lambda_variant;
  j["center"] = {rec.report.center0.alpha.real(), rec.report.center0.alpha.imag(),
                 rec.report.center0.b};
  j["r00"] = rec.report.r00;
  ordered_json rows = ordered_json::array();
  for (const auto& s : rec.report.samples) {
    ordered_json row;
    row["t"] = s.t;
    row["area"] = s.area;
    row["sup_lambda"] = s.sup_lambda;
    row["center"] = {s.center.alpha.real(), s.center.alpha.imag(), s.center.b};
    row["f_dist_c0"] = s.f_dist_c0;
    row["f_dist_c2proxy"] = s.f_dist_c2;
    row["convex"] = s.convex;
    rows.push_back(row);
  }
  j["rows"] = rows;
  auto put_fit = [&](const char* key, double v) {
    if (std::isnan(v))
      j[key] = nullptr;
    else
      j[key] = v;
  };
  put_fit("fitted_c0_exponent", rec.report.fitted_c0_exponent);
  put_fit("fitted_c2_exponent", rec.report.fitted_c2_exponent);
  put_fit("fitted_lambda_exponent", rec.report.fitted_lambda_exponent);
  const auto& rt = rec.report.residuals;
  ordered_json res;
  res["time"] = rec.report.residual_time;
  res["support"] = rt.support;
  res["chi2"] = rt.chi2;
  res["section_A"] = rt.section_a;
  res["section_B"] = rt.section_b;
  res["rho"] = rt.rho;
  res["lambda_minus"] = rt.lambda_minus;
  res["lambda_plus"] = rt.lambda_plus;
  res["sigma"] = rt.sigma;
  res["preferred_section_variant"] = rt.preferred_section_variant;
  res["preferred_lambda_sign"] = rt.preferred_lambda_sign;
  j["residuals"] = res;
  ordered_json flags;
  flags["convex_throughout"] = rec.report.convex_throughout;
  flags["route_agreement"] = rec.report.route_agreement;
  flags["route_disagreement"] = rec.report.route_disagreement;
  j["flags"] = flags;
  return j.dump(2) + "\n";
}

SurfaceResult surface_at_time(const Scenario& sc, double t) {
  if (t < 0.0) throw ScenarioError("export time must be >= 0");
  FlowState st = make_flow_state(initial_spectrum(sc), nullptr, lambda_coeff_of(sc));
  st = evolve_support(st, t);
  GridPtr grid = make_grid(sc.l_max);
  return reconstruct_surface(SupportField{support_at(st, grid)});
}

}  // namespace mrcf
