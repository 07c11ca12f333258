#include "pbgl/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pbgl/errors.hpp"

namespace pbgl {

namespace {

using Json = nlohmann::ordered_json;

double require_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ConfigError(std::string("missing or non-numeric key: ") + key);
  }
  return j[key].get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    throw ConfigError(std::string("non-numeric key: ") + key);
  }
  return j[key].get<double>();
}

std::size_t count_or(const Json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_unsigned()) {
    throw ConfigError(std::string("key must be a nonnegative integer: ") + key);
  }
  return j[key].get<std::size_t>();
}

std::string string_or(const Json& j, const char* key,
                      const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) {
    throw ConfigError(std::string("non-string key: ") + key);
  }
  return j[key].get<std::string>();
}

DosModel dos_from_json(const Json& j) {
  const std::string kind = string_or(j, "model", "");
  if (kind == "isotropic_band_edge") {
    IsotropicBandEdge m;
    m.edge_frequency = number_or(j, "edge_frequency", 0.0);
    m.coupling_upper = number_or(j, "coupling_upper", 1.0);
    m.coupling_lower = number_or(j, "coupling_lower", 1.0);
    if (j.contains("rho0")) m.rho0 = require_number(j, "rho0");
    return m;
  }
  if (kind == "generalized_lorentzian") {
    GeneralizedLorentzian m;
    m.center_frequency = number_or(j, "center_frequency", 0.0);
    m.half_width = number_or(j, "half_width", 1.0);
    if (j.contains("order")) {
      if (!j["order"].is_number_integer()) {
        throw ConfigError("order must be an integer");
      }
      m.order = j["order"].get<int>();
    }
    m.rate_upper = number_or(j, "rate_upper", 1.0);
    m.rate_lower = number_or(j, "rate_lower", 1.0);
    m.rho0 = number_or(j, "rho0", 1.0);
    return m;
  }
  throw ConfigError("dos.model must be isotropic_band_edge or "
                    "generalized_lorentzian");
}

Json dos_to_json(const DosModel& model) {
  Json j;
  if (const auto* iso = std::get_if<IsotropicBandEdge>(&model)) {
    j["model"] = "isotropic_band_edge";
    j["edge_frequency"] = iso->edge_frequency;
    j["coupling_upper"] = iso->coupling_upper;
    j["coupling_lower"] = iso->coupling_lower;
    if (iso->rho0) j["rho0"] = *iso->rho0;
  } else {
    const auto& lor = std::get<GeneralizedLorentzian>(model);
    j["model"] = "generalized_lorentzian";
    j["center_frequency"] = lor.center_frequency;
    j["half_width"] = lor.half_width;
    j["order"] = lor.order;
    j["rate_upper"] = lor.rate_upper;
    j["rate_lower"] = lor.rate_lower;
    j["rho0"] = lor.rho0;
  }
  return j;
}

GridKind grid_kind_from_string(const std::string& s) {
  if (s == "quadratic") return GridKind::quadratic;
  if (s == "recurrence") return GridKind::recurrence;
  if (s == "uniform") return GridKind::uniform;
  throw ConfigError("grid.strategy must be quadratic, recurrence or uniform");
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario root must be an object");

  Scenario s;
  s.name = string_or(j, "name", "custom");
  s.description = string_or(j, "description", "");
  s.unit_label = string_or(j, "unit", "");

  if (!j.contains("dos") || !j["dos"].is_object()) {
    throw ConfigError("missing dos block");
  }
  s.dos = dos_from_json(j["dos"]);
  if (s.unit_label.empty()) {
    s.unit_label = std::holds_alternative<IsotropicBandEdge>(s.dos)
                       ? "C1^(2/3)"
                       : "gamma2";
  }

  if (!j.contains("grid") || !j["grid"].is_object()) {
    throw ConfigError("missing grid block");
  }
  const Json& grid = j["grid"];
  s.grid = grid_kind_from_string(string_or(grid, "strategy", ""));
  switch (s.grid) {
    case GridKind::quadratic:
      s.quadratic.count = count_or(grid, "modes", 150);
      s.quadratic.spacing = number_or(grid, "spacing", 4.4e-4);
      break;
    case GridKind::recurrence:
      s.recurrence.start = require_number(grid, "start");
      s.recurrence.count = count_or(grid, "modes", 150);
      if (grid.contains("band_ceiling")) {
        s.recurrence.band_ceiling = require_number(grid, "band_ceiling");
      }
      s.recurrence.density_floor =
          number_or(grid, "density_floor", s.recurrence.density_floor);
      break;
    case GridKind::uniform:
      s.uniform.low = require_number(grid, "band_low");
      s.uniform.high = require_number(grid, "band_high");
      s.uniform.count = count_or(grid, "modes", 150);
      break;
  }
  s.clearance_margin = number_or(grid, "clearance_margin", 1.0);

  if (!j.contains("atom") || !j["atom"].is_object()) {
    throw ConfigError("missing atom block");
  }
  s.detuning_upper = require_number(j["atom"], "delta12");
  s.detuning_lower = require_number(j["atom"], "delta23");

  if (j.contains("shift")) {
    const Json& sh = j["shift"];
    s.shift.abs_tol = number_or(sh, "abs_tol", s.shift.abs_tol);
    s.shift.lower_cutoff = number_or(sh, "lower_cutoff", s.shift.lower_cutoff);
    if (sh.contains("upper_cutoff")) {
      s.shift.upper_cutoff = require_number(sh, "upper_cutoff");
    }
  }

  if (j.contains("run")) {
    const Json& run = j["run"];
    s.run.t_end = number_or(run, "t_end", s.run.t_end);
    s.run.samples = count_or(run, "samples", s.run.samples);
    s.run.rel_tol = number_or(run, "rel_tol", s.run.rel_tol);
    s.run.abs_tol = number_or(run, "abs_tol", s.run.abs_tol);
    s.run.norm_drift_bound =
        number_or(run, "norm_drift_bound", s.run.norm_drift_bound);
    if (run.contains("max_step")) {
      s.run.max_step = require_number(run, "max_step");
    }
    const std::string frame = string_or(run, "frame", "rotating");
    if (frame == "rotating") {
      s.run.frame = Frame::rotating;
    } else if (frame == "interaction") {
      s.run.frame = Frame::interaction;
    } else {
      throw ConfigError("run.frame must be rotating or interaction");
    }
  }

  if (j.contains("analysis")) {
    const Json& an = j["analysis"];
    s.regime.transient_end =
        number_or(an, "transient_end", s.regime.transient_end);
    s.regime.tail_window = number_or(an, "tail_window", s.regime.tail_window);
  }

  if (j.contains("output")) {
    const Json& out = j["output"];
    const std::string format = string_or(out, "format", "csv");
    if (format == "csv") {
      s.format = OutputFormat::csv;
    } else if (format == "structured") {
      s.format = OutputFormat::structured;
    } else {
      throw ConfigError("output.format must be csv or structured");
    }
    if (out.contains("spectra")) {
      if (!out["spectra"].is_boolean()) {
        throw ConfigError("output.spectra must be a boolean");
      }
      s.run.record_spectra = out["spectra"].get<bool>();
    }
    if (out.contains("report")) {
      if (!out["report"].is_boolean()) {
        throw ConfigError("output.report must be a boolean");
      }
      s.write_report = out["report"].get<bool>();
    }
    if (out.contains("reservoir")) {
      if (!out["reservoir"].is_boolean()) {
        throw ConfigError("output.reservoir must be a boolean");
      }
      s.write_reservoir = out["reservoir"].get<bool>();
    }
  }
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  j["unit"] = s.unit_label;
  j["dos"] = dos_to_json(s.dos);

  Json grid;
  grid["strategy"] = grid_name(s.grid);
  switch (s.grid) {
    case GridKind::quadratic:
      grid["modes"] = s.quadratic.count;
      grid["spacing"] = s.quadratic.spacing;
      break;
    case GridKind::recurrence:
      grid["start"] = s.recurrence.start;
      grid["modes"] = s.recurrence.count;
      if (s.recurrence.band_ceiling) {
        grid["band_ceiling"] = *s.recurrence.band_ceiling;
      }
      grid["density_floor"] = s.recurrence.density_floor;
      break;
    case GridKind::uniform:
      grid["band_low"] = s.uniform.low;
      grid["band_high"] = s.uniform.high;
      grid["modes"] = s.uniform.count;
      break;
  }
  grid["clearance_margin"] = s.clearance_margin;
  j["grid"] = grid;

  j["atom"] = Json{{"delta12", s.detuning_upper},
                   {"delta23", s.detuning_lower}};

  Json shift;
  shift["abs_tol"] = s.shift.abs_tol;
  shift["lower_cutoff"] = s.shift.lower_cutoff;
  if (s.shift.upper_cutoff) shift["upper_cutoff"] = *s.shift.upper_cutoff;
  j["shift"] = shift;

  Json run;
  run["t_end"] = s.run.t_end;
  run["samples"] = s.run.samples;
  run["rel_tol"] = s.run.rel_tol;
  run["abs_tol"] = s.run.abs_tol;
  run["norm_drift_bound"] = s.run.norm_drift_bound;
  if (s.run.max_step) run["max_step"] = *s.run.max_step;
  run["frame"] =
      s.run.frame == Frame::rotating ? "rotating" : "interaction";
  j["run"] = run;

  j["analysis"] = Json{{"transient_end", s.regime.transient_end},
                       {"tail_window", s.regime.tail_window}};

  Json out;
  out["format"] = s.format == OutputFormat::csv ? "csv" : "structured";
  out["spectra"] = s.run.record_spectra;
  out["report"] = s.write_report;
  out["reservoir"] = s.write_reservoir;
  j["output"] = out;
  return j.dump(2);
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open scenario file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return scenario_from_json(buffer.str());
}

void validate(const Scenario& s) {
  pbgl::validate(s.dos);
  switch (s.grid) {
    case GridKind::quadratic:
      if (!std::holds_alternative<IsotropicBandEdge>(s.dos)) {
        throw ValidationError("quadratic grids require the band-edge model");
      }
      if (s.quadratic.count < 2 || !(s.quadratic.spacing > 0)) {
        throw ValidationError("quadratic grid needs N >= 2 and spacing > 0");
      }
      break;
    case GridKind::recurrence:
      if (s.recurrence.count < 2) {
        throw ValidationError("recurrence grid needs N >= 2");
      }
      break;
    case GridKind::uniform:
      if (!std::holds_alternative<GeneralizedLorentzian>(s.dos)) {
        throw ValidationError("uniform grids require the Lorentzian model");
      }
      if (s.uniform.count < 2 || !(s.uniform.low < s.uniform.high)) {
        throw ValidationError("uniform grid needs N >= 2 and ordered bounds");
      }
      break;
  }
  if (!std::isfinite(s.detuning_upper) || !std::isfinite(s.detuning_lower)) {
    throw ValidationError("detunings must be finite");
  }
  if (!(s.run.t_end > 0)) throw ValidationError("t_end must be positive");
  if (s.run.samples < 2) throw ValidationError("need at least two samples");
  if (!(s.run.rel_tol > 0) || !(s.run.abs_tol > 0)) {
    throw ValidationError("integrator tolerances must be positive");
  }
  if (!(s.run.norm_drift_bound > 0)) {
    throw ValidationError("norm drift bound must be positive");
  }
  if (!(s.regime.tail_window > 0 && s.regime.tail_window < 1)) {
    throw ValidationError("tail window fraction must lie in (0, 1)");
  }
  if (!(s.clearance_margin >= 0)) {
    throw ValidationError("clearance margin must be nonnegative");
  }
}

LadderConfig build_ladder_config(const Scenario& s) {
  validate(s);
  const double ref = band_reference(s.dos);
  const TransitionFrequencies atom{ref + s.detuning_upper,
                                   ref + s.detuning_lower};
  DiscretizedReservoir reservoir;
  switch (s.grid) {
    case GridKind::quadratic: {
      // Keep density and grid descriptions consistent: rho0 implied by the
      // chosen spacing unless the scenario pinned one.
      IsotropicBandEdge model = std::get<IsotropicBandEdge>(s.dos);
      if (!model.rho0) {
        model = with_rho0_from_spacing(model, s.quadratic.spacing);
      }
      reservoir = build_quadratic_grid(model, s.quadratic, atom,
                                       s.clearance_margin);
      break;
    }
    case GridKind::recurrence:
      reservoir = build_recurrence_grid(s.dos, s.recurrence, atom,
                                        s.clearance_margin);
      break;
    case GridKind::uniform:
      reservoir = build_uniform_grid(std::get<GeneralizedLorentzian>(s.dos),
                                     s.uniform, atom, s.clearance_margin);
      break;
  }
  return LadderConfig(std::move(reservoir), s.detuning_upper,
                      s.detuning_lower);
}

namespace {

std::vector<Scenario> make_presets() {
  // Band-edge presets share C2 = 1.5 C1 with C1 = 1, so frequencies are in
  // units of C1^(2/3) and the lower transition's natural scale is
  // C2^(2/3) = 1.5^(2/3).
  const double c1_unit = 1.0;
  const double c2_unit = std::pow(1.5, 2.0 / 3.0);

  // Long spans for the trapping scenarios; the decayed or settled ones end
  // at 50 (their populations are flat long before that, and the coarse
  // grid's recurrence horizon sits around t ~ 65-95 for their in-band
  // resonances).
  auto edge_preset = [&](std::string name, double d12, double d23,
                         double t_end, std::string description) {
    Scenario s;
    s.name = std::move(name);
    s.description = std::move(description);
    s.unit_label = "C1^(2/3)";
    IsotropicBandEdge dos;
    dos.edge_frequency = 0.0;
    dos.coupling_upper = 1.0;
    dos.coupling_lower = 1.5;
    s.dos = dos;
    s.grid = GridKind::quadratic;
    s.quadratic = QuadraticGridParams{150, 4.4e-4};
    s.detuning_upper = d12;
    s.detuning_lower = d23;
    s.run.t_end = t_end;
    return s;
  };

  std::vector<Scenario> list;
  list.push_back(edge_preset(
      "fig2", -1.0 * c2_unit, 0.0, 100.0,
      "upper transition inside the gap, lower at the edge; long-time "
      "trapping in both excited states"));
  list.push_back(edge_preset(
      "fig3a", -2.0 * c2_unit, 1.0 * c1_unit, 100.0,
      "upper transition deep in the gap, lower above the edge; undamped "
      "beating after a short transient"));
  list.push_back(edge_preset(
      "fig3b", -2.0 * c2_unit, 1.0 * c2_unit, 100.0,
      "as fig3a with the lower detuning on the C2 scale; intermediate and "
      "ground populations practically coincide"));
  list.push_back(edge_preset(
      "fig4a", 1.0 * c2_unit, -1.0 * c1_unit, 50.0,
      "upper transition outside the gap; stepwise cascade decay dominates"));
  list.push_back(edge_preset(
      "fig4b", 2.0 * c2_unit, 3.0 * c1_unit, 50.0,
      "both transitions outside the gap; open-space-like cascade decay"));
  list.push_back(edge_preset(
      "fig5a", -2.0 * c2_unit, 2.0 * c2_unit, 100.0,
      "transitions mirrored about the edge (two-photon resonance); top and "
      "ground levels exchange population while the intermediate level stays "
      "flat"));
  list.push_back(edge_preset(
      "fig5b", -2.0 * c1_unit, 2.0 * c1_unit, 50.0,
      "mirrored detunings on the C1 scale; shallower binding, the beating "
      "settles while the intermediate level stays flat"));
  list.push_back(edge_preset(
      "fig6", -2.0 * c2_unit, 4.0 * c2_unit, 50.0,
      "lower transition far outside the gap; the upper-level trapping "
      "becomes metastable and decays"));

  {
    Scenario s;
    s.name = "fig7";
    s.description =
        "Lorentzian gap profile: trapping in both upper levels persists but "
        "the beating disappears";
    s.unit_label = "gamma2";
    GeneralizedLorentzian dos;
    // A positive carrier keeps the mirrored shift cutoffs meaningful; the
    // dynamics depend on it only through the (reported) shifts.
    dos.center_frequency = 100.0;
    dos.half_width = 1.0;
    dos.order = 6;
    dos.rate_upper = 0.5;
    dos.rate_lower = 1.0;
    s.dos = dos;
    s.grid = GridKind::uniform;
    s.uniform = UniformGridParams{80.0, 120.0, 150};
    s.detuning_upper = 0.1;
    s.detuning_lower = 0.3;
    s.run.t_end = 20.0;
    list.push_back(std::move(s));
  }
  return list;
}

}  // namespace

const std::vector<Scenario>& presets() {
  static const std::vector<Scenario> list = make_presets();
  return list;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& s : presets()) names.push_back(s.name);
  return names;
}

const Scenario* find_preset(std::string_view name) {
  for (const auto& s : presets()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace pbgl
