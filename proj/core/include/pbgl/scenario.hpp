#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pbgl/analysis.hpp"
#include "pbgl/discretize.hpp"
#include "pbgl/dynamics.hpp"

namespace pbgl {

enum class OutputFormat { csv, structured };

// Everything needed to reproduce one simulation: DOS model, grid strategy,
// atomic detunings, integrator settings and output selection. Serializes to
// a JSON document with one block per concern.
struct Scenario {
  std::string name = "custom";
  std::string description;
  std::string unit_label;  // working frequency unit, for labeling only

  DosModel dos = IsotropicBandEdge{};
  GridKind grid = GridKind::quadratic;
  QuadraticGridParams quadratic;
  RecurrenceGridParams recurrence;
  UniformGridParams uniform;
  double clearance_margin = 1.0;
  ShiftOptions shift;

  double detuning_upper = 0.0;  // delta12 relative to the band reference
  double detuning_lower = 0.0;  // delta23

  PropagateOptions run;
  RegimeOptions regime;

  OutputFormat format = OutputFormat::csv;
  bool write_report = true;
  bool write_reservoir = false;
};

// Parse/serialize; throws ConfigError on malformed documents.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);
Scenario load_scenario_file(const std::filesystem::path& path);

// Full precondition check across all blocks; throws ValidationError.
void validate(const Scenario& scenario);

// Builds the reservoir (grid + shifts) and wraps it with the detunings.
LadderConfig build_ladder_config(const Scenario& scenario);

// Built-in parameter sets reproducing the library's reference dynamics:
// fig2, fig3a, fig3b, fig4a, fig4b, fig5a, fig5b, fig6 (band-edge model) and
// fig7 (Lorentzian model).
const std::vector<Scenario>& presets();
std::vector<std::string> preset_names();
const Scenario* find_preset(std::string_view name);

}  // namespace pbgl
