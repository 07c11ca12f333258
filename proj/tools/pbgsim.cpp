// pbgsim - scenario-driven simulation of two-photon cascade emission into a
// structured (band-gap) reservoir.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pbgl/errors.hpp"
#include "pbgl/runner.hpp"
#include "pbgl/scenario.hpp"
#include "pbgl/verify.hpp"

namespace {

// Exit codes: 0 success, 2 config parse, 3 validation, 4 integrator or
// quadrature failure, 5 I/O.
enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kValidationError = 3,
  kIntegratorError = 4,
  kIoError = 5,
};

int classify(const std::exception& e) {
  if (dynamic_cast<const pbgl::ConfigError*>(&e)) return kConfigError;
  if (dynamic_cast<const pbgl::ValidationError*>(&e)) return kValidationError;
  if (dynamic_cast<const pbgl::GridError*>(&e)) return kValidationError;
  if (dynamic_cast<const pbgl::PoleError*>(&e)) return kValidationError;
  if (dynamic_cast<const pbgl::IntegratorError*>(&e)) return kIntegratorError;
  if (dynamic_cast<const pbgl::QuadratureError*>(&e)) return kIntegratorError;
  if (dynamic_cast<const pbgl::IoError*>(&e)) return kIoError;
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) {
    return kIoError;
  }
  return kFailure;
}

struct SharedFlags {
  std::vector<std::string> configs;
  std::vector<std::string> preset_names;
  std::string out_dir = ".";
  std::string format;
  std::size_t modes = 0;
  double t_end = 0.0;
  bool spectra = false;
  bool seed_free = false;  // reserved; the engine has no randomness
};

std::filesystem::path resolve_out_dir(const SharedFlags& flags) {
  // Environment may override output paths only.
  if (const char* env = std::getenv("PBGSIM_OUT_DIR"); env && *env) {
    return env;
  }
  return flags.out_dir;
}

std::vector<pbgl::Scenario> collect_scenarios(const SharedFlags& flags) {
  std::vector<pbgl::Scenario> scenarios;
  for (const auto& name : flags.preset_names) {
    const pbgl::Scenario* preset = pbgl::find_preset(name);
    if (preset == nullptr) {
      throw pbgl::ConfigError("unknown preset: " + name);
    }
    scenarios.push_back(*preset);
  }
  for (const auto& path : flags.configs) {
    scenarios.push_back(pbgl::load_scenario_file(path));
  }
  if (scenarios.empty()) {
    throw pbgl::ConfigError("provide --preset NAME or --config PATH");
  }
  for (auto& s : scenarios) {
    if (flags.modes > 0) {
      // Quadratic band extent is N^2 * spacing; preserve it under the
      // override so --modes changes resolution, not physics.
      const double extent = static_cast<double>(s.quadratic.count) *
                            static_cast<double>(s.quadratic.count) *
                            s.quadratic.spacing;
      s.quadratic.count = flags.modes;
      s.quadratic.spacing = extent / (static_cast<double>(flags.modes) *
                                      static_cast<double>(flags.modes));
      s.recurrence.count = flags.modes;
      s.uniform.count = flags.modes;
    }
    if (flags.t_end > 0.0) s.run.t_end = flags.t_end;
    if (flags.spectra) s.run.record_spectra = true;
    if (flags.format == "csv") s.format = pbgl::OutputFormat::csv;
    if (flags.format == "structured") s.format = pbgl::OutputFormat::structured;
    pbgl::validate(s);
  }
  return scenarios;
}

int run_command(const SharedFlags& flags) {
  const auto scenarios = collect_scenarios(flags);
  const auto out_dir = resolve_out_dir(flags);

  if (scenarios.size() == 1) {
    const auto result = pbgl::run_scenario(scenarios.front(), out_dir);
    for (const auto& f : result.files_written) {
      std::cout << "wrote " << f.string() << '\n';
    }
    std::printf("norm drift max=%.3e final=%.3e (%zu steps)\n",
                result.stats.max_norm_drift, result.stats.final_norm_drift,
                result.stats.steps_accepted);
    return kOk;
  }

  // Batch mode: independent scenarios run concurrently, one output stem per
  // scenario name.
  std::vector<std::future<pbgl::RunResult>> futures;
  futures.reserve(scenarios.size());
  for (const auto& s : scenarios) {
    futures.push_back(std::async(std::launch::async, [s, out_dir] {
      return pbgl::run_scenario(s, out_dir);
    }));
  }
  int exit_code = kOk;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    try {
      const auto result = futures[i].get();
      for (const auto& f : result.files_written) {
        std::cout << "wrote " << f.string() << '\n';
      }
    } catch (const std::exception& e) {
      std::cerr << "scenario '" << scenarios[i].name << "' failed: "
                << e.what() << '\n';
      exit_code = std::max(exit_code, classify(e));
    }
  }
  return exit_code;
}

int list_presets_command() {
  std::printf("%-7s %-22s %-28s %10s %10s %8s\n", "name", "model", "grid",
              "delta12", "delta23", "t_end");
  for (const auto& s : pbgl::presets()) {
    std::string grid = pbgl::grid_name(s.grid);
    switch (s.grid) {
      case pbgl::GridKind::quadratic:
        grid += " N=" + std::to_string(s.quadratic.count);
        break;
      case pbgl::GridKind::recurrence:
        grid += " N=" + std::to_string(s.recurrence.count);
        break;
      case pbgl::GridKind::uniform:
        grid += " N=" + std::to_string(s.uniform.count);
        break;
    }
    std::printf("%-7s %-22s %-28s %10.5f %10.5f %8g\n", s.name.c_str(),
                pbgl::model_name(s.dos).c_str(), grid.c_str(),
                s.detuning_upper, s.detuning_lower, s.run.t_end);
    std::printf("        %s (frequencies in units of %s)\n",
                s.description.c_str(), s.unit_label.c_str());
  }
  return kOk;
}

int verify_command(bool inject_fault) {
  pbgl::VerifyOptions options;
  options.inject_coupling_sign_fault = inject_fault;
  const auto report = pbgl::run_verification(options);
  std::cout << pbgl::format_report(report);
  return report.all_passed() ? kOk : kFailure;
}

int dump_reservoir_command(const SharedFlags& flags) {
  const auto scenarios = collect_scenarios(flags);
  const auto out_dir = resolve_out_dir(flags);
  for (const auto& s : scenarios) {
    const auto path = pbgl::dump_reservoir(s, out_dir);
    std::cout << "wrote " << path.string() << '\n';
  }
  return kOk;
}

void add_shared_flags(CLI::App* cmd, SharedFlags& flags) {
  cmd->add_option("--config", flags.configs,
                  "scenario file (JSON); repeat for batch mode");
  cmd->add_option("--preset", flags.preset_names,
                  "built-in preset name (see list-presets); repeatable");
  cmd->add_option("--out", flags.out_dir, "output directory")
      ->default_val(".");
  cmd->add_option("--modes", flags.modes, "override the mode count N");
  cmd->add_option("--t-end", flags.t_end, "override the end time");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pbgsim: exact two-excitation dynamics of a cascade three-level atom "
      "coupled to a discretized structured reservoir"};
  app.require_subcommand(1);

  SharedFlags flags;
  bool inject_fault = false;

  CLI::App* run = app.add_subcommand(
      "run", "run one scenario (or several concurrently) and write outputs");
  add_shared_flags(run, flags);
  run->add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"csv", "structured"}));
  run->add_flag("--spectra", flags.spectra,
                "record per-sample photon spectra");
  run->add_flag("--seed-free", flags.seed_free,
                "reserved; the engine is deterministic and uses no RNG");

  CLI::App* list =
      app.add_subcommand("list-presets", "print the built-in parameter sets");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the built-in oracle suite and report residuals");
  verify->add_flag("--inject-fault", inject_fault,
                   "corrupt one coupling sign; the suite must then fail");

  CLI::App* dump = app.add_subcommand(
      "dump-reservoir", "write the discretized modes and couplings");
  add_shared_flags(dump, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (run->parsed()) return run_command(flags);
    if (list->parsed()) return list_presets_command();
    if (verify->parsed()) return verify_command(inject_fault);
    if (dump->parsed()) return dump_reservoir_command(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return classify(e);
  }
  return kOk;
}
