#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pbgl/analysis.hpp"
#include "pbgl/scenario.hpp"

namespace pbgl {

// Resolved parameters and run statistics, serialized into every output so a
// file reproduces itself.
using Metadata = std::vector<std::pair<std::string, std::string>>;

struct RunResult {
  Scenario scenario;  // as resolved (overrides applied)
  TimeSeries series;
  IntegratorStats stats;
  RegimeReport report;
  double shift_upper = 0.0;
  double shift_lower = 0.0;
  Metadata metadata;
  std::vector<std::filesystem::path> files_written;
};

// Full pipeline: validate, build the reservoir, propagate, analyze, write.
// Pass an empty directory to skip writing (library/test use).
RunResult run_scenario(const Scenario& scenario,
                       const std::filesystem::path& output_directory);

// Serializers (exposed for tests; the data sections are deterministic,
// timestamps only ever appear in '#' metadata lines or metadata objects).
std::string timeseries_csv(const TimeSeries& series, const Metadata& metadata);
std::string spectra_csv(const TimeSeries& series, const Metadata& metadata);
std::string reservoir_csv(const DiscretizedReservoir& reservoir,
                          const Metadata& metadata);
std::string report_json(const RunResult& result);
std::string structured_run_json(const RunResult& result);

// Reservoir dump without propagation (the dump-reservoir subcommand).
std::filesystem::path dump_reservoir(
    const Scenario& scenario, const std::filesystem::path& output_directory);

// 17 significant digits; round-trips doubles exactly.
std::string format_double(double value);

}  // namespace pbgl
