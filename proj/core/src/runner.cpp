#include "pbgl/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pbgl/errors.hpp"

namespace pbgl {

namespace {

using Json = nlohmann::ordered_json;

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

Metadata build_metadata(const Scenario& s, const LadderConfig& config,
                        const IntegratorStats& stats) {
  const auto& res = config.reservoir();
  Metadata meta;
  auto add = [&meta](std::string key, std::string value) {
    meta.emplace_back(std::move(key), std::move(value));
  };
  auto addf = [&](std::string key, double value) {
    add(std::move(key), format_double(value));
  };
  add("scenario", s.name);
  if (!s.description.empty()) add("description", s.description);
  add("unit", s.unit_label);
  add("dos_model", model_name(res.source));
  if (const auto* iso = std::get_if<IsotropicBandEdge>(&res.source)) {
    addf("edge_frequency", iso->edge_frequency);
    addf("coupling_upper", iso->coupling_upper);
    addf("coupling_lower", iso->coupling_lower);
    if (iso->rho0) addf("rho0", *iso->rho0);
  } else {
    const auto& lor = std::get<GeneralizedLorentzian>(res.source);
    addf("center_frequency", lor.center_frequency);
    addf("half_width", lor.half_width);
    add("order", std::to_string(lor.order));
    addf("rate_upper", lor.rate_upper);
    addf("rate_lower", lor.rate_lower);
    addf("rho0", lor.rho0);
  }
  add("grid", res.grid_description);
  add("modes", std::to_string(res.size()));
  addf("band_low", res.band_low);
  addf("band_high", res.band_high);
  addf("shift_upper", res.shift_upper);
  addf("shift_lower", res.shift_lower);
  addf("delta12", config.detuning_upper());
  addf("delta23", config.detuning_lower());
  addf("two_photon_detuning", config.two_photon_detuning());
  addf("t_end", s.run.t_end);
  add("samples", std::to_string(s.run.samples));
  addf("rel_tol", s.run.rel_tol);
  addf("abs_tol", s.run.abs_tol);
  addf("norm_drift_bound", s.run.norm_drift_bound);
  add("frame", s.run.frame == Frame::rotating ? "rotating" : "interaction");
  addf("max_step", stats.max_step_used);
  add("steps_accepted", std::to_string(stats.steps_accepted));
  add("steps_rejected", std::to_string(stats.steps_rejected));
  add("rhs_evaluations", std::to_string(stats.rhs_evaluations));
  addf("final_norm_drift", stats.final_norm_drift);
  addf("max_norm_drift", stats.max_norm_drift);
  addf("transient_end", s.regime.transient_end);
  addf("tail_window", s.regime.tail_window);
  return meta;
}

std::string metadata_header(const Metadata& meta) {
  std::ostringstream out;
  for (const auto& [key, value] : meta) {
    out << "# " << key << " = " << value << "\n";
  }
  // Timestamp stays inside the '#' header so data sections compare equal
  // across runs.
  out << "# generated_at = " << timestamp_utc() << "\n";
  return out.str();
}

Json metadata_json(const Metadata& meta) {
  Json j;
  for (const auto& [key, value] : meta) j[key] = value;
  j["generated_at"] = timestamp_utc();
  return j;
}

Json report_to_json(const RegimeReport& r) {
  Json j;
  j["transient_end"] = r.transient_end;
  j["dynamic_window"] = Json{{"t_begin", r.dynamic_window.t_begin},
                             {"t_end", r.dynamic_window.t_end}};
  j["tail_window_fraction"] = r.tail_window_fraction;
  j["trapped_fraction"] = Json{{"level1", r.trapped_fraction[0]},
                               {"level2", r.trapped_fraction[1]},
                               {"level3", r.trapped_fraction[2]}};
  Json freq;
  const char* keys[3] = {"level1", "level2", "level3"};
  for (int i = 0; i < 3; ++i) {
    if (r.oscillation_frequency[i]) {
      freq[keys[i]] = *r.oscillation_frequency[i];
    } else {
      freq[keys[i]] = nullptr;
    }
  }
  j["oscillation_frequency"] = freq;
  if (r.inphase_p2_p3) {
    j["inphase_p2_p3"] = *r.inphase_p2_p3;
  } else {
    j["inphase_p2_p3"] = nullptr;
  }
  j["p2_dynamic_std"] = r.p2_dynamic_std;
  return j;
}

Json series_to_json(const TimeSeries& series) {
  Json j;
  j["t"] = series.times;
  j["P1"] = series.p1;
  j["P2"] = series.p2;
  j["P3"] = series.p3;
  j["norm"] = series.norm;
  if (!series.spectra.empty()) j["photon_spectra"] = series.spectra;
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string timeseries_csv(const TimeSeries& series, const Metadata& meta) {
  std::ostringstream out;
  out << metadata_header(meta);
  out << "t,P1,P2,P3,norm\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_double(series.times[i]) << ',' << format_double(series.p1[i])
        << ',' << format_double(series.p2[i]) << ','
        << format_double(series.p3[i]) << ',' << format_double(series.norm[i])
        << '\n';
  }
  return out.str();
}

std::string spectra_csv(const TimeSeries& series, const Metadata& meta) {
  if (series.spectra.empty()) {
    throw ValidationError("no photon spectra were recorded");
  }
  std::ostringstream out;
  out << metadata_header(meta);
  out << "t";
  for (std::size_t j = 0; j < series.spectra.front().size(); ++j) {
    out << ",n_" << (j + 1);
  }
  out << '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_double(series.times[i]);
    for (double occ : series.spectra[i]) out << ',' << format_double(occ);
    out << '\n';
  }
  return out.str();
}

std::string reservoir_csv(const DiscretizedReservoir& reservoir,
                          const Metadata& meta) {
  std::ostringstream out;
  out << metadata_header(meta);
  out << "index,omega,g_upper,g_lower\n";
  for (std::size_t j = 0; j < reservoir.size(); ++j) {
    out << (j + 1) << ',' << format_double(reservoir.mode_frequencies[j])
        << ',' << format_double(reservoir.couplings_upper[j]) << ','
        << format_double(reservoir.couplings_lower[j]) << '\n';
  }
  return out.str();
}

std::string report_json(const RunResult& result) {
  Json j;
  j["scenario"] = Json::parse(scenario_to_json(result.scenario));
  j["metadata"] = metadata_json(result.metadata);
  j["regime_report"] = report_to_json(result.report);
  return j.dump(2) + "\n";
}

std::string structured_run_json(const RunResult& result) {
  Json j;
  j["scenario"] = Json::parse(scenario_to_json(result.scenario));
  j["metadata"] = metadata_json(result.metadata);
  j["regime_report"] = report_to_json(result.report);
  j["series"] = series_to_json(result.series);
  return j.dump(2) + "\n";
}

RunResult run_scenario(const Scenario& scenario,
                       const std::filesystem::path& output_directory) {
  RunResult result;
  result.scenario = scenario;
  LadderConfig config = build_ladder_config(scenario);
  result.shift_upper = config.reservoir().shift_upper;
  result.shift_lower = config.reservoir().shift_lower;

  PropagateResult prop = propagate(config, scenario.run);
  result.series = std::move(prop.series);
  result.stats = prop.stats;
  result.report = make_regime_report(result.series, scenario.regime);
  result.metadata = build_metadata(scenario, config, result.stats);

  if (output_directory.empty()) return result;

  std::error_code ec;
  std::filesystem::create_directories(output_directory, ec);
  if (ec) {
    throw IoError("cannot create output directory: " +
                  output_directory.string());
  }
  const std::string stem = scenario.name.empty() ? "run" : scenario.name;

  if (scenario.format == OutputFormat::structured) {
    const auto path = output_directory / (stem + "_run.json");
    write_file(path, structured_run_json(result));
    result.files_written.push_back(path);
  } else {
    const auto path = output_directory / (stem + "_timeseries.csv");
    write_file(path, timeseries_csv(result.series, result.metadata));
    result.files_written.push_back(path);
    if (scenario.run.record_spectra) {
      const auto spath = output_directory / (stem + "_spectra.csv");
      write_file(spath, spectra_csv(result.series, result.metadata));
      result.files_written.push_back(spath);
    }
    if (scenario.write_report) {
      const auto rpath = output_directory / (stem + "_report.json");
      write_file(rpath, report_json(result));
      result.files_written.push_back(rpath);
    }
  }
  if (scenario.write_reservoir) {
    const auto path = output_directory / (stem + "_reservoir.csv");
    write_file(path,
               reservoir_csv(config.reservoir(), result.metadata));
    result.files_written.push_back(path);
  }
  return result;
}

std::filesystem::path dump_reservoir(
    const Scenario& scenario, const std::filesystem::path& output_directory) {
  LadderConfig config = build_ladder_config(scenario);
  IntegratorStats stats;  // no propagation ran
  const Metadata meta = build_metadata(scenario, config, stats);

  std::error_code ec;
  std::filesystem::create_directories(output_directory, ec);
  if (ec) {
    throw IoError("cannot create output directory: " +
                  output_directory.string());
  }
  const std::string stem = scenario.name.empty() ? "run" : scenario.name;
  const auto path = output_directory / (stem + "_reservoir.csv");
  write_file(path, reservoir_csv(config.reservoir(), meta));
  return path;
}

}  // namespace pbgl
