#include "pbgl/discretize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "pbgl/errors.hpp"
#include "pbgl/quadrature.hpp"

namespace pbgl {

namespace {

std::string describe(const char* fmt, double a, double b, double c) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

// Integrated density between two frequencies. Closed form for the band-edge
// model (the integrable 1/sqrt singularity), adaptive quadrature otherwise.
double cumulative_density(const DosModel& model, double from, double to) {
  if (const auto* iso = std::get_if<IsotropicBandEdge>(&model)) {
    if (!iso->rho0) {
      throw ValidationError("cumulative density needs rho0");
    }
    const double a = std::max(0.0, from - iso->edge_frequency);
    const double b = std::max(0.0, to - iso->edge_frequency);
    return 2.0 * *iso->rho0 * (std::sqrt(b) - std::sqrt(a));
  }
  return quad::integrate([&](double w) { return density(model, w); }, from, to,
                         1e-10)
      .value;
}

void check_clearance(double band_high, const TransitionFrequencies& atom,
                     double margin) {
  if (band_high < atom.highest() + margin) {
    throw GridError(
        "discretized band must clear both transition frequencies by the "
        "configured margin; raise the mode count or band top");
  }
}

void fill_shifts(DiscretizedReservoir& res, const TransitionFrequencies& atom,
                 const ShiftOptions& options = {}) {
  res.shift_upper = compute_shift(res.source, Transition::upper, atom.upper,
                                  res.band_low, res.band_high, options);
  res.shift_lower = compute_shift(res.source, Transition::lower, atom.lower,
                                  res.band_low, res.band_high, options);
}

}  // namespace

std::string grid_name(GridKind kind) {
  switch (kind) {
    case GridKind::quadratic: return "quadratic";
    case GridKind::recurrence: return "recurrence";
    case GridKind::uniform: return "uniform";
  }
  return "unknown";
}

DiscretizedReservoir build_quadratic_grid(const IsotropicBandEdge& model,
                                          const QuadraticGridParams& params,
                                          const TransitionFrequencies& atom,
                                          double clearance_margin) {
  validate(DosModel{model});
  if (params.count < 2) throw ValidationError("quadratic grid needs N >= 2");
  if (!(params.spacing > 0) || !std::isfinite(params.spacing)) {
    throw ValidationError("grid spacing must be positive");
  }
  const std::size_t n = params.count;
  const double extent = static_cast<double>(n) * static_cast<double>(n) *
                        params.spacing;  // w_N - edge

  DiscretizedReservoir res;
  res.grid = GridKind::quadratic;
  res.source = model;
  res.band_low = model.edge_frequency;
  res.band_high = model.edge_frequency + extent;
  check_clearance(res.band_high, atom, clearance_margin);

  res.mode_frequencies.resize(n);
  for (std::size_t j = 1; j <= n; ++j) {
    res.mode_frequencies[j - 1] =
        model.edge_frequency + static_cast<double>(j * j) * params.spacing;
  }
  const double g_upper =
      std::sqrt(2.0 * model.coupling_upper * std::sqrt(extent) /
                (static_cast<double>(n) * M_PI));
  const double g_lower =
      std::sqrt(2.0 * model.coupling_lower * std::sqrt(extent) /
                (static_cast<double>(n) * M_PI));
  res.couplings_upper.assign(n, g_upper);
  res.couplings_lower.assign(n, g_lower);

  fill_shifts(res, atom);
  res.grid_description =
      describe("quadratic: N=%.0f, spacing=%.6g, band_top=%.6g",
               static_cast<double>(n), params.spacing, res.band_high);
  return res;
}

DiscretizedReservoir build_recurrence_grid(const DosModel& model,
                                           const RecurrenceGridParams& params,
                                           const TransitionFrequencies& atom,
                                           double clearance_margin) {
  validate(model);
  if (params.count < 2) throw ValidationError("recurrence grid needs N >= 2");
  if (!std::isfinite(params.start)) {
    throw ValidationError("recurrence start must be finite");
  }
  const std::size_t n = params.count;
  const double floor = params.density_floor;

  auto rho = [&](double w) { return density(model, w); };

  // First seed: the point where the integrated density from `start` reaches
  // one mode.
  double hi = params.start;
  double span = 1.0;
  if (rho(params.start) > floor) span = 1.0 / rho(params.start);
  for (int k = 0; k < 200 && cumulative_density(model, params.start, hi) < 1.0;
       ++k) {
    hi += span;
    span *= 2.0;
    if (k == 199) {
      throw GridError("density too low to place the first mode");
    }
  }
  const double w1 = quad::find_root(
      [&](double w) { return cumulative_density(model, params.start, w) - 1.0; },
      params.start, hi);

  const double rho1 = rho(w1);
  if (rho1 <= floor) throw GridError("density underflow at the first mode");

  // Second seed: w2 = w1 + [1/rho(w1) + 1/rho(w2)] / 2, the half-spacing
  // relation the two-step recurrence is built from.
  auto seed2 = [&](double w) { return w - w1 - 0.5 / rho1 - 0.5 / rho(w); };
  double lo2 = w1 + 0.5 / rho1;
  double hi2 = lo2;
  span = 0.5 / rho1;
  for (int k = 0; k < 200 && seed2(hi2) < 0.0; ++k) {
    hi2 += span;
    span *= 2.0;
    if (k == 199) throw GridError("density too low to place the second mode");
  }
  const double w2 = quad::find_root(seed2, lo2, hi2);

  std::vector<double> w(n);
  w[0] = w1;
  w[1] = w2;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double r = rho(w[j]);
    if (r <= floor) {
      throw GridError("recurrence entered a vanishing-density region (gap)");
    }
    w[j + 1] = w[j - 1] + 2.0 / r;
    if (params.band_ceiling && w[j + 1] > *params.band_ceiling) {
      throw GridError("recurrence left the configured band");
    }
    if (!(w[j + 1] > w[j])) {
      throw GridError("recurrence produced a non-increasing grid");
    }
  }

  DiscretizedReservoir res;
  res.grid = GridKind::recurrence;
  res.source = model;
  res.band_low = params.start;
  res.band_high = w.back();
  check_clearance(res.band_high, atom, clearance_margin);
  res.mode_frequencies = std::move(w);

  res.couplings_upper.resize(n);
  res.couplings_lower.resize(n);
  const auto& freq = res.mode_frequencies;
  for (std::size_t j = 0; j < n; ++j) {
    double spacing;
    if (j == 0) {
      spacing = freq[1] - freq[0];
    } else if (j + 1 == n) {
      spacing = freq[n - 1] - freq[n - 2];
    } else {
      spacing = 0.5 * (freq[j + 1] - freq[j - 1]);
    }
    res.couplings_upper[j] = std::sqrt(
        spectral_response(model, Transition::upper, freq[j]) * spacing);
    res.couplings_lower[j] = std::sqrt(
        spectral_response(model, Transition::lower, freq[j]) * spacing);
  }

  fill_shifts(res, atom);
  res.grid_description =
      describe("recurrence: N=%.0f, start=%.6g, band_top=%.6g",
               static_cast<double>(n), params.start, res.band_high);
  return res;
}

DiscretizedReservoir build_uniform_grid(const GeneralizedLorentzian& model,
                                        const UniformGridParams& params,
                                        const TransitionFrequencies& atom,
                                        double clearance_margin) {
  validate(DosModel{model});
  if (params.count < 2) throw ValidationError("uniform grid needs N >= 2");
  if (!(params.low < params.high)) {
    throw ValidationError("uniform grid bounds are inverted or equal");
  }
  if (!(params.low < model.center_frequency &&
        model.center_frequency < params.high)) {
    throw ValidationError("uniform grid must straddle the gap center");
  }
  const std::size_t n = params.count;
  const double spacing =
      (params.high - params.low) / static_cast<double>(n - 1);

  DiscretizedReservoir res;
  res.grid = GridKind::uniform;
  res.source = model;
  res.band_low = params.low;
  res.band_high = params.high;
  check_clearance(res.band_high, atom, clearance_margin);

  res.mode_frequencies.resize(n);
  res.couplings_upper.resize(n);
  res.couplings_lower.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = i + 1 == n ? params.high
                                : params.low + static_cast<double>(i) * spacing;
    res.mode_frequencies[i] = w;
    // The two boundary modes stand for half cells; trapezoid weights keep
    // the coupling sum equal to the band integral of SR.
    const double cell = (i == 0 || i + 1 == n) ? 0.5 * spacing : spacing;
    res.couplings_upper[i] = std::sqrt(
        spectral_response(res.source, Transition::upper, w) * cell);
    res.couplings_lower[i] = std::sqrt(
        spectral_response(res.source, Transition::lower, w) * cell);
  }

  fill_shifts(res, atom);
  res.grid_description =
      describe("uniform: N=%.0f, band=[%.6g, %.6g]", static_cast<double>(n),
               params.low, params.high);
  return res;
}

double compute_shift(const DosModel& model, Transition transition,
                     double transition_frequency, double band_low,
                     double band_high, const ShiftOptions& options) {
  validate(model);
  if (!std::isfinite(transition_frequency)) {
    throw ValidationError("transition frequency must be finite");
  }
  if (!(band_low < band_high)) {
    throw ValidationError("band bounds are inverted or empty");
  }
  const double wa = transition_frequency;

  if (const auto* iso = std::get_if<IsotropicBandEdge>(&model)) {
    const double c = transition == Transition::upper ? iso->coupling_upper
                                                     : iso->coupling_lower;
    if (c == 0.0) return 0.0;
    const double xu = band_high - iso->edge_frequency;
    if (!(xu > 0)) {
      throw ValidationError("band top must lie above the edge");
    }
    if (wa >= band_high) {
      throw PoleError("transition frequency reaches the eliminated tail");
    }
    // u = 1 / sqrt(w - edge) maps [band_high, inf) to (0, 1/sqrt(xu)] and
    // turns the integrand into a smooth rational function:
    //   Lambda = (2 C / pi) Int_0^{umax} du / (delta u^2 - 1),
    // with delta = wa - edge < xu keeping the denominator negative.
    const double delta = wa - iso->edge_frequency;
    const double umax = 1.0 / std::sqrt(xu);
    const double front = 2.0 * c / M_PI;
    auto f = [&](double u) { return front / (delta * u * u - 1.0); };
    return quad::integrate(f, 0.0, umax, options.abs_tol).value;
  }

  const auto& lor = std::get<GeneralizedLorentzian>(model);
  const double gamma =
      transition == Transition::upper ? lor.rate_upper : lor.rate_lower;
  if (gamma == 0.0) return 0.0;
  if (!(wa > band_low && wa < band_high)) {
    throw PoleError(
        "transition frequency must lie strictly inside the discretized band");
  }
  const double lower_cut = options.lower_cutoff;
  if (lower_cut > band_low) {
    throw ValidationError("lower cutoff must not exceed the band bottom");
  }
  const double upper_cut =
      options.upper_cutoff ? *options.upper_cutoff : 2.0 * wa - lower_cut;
  if (upper_cut < band_high) {
    throw ValidationError(
        "upper cutoff falls below the band top; transition sits too low for "
        "the mirrored cutoff");
  }
  auto f = [&](double w) {
    return spectral_response(model, transition, w) / (wa - w);
  };
  const double tol = 0.5 * options.abs_tol;
  double shift = quad::integrate(f, lower_cut, band_low, tol).value;
  shift += quad::integrate(f, band_high, upper_cut, tol).value;
  return shift;
}

}  // namespace pbgl
