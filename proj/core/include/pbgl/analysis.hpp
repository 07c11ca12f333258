#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pbgl/dynamics.hpp"

namespace pbgl {

// Closed time window [t_begin, t_end] over a sampled series.
struct Window {
  double t_begin = 0.0;
  double t_end = 0.0;
};

// Mean population of `level` over the final `tail_window` fraction of
// samples; tail_window in (0, 1).
double trapping_fraction(const TimeSeries& series, int level,
                         double tail_window);

// Pearson correlation of the two mean-removed population traces over the
// window (>= 16 samples required). Throws ZeroVarianceError when a trace is
// constant - distinct from a numeric zero.
double inphase_metric(const TimeSeries& series, int level_a, int level_b,
                      const Window& window);

struct SpectralPeak {
  double angular_frequency = 0.0;
  double amplitude = 0.0;  // population units; a pure A cos(wt) reads ~A
};

// Largest non-DC peak of the mean-removed, Hann-tapered trace. Throws
// NoOscillationError when nothing rises above the noise floor.
SpectralPeak spectral_peak(const TimeSeries& series, int level,
                           const Window& window);

// Angular frequency of the dominant oscillation (one DFT bin resolution).
double dominant_frequency(const TimeSeries& series, int level,
                          const Window& window);

// Expected photon number per mode: |b_j|^2 plus every stored pair amplitude
// counted once per photon (twice on the diagonal). Sums to P2 + 2 P3.
std::vector<double> photon_spectrum(const AmplitudeState& state);

struct RegimeOptions {
  double transient_end = 5.0;   // start of the dynamic regime
  double tail_window = 0.25;    // fraction of samples forming the tail
};

struct RegimeReport {
  double transient_end = 0.0;
  Window dynamic_window;
  double tail_window_fraction = 0.0;
  std::array<double, 3> trapped_fraction{};
  // Empty when no oscillation is detected for that level.
  std::array<std::optional<double>, 3> oscillation_frequency{};
  // Empty when either trace has no variance.
  std::optional<double> inphase_p2_p3;
  double p2_dynamic_std = 0.0;  // flatness of the intermediate level
};

RegimeReport make_regime_report(const TimeSeries& series,
                                const RegimeOptions& options = {});

// Window helpers shared by the report and the acceptance checks.
double window_mean(const TimeSeries& series, int level, const Window& window);
double window_std(const TimeSeries& series, int level, const Window& window);
double peak_to_peak(const TimeSeries& series, int level, const Window& window);
double window_max(const TimeSeries& series, int level, const Window& window);

}  // namespace pbgl
