#include "pbgl/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "pbgl/errors.hpp"

namespace pbgl {

namespace {

// Indices [first, last] of the samples falling inside the window.
std::pair<std::size_t, std::size_t> window_indices(const TimeSeries& series,
                                                   const Window& window) {
  if (series.size() == 0) throw AnalysisError("empty time series");
  if (!(window.t_begin <= window.t_end)) {
    throw AnalysisError("window is inverted");
  }
  const auto& t = series.times;
  std::size_t first = 0;
  while (first < t.size() && t[first] < window.t_begin) ++first;
  std::size_t last = t.size();
  while (last > 0 && t[last - 1] > window.t_end) --last;
  if (first >= last) throw AnalysisError("window contains no samples");
  return {first, last - 1};
}

double mean_of(const std::vector<double>& v, std::size_t first,
               std::size_t last) {
  double sum = 0.0;
  for (std::size_t i = first; i <= last; ++i) sum += v[i];
  return sum / static_cast<double>(last - first + 1);
}

}  // namespace

double trapping_fraction(const TimeSeries& series, int level,
                         double tail_window) {
  if (series.size() == 0) throw AnalysisError("empty time series");
  if (!(tail_window > 0.0 && tail_window < 1.0)) {
    throw AnalysisError("tail_window must lie in (0, 1)");
  }
  const auto& trace = series.level(level);
  const std::size_t n = series.size();
  const auto count = std::max<std::size_t>(
      1, static_cast<std::size_t>(
             std::llround(tail_window * static_cast<double>(n))));
  return mean_of(trace, n - count, n - 1);
}

double inphase_metric(const TimeSeries& series, int level_a, int level_b,
                      const Window& window) {
  const auto [first, last] = window_indices(series, window);
  const std::size_t n = last - first + 1;
  if (n < 16) throw AnalysisError("inphase_metric needs >= 16 samples");
  const auto& a = series.level(level_a);
  const auto& b = series.level(level_b);
  const double ma = mean_of(a, first, last);
  const double mb = mean_of(b, first, last);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  const double tiny = 1e-28 * static_cast<double>(n);
  if (saa <= tiny || sbb <= tiny) {
    throw ZeroVarianceError("correlation undefined: a trace has no variance");
  }
  return sab / std::sqrt(saa * sbb);
}

SpectralPeak spectral_peak(const TimeSeries& series, int level,
                           const Window& window) {
  const auto [first, last] = window_indices(series, window);
  const std::size_t n = last - first + 1;
  if (n < 8) throw AnalysisError("spectral_peak needs >= 8 samples");
  const auto& t = series.times;
  const double dt = (t[last] - t[first]) / static_cast<double>(n - 1);
  for (std::size_t i = first; i < last; ++i) {
    if (std::abs((t[i + 1] - t[i]) - dt) > 1e-9 * std::max(dt, 1.0)) {
      throw AnalysisError("spectral_peak needs uniform sampling");
    }
  }
  const auto& trace = series.level(level);
  const double mean = mean_of(trace, first, last);

  // Mean removal plus a Hann taper; amplitudes normalized so a bin-centered
  // pure cosine of amplitude A reads A.
  std::vector<double> x(n);
  double wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w =
        0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) /
                              static_cast<double>(n - 1)));
    x[i] = (trace[first + i] - mean) * w;
    wsum += w;
  }

  SpectralPeak peak;
  std::size_t kmax = n / 2;
  for (std::size_t k = 1; k <= kmax; ++k) {
    double re = 0.0, im = 0.0;
    const double step = -2.0 * M_PI * static_cast<double>(k) /
                        static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double ph = step * static_cast<double>(i);
      re += x[i] * std::cos(ph);
      im += x[i] * std::sin(ph);
    }
    const double amp = 2.0 * std::hypot(re, im) / wsum;
    if (amp > peak.amplitude) {
      peak.amplitude = amp;
      peak.angular_frequency = 2.0 * M_PI * static_cast<double>(k) /
                               (static_cast<double>(n) * dt);
    }
  }
  if (peak.amplitude <= 1e-9) {
    throw NoOscillationError("no spectral peak above the noise floor");
  }
  return peak;
}

double dominant_frequency(const TimeSeries& series, int level,
                          const Window& window) {
  return spectral_peak(series, level, window).angular_frequency;
}

std::vector<double> photon_spectrum(const AmplitudeState& state) {
  const StateLayout& lay = state.layout;
  const std::size_t n = lay.num_modes;
  std::vector<double> occupation(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    occupation[j] = std::norm(state.amplitudes[lay.b_index(j)]);
  }
  std::size_t p = lay.num_modes + 1;
  for (std::size_t j = 0; j < n; ++j) {
    occupation[j] += 2.0 * std::norm(state.amplitudes[p]);
    ++p;
    for (std::size_t m = j + 1; m < n; ++m, ++p) {
      const double w = std::norm(state.amplitudes[p]);
      occupation[j] += w;
      occupation[m] += w;
    }
  }
  return occupation;
}

RegimeReport make_regime_report(const TimeSeries& series,
                                const RegimeOptions& options) {
  if (series.size() < 2) throw AnalysisError("series too short");
  RegimeReport report;
  report.transient_end = options.transient_end;
  report.tail_window_fraction = options.tail_window;
  const double t_last = series.times.back();
  const double t_dyn =
      options.transient_end < t_last ? options.transient_end : series.times.front();
  report.dynamic_window = Window{t_dyn, t_last};

  for (int level = 1; level <= 3; ++level) {
    report.trapped_fraction[level - 1] =
        trapping_fraction(series, level, options.tail_window);
    try {
      report.oscillation_frequency[level - 1] =
          dominant_frequency(series, level, report.dynamic_window);
    } catch (const AnalysisError&) {
      report.oscillation_frequency[level - 1] = std::nullopt;
    }
  }
  try {
    report.inphase_p2_p3 = inphase_metric(series, 2, 3, report.dynamic_window);
  } catch (const AnalysisError&) {
    report.inphase_p2_p3 = std::nullopt;
  }
  report.p2_dynamic_std = window_std(series, 2, report.dynamic_window);
  return report;
}

double window_mean(const TimeSeries& series, int level, const Window& window) {
  const auto [first, last] = window_indices(series, window);
  return mean_of(series.level(level), first, last);
}

double window_std(const TimeSeries& series, int level, const Window& window) {
  const auto [first, last] = window_indices(series, window);
  const auto& trace = series.level(level);
  const double mean = mean_of(trace, first, last);
  double ss = 0.0;
  for (std::size_t i = first; i <= last; ++i) {
    const double d = trace[i] - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(last - first + 1));
}

double peak_to_peak(const TimeSeries& series, int level,
                    const Window& window) {
  const auto [first, last] = window_indices(series, window);
  const auto& trace = series.level(level);
  double lo = trace[first], hi = trace[first];
  for (std::size_t i = first; i <= last; ++i) {
    lo = std::min(lo, trace[i]);
    hi = std::max(hi, trace[i]);
  }
  return hi - lo;
}

double window_max(const TimeSeries& series, int level, const Window& window) {
  const auto [first, last] = window_indices(series, window);
  const auto& trace = series.level(level);
  double hi = trace[first];
  for (std::size_t i = first; i <= last; ++i) hi = std::max(hi, trace[i]);
  return hi;
}

}  // namespace pbgl
