#include "pbgl/dynamics.hpp"

#include <cmath>

#include "pbgl/analysis.hpp"
#include "pbgl/errors.hpp"

namespace pbgl {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double max_transition_frequency(const LadderConfig& c) {
  const double ref = c.band_reference();
  return std::max(ref + c.detuning_upper(), ref + c.detuning_lower());
}

}  // namespace

std::array<double, 3> populations(const AmplitudeState& state) {
  const auto& amp = state.amplitudes;
  const StateLayout& lay = state.layout;
  const std::size_t n = lay.num_modes;
  double p1 = std::norm(amp[0]);
  double p2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) p2 += std::norm(amp[1 + j]);
  double p3 = 0.0;
  const std::size_t dim = lay.dimension();
  for (std::size_t i = 1 + n; i < dim; ++i) p3 += std::norm(amp[i]);
  return {p1, p2, p3};
}

double norm_squared(const AmplitudeState& state) {
  const auto p = populations(state);
  return p[0] + p[1] + p[2];
}

LadderConfig::LadderConfig(DiscretizedReservoir reservoir,
                           double detuning_upper, double detuning_lower)
    : reservoir_(std::move(reservoir)),
      detuning_upper_(detuning_upper),
      detuning_lower_(detuning_lower),
      reference_(pbgl::band_reference(reservoir_.source)) {
  if (reservoir_.size() == 0) {
    throw ValidationError("reservoir has no modes");
  }
  if (reservoir_.couplings_upper.size() != reservoir_.size() ||
      reservoir_.couplings_lower.size() != reservoir_.size()) {
    throw ValidationError("coupling arrays do not match the mode count");
  }
  if (!std::isfinite(detuning_upper_) || !std::isfinite(detuning_lower_)) {
    throw ValidationError("detunings must be finite");
  }
  const double w_upper = reference_ + detuning_upper_;
  const double w_lower = reference_ + detuning_lower_;
  // Transitions must stay clear of the eliminated tails: below the band top
  // always; above the band bottom as well when the gap sits inside the band
  // (Lorentzian). Band-edge detunings may be negative - that is the gap side.
  if (!(w_upper < reservoir_.band_high && w_lower < reservoir_.band_high)) {
    throw ValidationError(
        "transition frequencies must lie below the discretized band top");
  }
  if (std::holds_alternative<GeneralizedLorentzian>(reservoir_.source)) {
    if (!(w_upper > reservoir_.band_low && w_lower > reservoir_.band_low)) {
      throw ValidationError(
          "transition frequencies must lie inside the discretized band");
    }
  }
}

LadderRhs::LadderRhs(const LadderConfig& config, Frame frame)
    : layout_(config.layout()),
      frame_(frame),
      shift_upper_(config.reservoir().shift_upper),
      shift_lower_(config.reservoir().shift_lower),
      detuning_upper_(config.detuning_upper()),
      detuning_lower_(config.detuning_lower()),
      g_upper_(config.reservoir().couplings_upper),
      g_lower_(config.reservoir().couplings_lower) {
  const std::size_t n = layout_.num_modes;
  const double ref = config.band_reference();
  mode_offsets_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    mode_offsets_[j] = config.reservoir().mode_frequencies[j] - ref;
  }
  diag_b_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    diag_b_[j] = shift_lower_ - detuning_upper_ + mode_offsets_[j];
  }
  const double d2 = config.two_photon_detuning();
  diag_c_.resize(n * (n + 1) / 2);
  std::size_t p = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = j; m < n; ++m, ++p) {
      diag_c_[p] = mode_offsets_[j] + mode_offsets_[m] - d2;
    }
  }
  max_diagonal_ = std::abs(shift_upper_);
  for (double d : diag_b_) max_diagonal_ = std::max(max_diagonal_, std::abs(d));
  for (double d : diag_c_) max_diagonal_ = std::max(max_diagonal_, std::abs(d));
  phase_scratch_.resize(2 * n);
  sum_scratch_.resize(n);
}

void LadderRhs::operator()(double t, const ComplexVector& y,
                           ComplexVector& dydt) const {
  const std::size_t n = layout_.num_modes;
  dydt.resize(y.size());
  Complex* sums = sum_scratch_.data();
  for (std::size_t j = 0; j < n; ++j) sums[j] = Complex(0.0, 0.0);

  const Complex* b = y.data() + 1;
  const Complex* c = y.data() + 1 + n;
  Complex* db = dydt.data() + 1;
  Complex* dc = dydt.data() + 1 + n;
  const Complex a = y[0];

  if (frame_ == Frame::rotating) {
    // Photon-pair sector: one pass writes dC and accumulates the coupling
    // sums entering db.
    std::size_t p = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex bj = b[j];
      const double g2j = g_lower_[j];
      {
        const Complex cjj = c[p];
        const double d = diag_c_[p];
        const double s2g = kSqrt2 * g2j;
        dc[p] = Complex(d * cjj.imag() + s2g * bj.real(),
                        -d * cjj.real() + s2g * bj.imag());
        sums[j] += s2g * cjj;
        ++p;
      }
      for (std::size_t m = j + 1; m < n; ++m, ++p) {
        const Complex cjm = c[p];
        const double d = diag_c_[p];
        const double g2m = g_lower_[m];
        const Complex bm = b[m];
        dc[p] = Complex(d * cjm.imag() + g2m * bj.real() + g2j * bm.real(),
                        -d * cjm.real() + g2m * bj.imag() + g2j * bm.imag());
        sums[j] += g2m * cjm;
        sums[m] += g2j * cjm;
      }
    }
    Complex da(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const Complex bj = b[j];
      da -= g_upper_[j] * bj;
      const double d = diag_b_[j];
      db[j] = Complex(d * bj.imag() + g_upper_[j] * a.real() - sums[j].real(),
                      -d * bj.real() + g_upper_[j] * a.imag() - sums[j].imag());
    }
    da += Complex(shift_upper_ * a.imag(), -shift_upper_ * a.real());
    dydt[0] = da;
    return;
  }

  // Interaction picture: identical couplings dressed with explicit phases
  // exp(i delta t); delta1_j = detuning_upper - x_j, delta2_j follows suit.
  Complex* ph1 = phase_scratch_.data();
  Complex* ph2 = phase_scratch_.data() + n;
  for (std::size_t j = 0; j < n; ++j) {
    ph1[j] = std::polar(1.0, (detuning_upper_ - mode_offsets_[j]) * t);
    ph2[j] = std::polar(1.0, (detuning_lower_ - mode_offsets_[j]) * t);
  }

  std::size_t p = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex bj = b[j];
    const double g2j = g_lower_[j];
    {
      const Complex cjj = c[p];
      const double s2g = kSqrt2 * g2j;
      dc[p] = s2g * bj * std::conj(ph2[j]);
      sums[j] += s2g * cjj * ph2[j];
      ++p;
    }
    for (std::size_t m = j + 1; m < n; ++m, ++p) {
      const Complex cjm = c[p];
      const double g2m = g_lower_[m];
      dc[p] = g2m * bj * std::conj(ph2[m]) + g2j * b[m] * std::conj(ph2[j]);
      sums[j] += g2m * cjm * ph2[m];
      sums[m] += g2j * cjm * ph2[j];
    }
  }
  Complex da(0.0, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    da -= g_upper_[j] * b[j] * ph1[j];
    db[j] = Complex(shift_lower_ * b[j].imag(), -shift_lower_ * b[j].real()) +
            g_upper_[j] * a * std::conj(ph1[j]) - sums[j];
  }
  da += Complex(shift_upper_ * a.imag(), -shift_upper_ * a.real());
  dydt[0] = da;
}

ComplexVector rhs(const AmplitudeState& state, const LadderConfig& config,
                  Frame frame) {
  if (state.layout.num_modes != config.num_modes()) {
    throw ValidationError("state and config disagree on the mode count");
  }
  LadderRhs evaluator(config, frame);
  ComplexVector dydt(state.amplitudes.size());
  evaluator(state.time, state.amplitudes, dydt);
  return dydt;
}

AmplitudeState initial_state(const LadderConfig& config) {
  AmplitudeState state;
  state.layout = config.layout();
  state.amplitudes.assign(state.layout.dimension(), Complex(0.0, 0.0));
  state.amplitudes[0] = Complex(1.0, 0.0);
  return state;
}

AmplitudeState make_state(const LadderConfig& config, ComplexVector amplitudes,
                          double time) {
  AmplitudeState state;
  state.layout = config.layout();
  if (amplitudes.size() != state.layout.dimension()) {
    throw ValidationError("amplitude vector has the wrong dimension");
  }
  state.amplitudes = std::move(amplitudes);
  state.time = time;
  const double n2 = norm_squared(state);
  if (std::abs(n2 - 1.0) > 1e-10) {
    throw ValidationError("custom initial state is not normalized");
  }
  return state;
}

const std::vector<double>& TimeSeries::level(int level) const {
  switch (level) {
    case 1: return p1;
    case 2: return p2;
    case 3: return p3;
  }
  throw ValidationError("level must be 1, 2 or 3");
}

PropagateResult propagate(const LadderConfig& config,
                          const PropagateOptions& options) {
  return propagate(config, initial_state(config), options);
}

PropagateResult propagate(const LadderConfig& config,
                          const AmplitudeState& initial,
                          const PropagateOptions& options) {
  if (initial.layout.num_modes != config.num_modes()) {
    throw ValidationError("initial state does not match the config");
  }
  if (!(options.t_end > initial.time)) {
    throw ValidationError("t_end must exceed the initial time");
  }
  if (options.samples < 2) {
    throw ValidationError("need at least two samples");
  }
  {
    const double n2 = norm_squared(initial);
    if (std::abs(n2 - 1.0) > 1e-10) {
      throw ValidationError("initial state is not normalized");
    }
  }
  if (max_transition_frequency(config) >= config.reservoir().band_high) {
    throw ValidationError("transition frequencies reach the band top");
  }

  LadderRhs evaluator(config, options.frame);

  RkOptions rk;
  rk.rel_tol = options.rel_tol;
  rk.abs_tol = options.abs_tol;
  if (options.max_step) {
    rk.max_step = *options.max_step;
  } else if (evaluator.max_diagonal() > 0.0) {
    rk.max_step = 0.1 / evaluator.max_diagonal();
  }

  const double t0 = initial.time;
  const double span = options.t_end - t0;
  std::vector<double> sample_times(options.samples);
  for (std::size_t i = 0; i < options.samples; ++i) {
    sample_times[i] =
        t0 + span * static_cast<double>(i) /
                 static_cast<double>(options.samples - 1);
  }
  sample_times.back() = options.t_end;

  PropagateResult result;
  TimeSeries& series = result.series;
  series.times.reserve(options.samples);
  series.p1.reserve(options.samples);
  series.p2.reserve(options.samples);
  series.p3.reserve(options.samples);
  series.norm.reserve(options.samples);

  AmplitudeState probe;
  probe.layout = config.layout();

  double max_drift = 0.0;
  auto on_sample = [&](double t, const ComplexVector& y) {
    probe.time = t;
    probe.amplitudes = y;
    const auto p = populations(probe);
    const double n2 = p[0] + p[1] + p[2];
    const double drift = std::abs(n2 - 1.0);
    max_drift = std::max(max_drift, drift);
    if (drift > options.norm_drift_bound) {
      throw IntegratorError(
          "norm drift " + std::to_string(drift) + " exceeds the bound " +
          std::to_string(options.norm_drift_bound) +
          "; integrator tolerances are too loose for this scenario");
    }
    series.times.push_back(t);
    series.p1.push_back(p[0]);
    series.p2.push_back(p[1]);
    series.p3.push_back(p[2]);
    series.norm.push_back(std::sqrt(n2));
    if (options.record_spectra) {
      series.spectra.push_back(photon_spectrum(probe));
    }
  };

  ComplexVector y = initial.amplitudes;
  const RkStats rk_stats = integrate_sampled(
      [&evaluator](double t, const ComplexVector& state, ComplexVector& dydt) {
        evaluator(t, state, dydt);
      },
      y, t0, sample_times, on_sample, rk);

  result.stats.steps_accepted = rk_stats.steps_accepted;
  result.stats.steps_rejected = rk_stats.steps_rejected;
  result.stats.rhs_evaluations = rk_stats.rhs_evaluations;
  result.stats.max_norm_drift = max_drift;
  result.stats.max_step_used = rk.max_step;
  result.final_state.time = options.t_end;
  result.final_state.layout = config.layout();
  result.final_state.amplitudes = std::move(y);
  result.stats.final_norm_drift =
      std::abs(norm_squared(result.final_state) - 1.0);
  return result;
}

}  // namespace pbgl
