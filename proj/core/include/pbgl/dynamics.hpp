#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "pbgl/discretize.hpp"
#include "pbgl/rk.hpp"

namespace pbgl {

// Layout of the two-excitation amplitude vector. Index 0 holds `a` (atom in
// |1>, field vacuum), indices 1..N hold b_j (atom in |2>, one photon in mode
// j), and the rest the packed upper triangle C_{jm} with j <= m (atom in |3>,
// photons in modes j and m). C_jj multiplies the normalized two-photon Fock
// state, so the squared norm is the plain sum over stored entries. Exchange
// symmetry is structural: only j <= m exists.
struct StateLayout {
  std::size_t num_modes = 0;

  std::size_t dimension() const {
    return 1 + num_modes + num_modes * (num_modes + 1) / 2;
  }
  std::size_t a_index() const { return 0; }
  std::size_t b_index(std::size_t j) const { return 1 + j; }
  // j <= m required.
  std::size_t c_index(std::size_t j, std::size_t m) const {
    return 1 + num_modes + j * num_modes - j * (j - 1) / 2 + (m - j);
  }
};

struct AmplitudeState {
  double time = 0.0;
  StateLayout layout;
  ComplexVector amplitudes;

  Complex a() const { return amplitudes[layout.a_index()]; }
  Complex b(std::size_t j) const { return amplitudes[layout.b_index(j)]; }
  Complex c(std::size_t j, std::size_t m) const {  // symmetric accessor
    return j <= m ? amplitudes[layout.c_index(j, m)]
                  : amplitudes[layout.c_index(m, j)];
  }
};

// {P1, P2, P3}: probabilities of finding the atom in each level.
std::array<double, 3> populations(const AmplitudeState& state);

// |a|^2 + sum_j |b_j|^2 + sum_{j<=m} |C_jm|^2; the unitarity monitor.
double norm_squared(const AmplitudeState& state);

// Reservoir plus the atomic detunings relative to the band reference
// frequency (edge or gap center).
class LadderConfig {
 public:
  LadderConfig(DiscretizedReservoir reservoir, double detuning_upper,
               double detuning_lower);

  const DiscretizedReservoir& reservoir() const { return reservoir_; }
  double detuning_upper() const { return detuning_upper_; }  // delta12
  double detuning_lower() const { return detuning_lower_; }  // delta23
  double two_photon_detuning() const {
    return detuning_upper_ + detuning_lower_;
  }
  double band_reference() const { return reference_; }
  std::size_t num_modes() const { return reservoir_.size(); }
  StateLayout layout() const { return StateLayout{num_modes()}; }

 private:
  DiscretizedReservoir reservoir_;
  double detuning_upper_;
  double detuning_lower_;
  double reference_;
};

enum class Frame {
  // Time-independent representation: mode detunings and shifts on the
  // diagonal, real couplings off it.
  rotating,
  // Explicit phase factors exp(+-i delta t) on the couplings; equivalent
  // populations, amplitudes differ by pure phases.
  interaction,
};

// Cached right-hand side evaluator for the amplitude equations of motion.
class LadderRhs {
 public:
  LadderRhs(const LadderConfig& config, Frame frame);

  void operator()(double t, const ComplexVector& y, ComplexVector& dydt) const;

  // Largest diagonal magnitude of the rotating-frame generator; sets the
  // integrator's step ceiling.
  double max_diagonal() const { return max_diagonal_; }
  std::size_t dimension() const { return layout_.dimension(); }

 private:
  StateLayout layout_;
  Frame frame_;
  double shift_upper_;
  double shift_lower_;
  double detuning_upper_;
  double detuning_lower_;
  std::vector<double> mode_offsets_;  // mode frequency minus band reference
  std::vector<double> g_upper_;
  std::vector<double> g_lower_;
  std::vector<double> diag_b_;
  std::vector<double> diag_c_;
  double max_diagonal_ = 0.0;
  mutable std::vector<Complex> phase_scratch_;
  mutable std::vector<Complex> sum_scratch_;
};

// Convenience single-shot evaluation (tests, small states).
ComplexVector rhs(const AmplitudeState& state, const LadderConfig& config,
                  Frame frame = Frame::rotating);

struct PropagateOptions {
  double t_end = 100.0;
  std::size_t samples = 500;  // uniform grid including t = 0
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double norm_drift_bound = 1e-6;
  Frame frame = Frame::rotating;
  // Step ceiling; defaults to 0.1 / max |diagonal|.
  std::optional<double> max_step;
  bool record_spectra = false;
};

struct IntegratorStats {
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
  std::size_t rhs_evaluations = 0;
  double final_norm_drift = 0.0;  // |norm^2(t_end) - 1|
  double max_norm_drift = 0.0;
  double max_step_used = 0.0;     // the ceiling actually applied
};

// Sampled level populations and norm. `norm` stores the 2-norm, so
// P1 + P2 + P3 reproduces norm^2.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> p1;
  std::vector<double> p2;
  std::vector<double> p3;
  std::vector<double> norm;
  // One row per sample when spectra were recorded: expected photon number
  // per mode.
  std::vector<std::vector<double>> spectra;

  std::size_t size() const { return times.size(); }
  const std::vector<double>& level(int level) const;
};

struct PropagateResult {
  TimeSeries series;
  IntegratorStats stats;
  AmplitudeState final_state;
};

// Atom in |1>, field vacuum, t = 0.
AmplitudeState initial_state(const LadderConfig& config);

// Arbitrary initial superposition; rejects vectors whose squared norm
// deviates from 1 by more than 1e-10.
AmplitudeState make_state(const LadderConfig& config, ComplexVector amplitudes,
                          double time = 0.0);

PropagateResult propagate(const LadderConfig& config,
                          const PropagateOptions& options = {});
PropagateResult propagate(const LadderConfig& config,
                          const AmplitudeState& initial,
                          const PropagateOptions& options = {});

}  // namespace pbgl
