#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pbgl/dos.hpp"

namespace pbgl {

enum class GridKind { quadratic, recurrence, uniform };

std::string grid_name(GridKind kind);

// Absolute frequencies of the two atomic transitions (w1 - w2, w2 - w3).
struct TransitionFrequencies {
  double upper = 0.0;
  double lower = 0.0;
  double highest() const { return upper > lower ? upper : lower; }
};

struct QuadraticGridParams {
  std::size_t count = 150;   // N
  double spacing = 4.4e-4;   // delta-omega
};

struct RecurrenceGridParams {
  double start = 0.0;        // band boundary the seeding integrates from
  std::size_t count = 150;
  // Abort if a mode lands above this frequency (unset: no ceiling).
  std::optional<double> band_ceiling;
  // Abort when rho(w_j) falls to or below this value (gap region).
  double density_floor = 1e-12;
};

struct UniformGridParams {
  double low = 0.0;
  double high = 0.0;
  std::size_t count = 150;
};

struct ShiftOptions {
  double abs_tol = 1e-12;
  // Lorentzian tails are [lower_cutoff, band_low] and [band_high,
  // upper_cutoff]. By default the upper cutoff mirrors the lower one about
  // the transition frequency, so the flat plateau parts cancel in
  // principal-value fashion. The band-edge model ignores both cutoffs and
  // integrates [band_high, infinity).
  double lower_cutoff = 0.0;
  std::optional<double> upper_cutoff;
};

// A structured continuum reduced to N harmonic-oscillator modes plus the two
// perturbative level shifts from the eliminated off-resonant tails.
struct DiscretizedReservoir {
  std::vector<double> mode_frequencies;  // strictly increasing, inside band
  std::vector<double> couplings_upper;   // G1_j >= 0
  std::vector<double> couplings_lower;   // G2_j >= 0
  double band_low = 0.0;
  double band_high = 0.0;
  double shift_upper = 0.0;  // Lambda1; enters the motion as -i Lambda1 a
  double shift_lower = 0.0;  // Lambda2; enters as -i Lambda2 b_j
  DosModel source;           // provenance
  GridKind grid = GridKind::quadratic;
  std::string grid_description;

  std::size_t size() const { return mode_frequencies.size(); }
};

// Band-edge grid w_j = edge + j^2 spacing, j = 1..N, with the constant
// per-transition coupling sqrt(2 C sqrt(w_N - edge) / (N pi)). Rejects
// configurations where w_N does not clear both transition frequencies by
// `clearance_margin`.
DiscretizedReservoir build_quadratic_grid(const IsotropicBandEdge& model,
                                          const QuadraticGridParams& params,
                                          const TransitionFrequencies& atom,
                                          double clearance_margin = 1.0);

// General-DOS grid from the two-step recurrence
//   w_{j+1} = w_{j-1} + 2 / rho(w_j),
// seeded so one mode sits per unit of integrated density from `start`.
// Couplings satisfy G_j^2 = SR(w_j) * local spacing, with the spacing
// (w_{j+1} - w_{j-1}) / 2 in the interior and one-sided at the ends.
DiscretizedReservoir build_recurrence_grid(const DosModel& model,
                                           const RecurrenceGridParams& params,
                                           const TransitionFrequencies& atom,
                                           double clearance_margin = 1.0);

// Equidistant modes spanning [low, high] inclusive with per-mode couplings
// G(w_i) = sqrt(SR(w_i) * spacing).
DiscretizedReservoir build_uniform_grid(const GeneralizedLorentzian& model,
                                        const UniformGridParams& params,
                                        const TransitionFrequencies& atom,
                                        double clearance_margin = 1.0);

// Perturbative level shift of the eliminated continuum,
//   Lambda = Int SR(w) / (w_a - w) dw
// over the tails outside [band_low, band_high]. Band-edge model: upper tail
// only, mapped to a finite interval by u = 1 / sqrt(w - edge). Lorentzian:
// both tails with the ShiftOptions cutoffs. Throws PoleError when w_a lies in
// an integration domain and QuadratureError on non-convergence.
double compute_shift(const DosModel& model, Transition transition,
                     double transition_frequency, double band_low,
                     double band_high, const ShiftOptions& options = {});

}  // namespace pbgl
