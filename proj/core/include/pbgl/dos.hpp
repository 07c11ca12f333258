#pragma once

#include <optional>
#include <string>
#include <variant>

namespace pbgl {

enum class Transition { upper, lower };

// Density of states with an inverse-square-root divergence at a band edge:
//
//   rho(w) = rho0 / sqrt(w - edge)            for w > edge, 0 otherwise,
//   SR(w)  = (C / pi) / sqrt(w - edge)        for w > edge, 0 otherwise,
//
// where C is the effective coupling of the chosen transition (units
// frequency^{3/2}). All frequencies are conventionally expressed in units of
// coupling_upper^{2/3}; the engine itself is unit-agnostic.
struct IsotropicBandEdge {
  double edge_frequency = 0.0;
  double coupling_upper = 1.0;  // C1, effective coupling of |1> -> |2>
  double coupling_lower = 1.0;  // C2, effective coupling of |2> -> |3>
  // Normalization of rho(w). The physics never needs it independently
  // (couplings come from SR, spacings from the grid), so it is optional and
  // only the mode-placement recurrence reads it. with_rho0_from_spacing sets
  // the value that makes the recurrence reproduce the quadratic grid.
  std::optional<double> rho0;
};

// Inverted generalized Lorentzian dip of even order n, approaching the
// free-space plateau far from the gap center:
//
//   rho(w) = rho0  * [1 - G^n / ((w - center)^n + G^n)]
//   SR(w)  = (gamma / 2 pi) * [1 - G^n / ((w - center)^n + G^n)]
//
// gamma is the free-space decay rate of the chosen transition's upper state.
// Frequencies are conventionally in units of rate_lower (gamma2).
struct GeneralizedLorentzian {
  double center_frequency = 0.0;
  double half_width = 1.0;  // G
  int order = 6;            // n, positive even integer
  double rate_upper = 1.0;  // gamma1
  double rate_lower = 1.0;  // gamma2
  double rho0 = 1.0;
};

using DosModel = std::variant<IsotropicBandEdge, GeneralizedLorentzian>;

// Throws ValidationError for non-finite parameters, negative couplings or
// rates, non-positive half width, or an order that is not a positive even
// integer.
void validate(const DosModel& model);

// rho(w). The band-edge variant requires rho0 to be set. Rejects non-finite w.
double density(const DosModel& model, double omega);

// Spectral response SR(w) >= 0 of the chosen transition. The band-edge
// variant is singular as w -> edge from above; callers never sample the edge
// itself (SR(edge) returns 0 by the step-function convention).
double spectral_response(const DosModel& model, Transition transition,
                         double omega);

// Plateau the spectral response approaches far from the gap (gamma / 2 pi).
// The band-edge variant has no plateau; returns 0.
double free_space_response(const DosModel& model, Transition transition);

// True when the relative spectral response SR(w)/SR_free is at or below
// `threshold`. Band-edge variant: true iff w <= edge. threshold must lie in
// (0, 1].
bool in_gap(const DosModel& model, double omega, double threshold);

// Frequency the atomic detunings are measured from: the edge for the
// band-edge variant, the gap center for the Lorentzian.
double band_reference(const DosModel& model);

// Short human-readable tag ("isotropic_band_edge" / "generalized_lorentzian").
std::string model_name(const DosModel& model);

// Copy of `model` with rho0 = 1 / (2 sqrt(spacing)), the normalization under
// which the two-step recurrence reproduces the quadratic grid exactly.
IsotropicBandEdge with_rho0_from_spacing(IsotropicBandEdge model,
                                         double spacing);

}  // namespace pbgl
