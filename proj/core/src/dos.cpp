#include "pbgl/dos.hpp"

#include <cmath>

#include "pbgl/errors.hpp"

namespace pbgl {

namespace {

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw ValidationError(std::string(what) + " must be finite");
  }
}

// (w - center)^n for even n, written so that the result is exactly symmetric
// under w -> 2*center - w.
double even_power(double distance, int order) {
  return std::pow(distance * distance, order / 2);
}

// Relative dip profile p / (p + G^n) in [0, 1]; exactly 0 at the center.
double lorentzian_profile(const GeneralizedLorentzian& m, double omega) {
  const double p = even_power(omega - m.center_frequency, m.order);
  const double gn = even_power(m.half_width, m.order);
  return p / (p + gn);
}

}  // namespace

void validate(const DosModel& model) {
  if (const auto* iso = std::get_if<IsotropicBandEdge>(&model)) {
    check_finite(iso->edge_frequency, "edge_frequency");
    check_finite(iso->coupling_upper, "coupling_upper");
    check_finite(iso->coupling_lower, "coupling_lower");
    if (iso->coupling_upper < 0 || iso->coupling_lower < 0) {
      throw ValidationError("effective couplings must be nonnegative");
    }
    if (iso->rho0 && (!std::isfinite(*iso->rho0) || *iso->rho0 <= 0)) {
      throw ValidationError("rho0 must be positive and finite");
    }
    return;
  }
  const auto& lor = std::get<GeneralizedLorentzian>(model);
  check_finite(lor.center_frequency, "center_frequency");
  check_finite(lor.half_width, "half_width");
  check_finite(lor.rate_upper, "rate_upper");
  check_finite(lor.rate_lower, "rate_lower");
  check_finite(lor.rho0, "rho0");
  if (lor.half_width <= 0) {
    throw ValidationError("half_width must be positive");
  }
  if (lor.order <= 0 || lor.order % 2 != 0) {
    throw ValidationError("order must be a positive even integer");
  }
  if (lor.rate_upper < 0 || lor.rate_lower < 0) {
    throw ValidationError("free-space decay rates must be nonnegative");
  }
  if (lor.rho0 <= 0) {
    throw ValidationError("rho0 must be positive");
  }
}

double density(const DosModel& model, double omega) {
  validate(model);
  check_finite(omega, "omega");
  if (const auto* iso = std::get_if<IsotropicBandEdge>(&model)) {
    if (!iso->rho0) {
      throw ValidationError(
          "band-edge density needs rho0; supply it or use "
          "with_rho0_from_spacing");
    }
    const double x = omega - iso->edge_frequency;
    if (x <= 0) return 0.0;
    return *iso->rho0 / std::sqrt(x);
  }
  const auto& lor = std::get<GeneralizedLorentzian>(model);
  return lor.rho0 * lorentzian_profile(lor, omega);
}

double spectral_response(const DosModel& model, Transition transition,
                         double omega) {
  validate(model);
  check_finite(omega, "omega");
  if (const auto* iso = std::get_if<IsotropicBandEdge>(&model)) {
    const double c = transition == Transition::upper ? iso->coupling_upper
                                                     : iso->coupling_lower;
    const double x = omega - iso->edge_frequency;
    if (x <= 0) return 0.0;
    return c / (M_PI * std::sqrt(x));
  }
  const auto& lor = std::get<GeneralizedLorentzian>(model);
  const double gamma =
      transition == Transition::upper ? lor.rate_upper : lor.rate_lower;
  return gamma / (2.0 * M_PI) * lorentzian_profile(lor, omega);
}

double free_space_response(const DosModel& model, Transition transition) {
  if (std::holds_alternative<IsotropicBandEdge>(model)) return 0.0;
  const auto& lor = std::get<GeneralizedLorentzian>(model);
  const double gamma =
      transition == Transition::upper ? lor.rate_upper : lor.rate_lower;
  return gamma / (2.0 * M_PI);
}

bool in_gap(const DosModel& model, double omega, double threshold) {
  validate(model);
  check_finite(omega, "omega");
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw ValidationError("in_gap threshold must lie in (0, 1]");
  }
  if (const auto* iso = std::get_if<IsotropicBandEdge>(&model)) {
    return omega <= iso->edge_frequency;
  }
  // The relative response is rate-independent: the dip profile itself.
  const auto& lor = std::get<GeneralizedLorentzian>(model);
  return lorentzian_profile(lor, omega) <= threshold;
}

double band_reference(const DosModel& model) {
  if (const auto* iso = std::get_if<IsotropicBandEdge>(&model)) {
    return iso->edge_frequency;
  }
  return std::get<GeneralizedLorentzian>(model).center_frequency;
}

std::string model_name(const DosModel& model) {
  return std::holds_alternative<IsotropicBandEdge>(model)
             ? "isotropic_band_edge"
             : "generalized_lorentzian";
}

IsotropicBandEdge with_rho0_from_spacing(IsotropicBandEdge model,
                                         double spacing) {
  if (!(spacing > 0) || !std::isfinite(spacing)) {
    throw ValidationError("spacing must be positive and finite");
  }
  model.rho0 = 1.0 / (2.0 * std::sqrt(spacing));
  return model;
}

}  // namespace pbgl
