#pragma once

#include <cmath>
#include <random>

#include "pbgl/discretize.hpp"
#include "pbgl/dynamics.hpp"

namespace pbgl::testing {

// Standard band-edge reservoir used across the tests: edge at 0, C1 = 1,
// C2 = 1.5, band top at N^2 * spacing.
inline DiscretizedReservoir edge_reservoir(std::size_t n, double spacing,
                                           const TransitionFrequencies& atom,
                                           double c2 = 1.5) {
  IsotropicBandEdge model;
  model.edge_frequency = 0.0;
  model.coupling_upper = 1.0;
  model.coupling_lower = c2;
  model = with_rho0_from_spacing(model, spacing);
  return build_quadratic_grid(model, QuadraticGridParams{n, spacing}, atom);
}

inline LadderConfig edge_config(std::size_t n, double spacing, double d12,
                                double d23, double c2 = 1.5) {
  const TransitionFrequencies atom{d12, d23};
  return LadderConfig(edge_reservoir(n, spacing, atom, c2), d12, d23);
}

inline GeneralizedLorentzian reference_lorentzian() {
  GeneralizedLorentzian model;
  model.center_frequency = 100.0;
  model.half_width = 1.0;
  model.order = 6;
  model.rate_upper = 0.5;
  model.rate_lower = 1.0;
  return model;
}

inline LadderConfig lorentzian_config(std::size_t n, double d12, double d23) {
  const auto model = reference_lorentzian();
  const TransitionFrequencies atom{model.center_frequency + d12,
                                   model.center_frequency + d23};
  auto reservoir =
      build_uniform_grid(model, UniformGridParams{80.0, 120.0, n}, atom);
  return LadderConfig(std::move(reservoir), d12, d23);
}

// Analytic tail integral of the band-edge spectral response; the oracle the
// adaptive-quadrature shifts are checked against.
inline double closed_form_edge_shift(double coupling, double delta,
                                     double xu) {
  const double front = coupling / M_PI;
  if (delta < 0) {
    return -2.0 * front / std::sqrt(-delta) *
           std::atan(std::sqrt(-delta / xu));
  }
  if (delta == 0) return -2.0 * front / std::sqrt(xu);
  const double r = std::sqrt(delta);
  const double s = std::sqrt(xu);
  return front / r * std::log((s - r) / (s + r));
}

inline ComplexVector random_unit_vector(std::size_t dim, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexVector v(dim);
  double n2 = 0.0;
  for (auto& z : v) {
    z = Complex(dist(rng), dist(rng));
    n2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : v) z *= inv;
  return v;
}

// Composite Simpson rule on a uniform grid; independent reference for the
// spectral-response integrals.
template <class F>
double simpson(F f, double a, double b, int intervals) {
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace pbgl::testing
