#pragma once

#include <array>
#include <cstddef>

#include "pbgl/dynamics.hpp"

namespace pbgl {

// Upper bound on N for the dense verification path; the matrix dimension
// (N+1)(N+2)/2 stays below 100.
inline constexpr std::size_t dense_oracle_max_modes = 12;

// The rotating-frame generator H as an explicit dense Hermitian matrix
// (row-major, dimension = layout().dimension()); d psi / dt = -i H psi.
// Assembled element by element from the equations of motion, independently
// of the loop-based right-hand side, so the two transcriptions check each
// other.
ComplexVector dense_generator(const LadderConfig& config);

// Exact propagation of the initial state to time t through the
// eigendecomposition of the dense generator. Norm preserved to machine
// precision; N capped at dense_oracle_max_modes.
AmplitudeState dense_propagate(const LadderConfig& config, double t);
AmplitudeState dense_propagate(const LadderConfig& config,
                               const AmplitudeState& initial, double t);

// Lossless two-path model: the top level couples to the intermediate level
// with single-photon Rabi frequency omega1 and to the ground level with
// two-photon Rabi frequency omega2. All three populations oscillate at the
// combined frequency.
struct RabiModel {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double combined() const;  // sqrt(omega1^2 + omega2^2)
};

// Closed-form populations for the atom starting in the top level:
//   P1 = cos^2(Wt/2),
//   P2 = (o1^2/W^2) sin^2(Wt/2),  P3 = (o2^2/W^2) sin^2(Wt/2).
std::array<double, 3> rabi_populations(const RabiModel& model, double t);

// Sampled closed-form populations on a uniform grid (norm identically 1).
TimeSeries rabi_time_series(const RabiModel& model, double t_end,
                            std::size_t samples);

}  // namespace pbgl
