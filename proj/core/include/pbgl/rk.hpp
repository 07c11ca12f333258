#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace pbgl {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

struct RkOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0: choose automatically
  std::size_t max_steps = 100'000'000;
};

struct RkStats {
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
  std::size_t rhs_evaluations = 0;
};

using RkRhs =
    std::function<void(double t, const ComplexVector& y, ComplexVector& dydt)>;
using RkSampleSink =
    std::function<void(double t, const ComplexVector& y)>;

// Adaptive Dormand-Prince 5(4) with FSAL. Integrates dy/dt = f(t, y) from t0
// and invokes `on_sample` at every time in `sample_times` (ascending, all
// >= t0). Steps are shortened to land on sample points exactly, so recorded
// values carry no interpolation error; the controller's step estimate is kept
// across the shortened steps. Deterministic for fixed inputs and options.
RkStats integrate_sampled(const RkRhs& f, ComplexVector& y, double t0,
                          const std::vector<double>& sample_times,
                          const RkSampleSink& on_sample,
                          const RkOptions& options = {});

}  // namespace pbgl
