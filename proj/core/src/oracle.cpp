#include "pbgl/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "pbgl/errors.hpp"

namespace pbgl {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

Eigen::MatrixXcd assemble_generator(const LadderConfig& config) {
  const StateLayout lay = config.layout();
  const std::size_t n = lay.num_modes;
  const std::size_t dim = lay.dimension();
  const auto& res = config.reservoir();
  const double ref = config.band_reference();
  const double d12 = config.detuning_upper();
  const double d2 = config.two_photon_detuning();

  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  const Complex minus_i(0.0, -1.0);

  h(0, 0) = res.shift_upper;
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = res.mode_frequencies[j] - ref;
    const auto bj = static_cast<Eigen::Index>(lay.b_index(j));
    h(bj, bj) = res.shift_lower - d12 + xj;
    // a <-> b_j exchange through the upper transition; the pure imaginary
    // element reproduces the real coupling in da/dt = -i H psi.
    h(0, bj) = minus_i * res.couplings_upper[j];
    h(bj, 0) = std::conj(h(0, bj));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double xj = res.mode_frequencies[j] - ref;
    for (std::size_t m = j; m < n; ++m) {
      const double xm = res.mode_frequencies[m] - ref;
      const auto cjm = static_cast<Eigen::Index>(lay.c_index(j, m));
      h(cjm, cjm) = xj + xm - d2;
      if (j == m) {
        const auto bj = static_cast<Eigen::Index>(lay.b_index(j));
        h(bj, cjm) = minus_i * (kSqrt2 * res.couplings_lower[j]);
        h(cjm, bj) = std::conj(h(bj, cjm));
      } else {
        const auto bj = static_cast<Eigen::Index>(lay.b_index(j));
        const auto bm = static_cast<Eigen::Index>(lay.b_index(m));
        h(bj, cjm) = minus_i * res.couplings_lower[m];
        h(cjm, bj) = std::conj(h(bj, cjm));
        h(bm, cjm) = minus_i * res.couplings_lower[j];
        h(cjm, bm) = std::conj(h(bm, cjm));
      }
    }
  }
  return h;
}

}  // namespace

ComplexVector dense_generator(const LadderConfig& config) {
  const Eigen::MatrixXcd h = assemble_generator(config);
  const auto dim = static_cast<std::size_t>(h.rows());
  ComplexVector out(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      out[r * dim + c] = h(static_cast<Eigen::Index>(r),
                           static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

AmplitudeState dense_propagate(const LadderConfig& config, double t) {
  return dense_propagate(config, initial_state(config), t);
}

AmplitudeState dense_propagate(const LadderConfig& config,
                               const AmplitudeState& initial, double t) {
  if (config.num_modes() > dense_oracle_max_modes) {
    throw ValidationError("dense oracle is capped at N <= 12 modes");
  }
  if (initial.layout.num_modes != config.num_modes()) {
    throw ValidationError("initial state does not match the config");
  }
  const Eigen::MatrixXcd h = assemble_generator(config);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error("eigendecomposition failed");
  }

  const auto dim = static_cast<Eigen::Index>(initial.amplitudes.size());
  Eigen::VectorXcd psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    psi(i) = initial.amplitudes[static_cast<std::size_t>(i)];
  }
  const double dt = t - initial.time;
  Eigen::VectorXcd coeff = solver.eigenvectors().adjoint() * psi;
  for (Eigen::Index k = 0; k < dim; ++k) {
    coeff(k) *= std::polar(1.0, -solver.eigenvalues()(k) * dt);
  }
  psi = solver.eigenvectors() * coeff;

  AmplitudeState out;
  out.time = t;
  out.layout = initial.layout;
  out.amplitudes.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    out.amplitudes[static_cast<std::size_t>(i)] = psi(i);
  }
  return out;
}

double RabiModel::combined() const { return std::hypot(omega1, omega2); }

std::array<double, 3> rabi_populations(const RabiModel& model, double t) {
  if (model.omega1 < 0 || model.omega2 < 0) {
    throw ValidationError("Rabi frequencies must be nonnegative");
  }
  const double w = model.combined();
  if (w == 0.0) return {1.0, 0.0, 0.0};
  const double c = std::cos(0.5 * w * t);
  const double p1 = c * c;
  const double s = 1.0 - p1;
  const double weight1 = (model.omega1 * model.omega1) / (w * w);
  const double p2 = weight1 * s;
  return {p1, p2, s - p2};
}

TimeSeries rabi_time_series(const RabiModel& model, double t_end,
                            std::size_t samples) {
  if (samples < 2) throw ValidationError("need at least two samples");
  if (!(t_end > 0)) throw ValidationError("t_end must be positive");
  TimeSeries series;
  series.times.resize(samples);
  series.p1.resize(samples);
  series.p2.resize(samples);
  series.p3.resize(samples);
  series.norm.assign(samples, 1.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = t_end * static_cast<double>(i) /
                     static_cast<double>(samples - 1);
    const auto p = rabi_populations(model, t);
    series.times[i] = t;
    series.p1[i] = p[0];
    series.p2[i] = p[1];
    series.p3[i] = p[2];
  }
  return series;
}

}  // namespace pbgl
