#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pbgl/dynamics.hpp"
#include "pbgl/errors.hpp"

using namespace pbgl;
using namespace pbgl::testing;

namespace {

// Hand-built reservoir for targeted right-hand-side checks; bypasses the
// grid builders so couplings and shifts can be set freely.
DiscretizedReservoir manual_reservoir(std::vector<double> freqs,
                                      std::vector<double> g1,
                                      std::vector<double> g2,
                                      double shift_upper, double shift_lower) {
  DiscretizedReservoir res;
  res.mode_frequencies = std::move(freqs);
  res.couplings_upper = std::move(g1);
  res.couplings_lower = std::move(g2);
  res.band_low = 0.0;
  res.band_high = 50.0;
  res.shift_upper = shift_upper;
  res.shift_lower = shift_lower;
  res.source = IsotropicBandEdge{};
  res.grid_description = "manual";
  return res;
}

Complex inner(const ComplexVector& u, const ComplexVector& v) {
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::conj(u[i]) * v[i];
  return sum;
}

}  // namespace

TEST_CASE("state layout packs the triangle without gaps") {
  StateLayout lay{4};
  CHECK(lay.dimension() == 1 + 4 + 10);
  CHECK(lay.a_index() == 0);
  CHECK(lay.b_index(0) == 1);
  CHECK(lay.b_index(3) == 4);
  std::size_t expected = 5;
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t m = j; m < 4; ++m) {
      CHECK(lay.c_index(j, m) == expected);
      ++expected;
    }
  }
  CHECK(expected == lay.dimension());
}

TEST_CASE("initial state and custom states") {
  const auto config = edge_config(6, 0.275, -1.0, 0.0);
  const auto state = initial_state(config);
  CHECK(state.a() == Complex(1.0, 0.0));
  const auto p = populations(state);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
  CHECK(p[2] == 0.0);
  CHECK(norm_squared(state) == 1.0);

  ComplexVector custom(config.layout().dimension(), Complex(0.0, 0.0));
  custom[config.layout().b_index(0)] = Complex(1.0, 0.0);
  const auto b_state = make_state(config, custom);
  CHECK(populations(b_state)[1] == 1.0);

  ComplexVector bad(config.layout().dimension(), Complex(0.0, 0.0));
  bad[0] = Complex(0.5, 0.0);  // squared norm 0.25
  CHECK_THROWS_AS(make_state(config, bad), ValidationError);
  CHECK_THROWS_AS(make_state(config, ComplexVector(3, Complex(1.0, 0.0))),
                  ValidationError);
}

TEST_CASE("decoupled modes: only shifts act") {
  // One mode, zero couplings: the interaction-picture derivative reduces to
  // the shift terms; the rotating frame adds the mode detuning phase on b.
  const double lambda1 = -0.17, lambda2 = -0.33;
  auto res = manual_reservoir({2.0}, {0.0}, {0.0}, lambda1, lambda2);
  const double d12 = 1.5, d23 = 0.4;
  const LadderConfig config(res, d12, d23);

  AmplitudeState s;
  s.layout = config.layout();
  s.amplitudes = {Complex(0.6, 0.1), Complex(0.5, -0.3), Complex(0.2, 0.5)};
  CHECK(std::abs(norm_squared(s) - 1.0) < 1e-10);

  const auto di = rhs(s, config, Frame::interaction);
  CHECK(std::abs(di[0] - Complex(0.0, -lambda1) * s.amplitudes[0]) < 1e-15);
  CHECK(std::abs(di[1] - Complex(0.0, -lambda2) * s.amplitudes[1]) < 1e-15);
  CHECK(std::abs(di[2]) == 0.0);

  const auto dr = rhs(s, config, Frame::rotating);
  const double x = 2.0;  // mode offset
  const double diag_b = lambda2 - d12 + x;
  const double diag_c = 2.0 * x - (d12 + d23);
  CHECK(std::abs(dr[0] - Complex(0.0, -lambda1) * s.amplitudes[0]) < 1e-15);
  CHECK(std::abs(dr[1] - Complex(0.0, -diag_b) * s.amplitudes[1]) < 1e-15);
  CHECK(std::abs(dr[2] - Complex(0.0, -diag_c) * s.amplitudes[2]) < 1e-15);
}

TEST_CASE("single mode from the top level: emission rate is the coupling") {
  auto res = manual_reservoir({1.0}, {0.578}, {0.0}, 0.0, 0.0);
  const LadderConfig config(res, 1.0, 0.2);
  const auto state = initial_state(config);
  const auto d = rhs(state, config, Frame::rotating);
  CHECK(std::abs(d[1]) == doctest::Approx(0.578).epsilon(1e-15));
  const auto di = rhs(state, config, Frame::interaction);
  CHECK(std::abs(di[1]) == doctest::Approx(0.578).epsilon(1e-15));
}

TEST_CASE("rhs is anti-Hermitian in both frames") {
  const auto config = edge_config(7, 0.2, -1.0, 0.5);
  const std::size_t dim = config.layout().dimension();
  std::mt19937 rng(99u);
  for (Frame frame : {Frame::rotating, Frame::interaction}) {
    for (int trial = 0; trial < 4; ++trial) {
      auto u = make_state(config, random_unit_vector(dim, rng), 0.37);
      auto v = make_state(config, random_unit_vector(dim, rng), 0.37);
      const auto fu = rhs(u, config, frame);
      const auto fv = rhs(v, config, frame);
      const Complex defect =
          inner(u.amplitudes, fv) + std::conj(inner(v.amplitudes, fu));
      CHECK(std::abs(defect) < 1e-13);
    }
  }
}

TEST_CASE("two-state Rabi oscillation at angular frequency 2G") {
  // Lower transition decoupled, one resonant mode: P1 = cos^2(G t).
  const double g = 0.578;
  auto res = manual_reservoir({1.0}, {g}, {0.0}, 0.0, 0.0);
  const LadderConfig config(res, 1.0, 0.2);
  PropagateOptions options;
  options.t_end = 5.0;
  options.samples = 101;
  options.rel_tol = 1e-12;
  options.abs_tol = 1e-14;
  const auto result = propagate(config, options);
  for (std::size_t i = 0; i < result.series.size(); ++i) {
    const double t = result.series.times[i];
    const double c = std::cos(g * t);
    CHECK(std::abs(result.series.p1[i] - c * c) < 1e-8);
  }
}

TEST_CASE("zero couplings freeze the populations") {
  auto res = manual_reservoir({1.0, 2.0, 3.0}, {0.0, 0.0, 0.0},
                              {0.0, 0.0, 0.0}, -0.2, -0.1);
  const LadderConfig config(res, 0.5, 0.3);
  PropagateOptions options;
  options.t_end = 10.0;
  options.samples = 50;
  const auto result = propagate(config, options);
  for (double p : result.series.p1) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
  for (double p : result.series.p3) CHECK(p == 0.0);
}

TEST_CASE("frame equivalence: identical populations, phases free") {
  const auto config = edge_config(6, 0.275, -1.3103706971044482, 0.0);
  PropagateOptions options;
  options.t_end = 5.0;
  options.samples = 51;
  options.rel_tol = 1e-11;
  options.abs_tol = 1e-13;
  options.frame = Frame::rotating;
  const auto rot = propagate(config, options);
  options.frame = Frame::interaction;
  const auto inter = propagate(config, options);
  for (std::size_t i = 0; i < rot.series.size(); ++i) {
    CHECK(std::abs(rot.series.p1[i] - inter.series.p1[i]) < 1e-8);
    CHECK(std::abs(rot.series.p2[i] - inter.series.p2[i]) < 1e-8);
    CHECK(std::abs(rot.series.p3[i] - inter.series.p3[i]) < 1e-8);
  }
}

TEST_CASE("two-level reduction: decoupled lower transition") {
  // C2 = 0 kills the cascade: P3 stays exactly zero and P1 follows an
  // independently coded two-level band-edge propagation on the same
  // reservoir.
  const std::size_t n = 40;
  const double spacing = 9.9 / (n * n);
  const double d12 = -1.3103706971044482;
  const auto config = edge_config(n, spacing, d12, 0.0, /*c2=*/0.0);
  CHECK(config.reservoir().shift_lower == 0.0);

  PropagateOptions options;
  options.t_end = 20.0;
  options.samples = 101;
  options.rel_tol = 1e-11;
  options.abs_tol = 1e-13;
  const auto result = propagate(config, options);
  for (double p : result.series.p3) CHECK(p == 0.0);

  // Reference: dense (N+1)-level Hermitian evolution of {a, b_j}.
  const auto& res = config.reservoir();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  h(0, 0) = res.shift_upper;
  for (std::size_t j = 0; j < n; ++j) {
    h(j + 1, j + 1) = res.mode_frequencies[j] - d12;
    h(0, j + 1) = Complex(0.0, -res.couplings_upper[j]);
    h(j + 1, 0) = Complex(0.0, res.couplings_upper[j]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(n + 1);
  psi0(0) = 1.0;
  for (std::size_t i = 0; i < result.series.size(); ++i) {
    const double t = result.series.times[i];
    Eigen::VectorXcd coeff = solver.eigenvectors().adjoint() * psi0;
    for (std::size_t k = 0; k <= n; ++k) {
      coeff(k) *= std::polar(1.0, -solver.eigenvalues()(k) * t);
    }
    const Eigen::VectorXcd psi = solver.eigenvectors() * coeff;
    CHECK(std::abs(result.series.p1[i] - std::norm(psi(0))) < 1e-8);
  }
}

TEST_CASE("series invariants: population sum, norm, P3 bounds") {
  const auto config = edge_config(8, 0.15, -1.0, 0.5);
  PropagateOptions options;
  options.t_end = 15.0;
  options.samples = 120;
  const auto result = propagate(config, options);
  CHECK(result.series.p3.front() == 0.0);
  for (std::size_t i = 0; i < result.series.size(); ++i) {
    const double sum =
        result.series.p1[i] + result.series.p2[i] + result.series.p3[i];
    const double n2 = result.series.norm[i] * result.series.norm[i];
    CHECK(std::abs(sum - n2) < 1e-12);
    CHECK(result.series.p3[i] >= 0.0);
    CHECK(result.series.p3[i] <= 1.0 + 1e-9);
    CHECK(n2 <= 1.0 + 1e-6);
  }
  CHECK(result.stats.max_norm_drift < 1e-6);
}

TEST_CASE("norm drift beyond the configured bound is signaled") {
  const auto config = edge_config(8, 0.15, -1.0, 0.5);
  PropagateOptions options;
  options.t_end = 15.0;
  options.norm_drift_bound = 1e-16;  // unreachable on purpose
  CHECK_THROWS_AS(propagate(config, options), IntegratorError);
}

TEST_CASE("propagation is bit-deterministic") {
  const auto config = edge_config(6, 0.275, -1.0, 0.5);
  PropagateOptions options;
  options.t_end = 7.0;
  options.samples = 40;
  const auto a = propagate(config, options);
  const auto b = propagate(config, options);
  for (std::size_t i = 0; i < a.series.size(); ++i) {
    CHECK(a.series.p1[i] == b.series.p1[i]);
    CHECK(a.series.p2[i] == b.series.p2[i]);
    CHECK(a.series.p3[i] == b.series.p3[i]);
    CHECK(a.series.norm[i] == b.series.norm[i]);
  }
  for (std::size_t i = 0; i < a.final_state.amplitudes.size(); ++i) {
    CHECK(a.final_state.amplitudes[i] == b.final_state.amplitudes[i]);
  }
}

TEST_CASE("config validation: transitions against the band") {
  // Band-edge model: anything below the band top is fine (the gap side is
  // open), the band top itself is not.
  CHECK_THROWS_AS(edge_config(6, 0.275, 9.9, 0.0), Error);
  // Lorentzian model: transitions must stay strictly inside the band.
  CHECK_THROWS_AS(lorentzian_config(6, -25.0, 0.3), Error);
  CHECK_THROWS_AS(lorentzian_config(6, 0.1, 25.0), Error);
}

TEST_CASE("mismatched state and config are rejected") {
  const auto config6 = edge_config(6, 0.275, -1.0, 0.0);
  const auto config7 = edge_config(7, 0.21, -1.0, 0.0);
  const auto state = initial_state(config7);
  CHECK_THROWS_AS(rhs(state, config6), ValidationError);
  CHECK_THROWS_AS(propagate(config6, state, PropagateOptions{}),
                  ValidationError);
}
