#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "pbgl/errors.hpp"
#include "pbgl/oracle.hpp"

using namespace pbgl;
using namespace pbgl::testing;

TEST_CASE("dense generator is exactly Hermitian") {
  const auto config = edge_config(5, 0.3, -1.0, 0.5);
  const std::size_t dim = config.layout().dimension();
  const auto h = dense_generator(config);
  double residual = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      residual = std::max(
          residual, std::abs(h[r * dim + c] - std::conj(h[c * dim + r])));
    }
  }
  CHECK(residual == 0.0);
}

TEST_CASE("dense propagation at t = 0 is the identity") {
  const auto config = edge_config(4, 0.4, -0.7, 0.2);
  std::mt19937 rng(5u);
  const auto s0 =
      make_state(config, random_unit_vector(config.layout().dimension(), rng));
  const auto s1 = dense_propagate(config, s0, 0.0);
  for (std::size_t i = 0; i < s0.amplitudes.size(); ++i) {
    CHECK(std::abs(s1.amplitudes[i] - s0.amplitudes[i]) < 1e-13);
  }
}

TEST_CASE("dense propagation preserves the norm to machine precision") {
  const auto config = edge_config(6, 0.275, -1.3103706971044482, 0.0);
  const auto s = dense_propagate(config, 17.3);
  CHECK(std::abs(norm_squared(s) - 1.0) < 1e-13);
}

TEST_CASE("single resonant mode: dense oracle gives cos^2") {
  DiscretizedReservoir res;
  res.mode_frequencies = {1.0};
  res.couplings_upper = {0.578};
  res.couplings_lower = {0.0};
  res.band_low = 0.0;
  res.band_high = 50.0;
  res.source = IsotropicBandEdge{};
  const LadderConfig config(res, 1.0, 0.2);
  for (double t : {0.3, 1.1, 2.9, 4.4}) {
    const auto s = dense_propagate(config, t);
    const double c = std::cos(0.578 * t);
    CHECK(std::norm(s.a()) == doctest::Approx(c * c).epsilon(1e-12));
  }
}

TEST_CASE("mode cap is enforced") {
  const auto config = edge_config(13, 0.0586, -1.0, 0.0);
  CHECK_THROWS_AS(dense_propagate(config, 1.0), ValidationError);
}

TEST_CASE("propagate matches the dense oracle at small N") {
  // Integration route vs exact matrix exponential, several detunings and
  // both DOS models.
  const struct {
    double d12, d23;
  } edge_cases[] = {{-1.3103706971044482, 0.0}, {-2.62, 1.0}, {1.31, -1.0}};
  for (const auto& c : edge_cases) {
    const auto config = edge_config(6, 0.275, c.d12, c.d23);
    PropagateOptions options;
    options.t_end = 5.0;
    options.samples = 11;
    options.rel_tol = 1e-12;
    options.abs_tol = 1e-14;
    const auto prop = propagate(config, options);
    const auto exact = dense_propagate(config, 5.0);
    for (std::size_t i = 0; i < exact.amplitudes.size(); ++i) {
      CHECK(std::abs(prop.final_state.amplitudes[i] - exact.amplitudes[i]) <
            1e-8);
    }
  }
  const auto lor = lorentzian_config(6, 0.1, 0.3);
  PropagateOptions options;
  options.t_end = 5.0;
  options.samples = 11;
  options.rel_tol = 1e-12;
  options.abs_tol = 1e-14;
  const auto prop = propagate(lor, options);
  const auto exact = dense_propagate(lor, 5.0);
  for (std::size_t i = 0; i < exact.amplitudes.size(); ++i) {
    CHECK(std::abs(prop.final_state.amplitudes[i] - exact.amplitudes[i]) <
          1e-8);
  }
}

TEST_CASE("rabi populations: pure two-level limit") {
  const RabiModel model{2.0, 0.0};
  for (double t : {0.0, 0.4, 1.7, 3.3}) {
    const auto p = rabi_populations(model, t);
    const double s = std::sin(0.5 * 2.0 * t);
    CHECK(p[2] == 0.0);
    CHECK(p[1] == doctest::Approx(s * s).epsilon(1e-14));
  }
}

TEST_CASE("rabi populations: equal frequencies give equal lower levels") {
  const RabiModel model{1.7, 1.7};
  for (double t = 0.0; t < 12.0; t += 0.37) {
    const auto p = rabi_populations(model, t);
    CHECK(p[1] == doctest::Approx(p[2]).epsilon(1e-14));
  }
}

TEST_CASE("rabi populations sum to one and stay in phase") {
  const RabiModel model{3.0, 4.0};
  CHECK(model.combined() == doctest::Approx(5.0).epsilon(1e-15));
  for (double t = 0.0; t < 9.0; t += 0.173) {
    const auto p = rabi_populations(model, t);
    CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) < 1e-15);
    // Both lower levels are proportional to the same sin^2: constant ratio
    // omega1^2 / omega2^2.
    if (p[2] > 1e-12) {
      CHECK(p[1] / p[2] == doctest::Approx(9.0 / 16.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("rabi time series carries unit norm") {
  const auto series = rabi_time_series(RabiModel{1.0, 2.0}, 10.0, 64);
  REQUIRE(series.size() == 64);
  for (double n : series.norm) CHECK(n == 1.0);
  CHECK(series.times.front() == 0.0);
  CHECK(series.times.back() == 10.0);
  CHECK(series.p1.front() == 1.0);
}

TEST_CASE("degenerate rabi model keeps the atom in the top level") {
  const auto p = rabi_populations(RabiModel{0.0, 0.0}, 3.0);
  CHECK(p[0] == 1.0);
  CHECK_THROWS_AS(rabi_populations(RabiModel{-1.0, 0.0}, 1.0),
                  ValidationError);
}
