#include <doctest.h>

#include <cmath>

#include "pbgl/errors.hpp"
#include "pbgl/rk.hpp"

using namespace pbgl;

TEST_CASE("phase oscillator is integrated to tolerance") {
  // dy/dt = i w y, y(0) = 1: exact solution exp(i w t).
  const double w = 3.0;
  ComplexVector y{Complex(1.0, 0.0)};
  std::vector<double> samples{0.0, 1.0, 2.5, 7.0};
  double worst = 0.0;
  RkOptions options;
  options.rel_tol = 1e-10;
  options.abs_tol = 1e-12;
  integrate_sampled(
      [w](double, const ComplexVector& state, ComplexVector& dydt) {
        dydt.resize(1);
        dydt[0] = Complex(0.0, w) * state[0];
      },
      y, 0.0, samples,
      [&](double t, const ComplexVector& state) {
        worst = std::max(worst, std::abs(state[0] - std::polar(1.0, w * t)));
      },
      options);
  CHECK(worst < 1e-8);
}

TEST_CASE("samples are hit exactly and max_step is honored") {
  ComplexVector y{Complex(1.0, 0.0)};
  std::vector<double> samples{0.0, 0.3333333333333333, 1.0};
  std::vector<double> seen;
  RkOptions options;
  options.max_step = 0.01;
  const RkStats stats = integrate_sampled(
      [](double, const ComplexVector& state, ComplexVector& dydt) {
        dydt.resize(1);
        dydt[0] = -state[0];
      },
      y, 0.0, samples,
      [&](double t, const ComplexVector&) { seen.push_back(t); }, options);
  REQUIRE(seen.size() == 3);
  CHECK(seen[0] == 0.0);
  CHECK(seen[1] == 0.3333333333333333);
  CHECK(seen[2] == 1.0);
  CHECK(stats.steps_accepted >= 100);  // ceiling forces at least 1/0.01 steps
  CHECK(std::abs(y[0].real() - std::exp(-1.0)) < 1e-10);
}

TEST_CASE("descending sample times are rejected") {
  ComplexVector y{Complex(1.0, 0.0)};
  std::vector<double> samples{1.0, 0.5};
  CHECK_THROWS_AS(
      integrate_sampled(
          [](double, const ComplexVector& s, ComplexVector& d) {
            d.resize(1);
            d[0] = s[0];
          },
          y, 0.0, samples, [](double, const ComplexVector&) {}),
      ValidationError);
}

TEST_CASE("a right-hand side turning non-finite triggers step underflow") {
  ComplexVector y{Complex(1.0, 0.0)};
  std::vector<double> samples{1.0};
  auto f = [](double t, const ComplexVector& state, ComplexVector& dydt) {
    dydt.resize(1);
    dydt[0] = t > 0.5 ? Complex(std::nan(""), 0.0) : state[0];
  };
  RkOptions options;
  options.max_steps = 50000;  // whichever guard fires first must throw
  CHECK_THROWS_AS(integrate_sampled(f, y, 0.0, samples,
                                    [](double, const ComplexVector&) {},
                                    options),
                  IntegratorError);
}

TEST_CASE("step budget exhaustion is signaled") {
  ComplexVector y{Complex(1.0, 0.0)};
  std::vector<double> samples{1.0};
  RkOptions options;
  options.max_step = 1e-6;
  options.max_steps = 100;
  CHECK_THROWS_AS(
      integrate_sampled(
          [](double, const ComplexVector& s, ComplexVector& d) {
            d.resize(1);
            d[0] = s[0];
          },
          y, 0.0, samples, [](double, const ComplexVector&) {}, options),
      IntegratorError);
}

TEST_CASE("integration is deterministic") {
  auto run = [] {
    ComplexVector y{Complex(1.0, 0.0), Complex(0.0, 0.0)};
    std::vector<double> samples;
    for (int i = 0; i <= 20; ++i) samples.push_back(0.35 * i);
    std::vector<Complex> trace;
    integrate_sampled(
        [](double, const ComplexVector& s, ComplexVector& d) {
          d.resize(2);
          d[0] = Complex(0.0, -1.3) * s[0] - 0.4 * s[1];
          d[1] = Complex(0.0, 0.7) * s[1] + 0.4 * s[0];
        },
        y, 0.0, samples,
        [&](double, const ComplexVector& s) {
          trace.push_back(s[0]);
          trace.push_back(s[1]);
        });
    return trace;
  };
  const auto a = run();
  const auto b = run();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].real() == b[i].real());
    CHECK(a[i].imag() == b[i].imag());
  }
}
