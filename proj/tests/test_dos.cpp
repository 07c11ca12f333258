#include <doctest.h>

#include <cmath>
#include <limits>

#include "pbgl/dos.hpp"
#include "pbgl/errors.hpp"

using namespace pbgl;

namespace {

GeneralizedLorentzian lorentzian(int order = 6) {
  GeneralizedLorentzian m;
  m.center_frequency = 100.0;
  m.half_width = 1.0;
  m.order = order;
  m.rate_upper = 0.5;
  m.rate_lower = 1.0;
  m.rho0 = 1.0;
  return m;
}

}  // namespace

TEST_CASE("band-edge density vanishes at and below the edge") {
  IsotropicBandEdge m;
  m.edge_frequency = 2.0;
  m = with_rho0_from_spacing(m, 4.4e-4);
  CHECK(density(DosModel{m}, 1.0) == 0.0);
  CHECK(density(DosModel{m}, 2.0) == 0.0);
  CHECK(density(DosModel{m}, 3.0) == doctest::Approx(*m.rho0).epsilon(1e-14));
}

TEST_CASE("band-edge density requires rho0") {
  IsotropicBandEdge m;
  CHECK_THROWS_AS(density(DosModel{m}, 1.0), ValidationError);
}

TEST_CASE("lorentzian density is exactly zero at the gap center") {
  const DosModel m = lorentzian();
  CHECK(density(m, 100.0) == 0.0);
}

TEST_CASE("lorentzian n=6 suppression inside +-0.1 width") {
  const auto m = lorentzian();
  const double ratio_plus = density(DosModel{m}, 100.1) / m.rho0;
  const double ratio_minus = density(DosModel{m}, 99.9) / m.rho0;
  CHECK(ratio_plus <= 1e-6);
  CHECK(ratio_minus <= 1e-6);
  CHECK(ratio_plus > 0.0);
}

TEST_CASE("non-finite frequency and bad order are rejected") {
  const DosModel m = lorentzian();
  CHECK_THROWS_AS(density(m, std::numeric_limits<double>::quiet_NaN()),
                  ValidationError);
  CHECK_THROWS_AS(density(m, std::numeric_limits<double>::infinity()),
                  ValidationError);
  CHECK_THROWS_AS(density(DosModel{lorentzian(5)}, 1.0), ValidationError);
  CHECK_THROWS_AS(density(DosModel{lorentzian(0)}, 1.0), ValidationError);
  CHECK_THROWS_AS(density(DosModel{lorentzian(-2)}, 1.0), ValidationError);
}

TEST_CASE("band-edge spectral response matches 1/(pi sqrt(x))") {
  IsotropicBandEdge m;
  m.coupling_upper = 1.0;
  m.coupling_lower = 1.5;
  // C1 = 1 at one frequency unit above the edge: SR = 1/pi.
  CHECK(spectral_response(DosModel{m}, Transition::upper, 1.0) ==
        doctest::Approx(0.3183098861837907).epsilon(1e-15));
  CHECK(spectral_response(DosModel{m}, Transition::lower, 1.0) ==
        doctest::Approx(1.5 * 0.3183098861837907).epsilon(1e-15));
  CHECK(spectral_response(DosModel{m}, Transition::upper, -1.0) == 0.0);
}

TEST_CASE("lorentzian spectral response: center zero, plateau far out") {
  const DosModel m = lorentzian();
  CHECK(spectral_response(m, Transition::upper, 100.0) == 0.0);
  // 10 widths out, n = 6: dip factor 1 - 1e-6 on the gamma1/2pi plateau.
  const double expected = 0.5 / (2.0 * M_PI) * (1.0 - 1.0 / (1e6 + 1.0));
  CHECK(spectral_response(m, Transition::upper, 110.0) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(free_space_response(m, Transition::upper) ==
        doctest::Approx(0.5 / (2.0 * M_PI)).epsilon(1e-15));
  CHECK(free_space_response(m, Transition::lower) ==
        doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-15));
}

TEST_CASE("lorentzian symmetry is exact") {
  const DosModel m = lorentzian();
  for (double x : {1e-3, 0.1, 0.5, 1.0, 3.0, 17.0, 1234.5}) {
    CHECK(spectral_response(m, Transition::lower, 100.0 + x) ==
          spectral_response(m, Transition::lower, 100.0 - x));
  }
}

TEST_CASE("monotonicity on either side of the structure") {
  const DosModel lor = lorentzian();
  double prev = spectral_response(lor, Transition::upper, 100.0);
  for (double x = 0.1; x < 30.0; x += 0.1) {
    const double cur = spectral_response(lor, Transition::upper, 100.0 + x);
    CHECK(cur > prev);
    prev = cur;
  }
  IsotropicBandEdge iso;
  prev = spectral_response(DosModel{iso}, Transition::upper, 0.05);
  for (double x = 0.1; x < 10.0; x += 0.05) {
    const double cur = spectral_response(DosModel{iso}, Transition::upper, x);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("plateau limit at a thousand widths, n >= 6") {
  for (int order : {6, 8}) {
    const DosModel m = lorentzian(order);
    const double plateau = free_space_response(m, Transition::lower);
    const double sr = spectral_response(m, Transition::lower, 100.0 + 1e3);
    CHECK(std::abs(sr - plateau) / plateau < 1e-15);
  }
  // n = 2 approaches the plateau only quadratically; the deviation at a
  // thousand widths is ~1e-6, not machine precision.
  const DosModel m2 = lorentzian(2);
  const double plateau = free_space_response(m2, Transition::lower);
  const double dev =
      std::abs(spectral_response(m2, Transition::lower, 100.0 + 1e3) -
               plateau) /
      plateau;
  CHECK(dev < 1.1e-6);
  CHECK(dev > 0.9e-6);
}

TEST_CASE("spectral response is nonnegative everywhere") {
  const DosModel lor = lorentzian();
  IsotropicBandEdge iso;
  for (double w = -5.0; w < 205.0; w += 0.37) {
    CHECK(spectral_response(lor, Transition::upper, w) >= 0.0);
    CHECK(spectral_response(DosModel{iso}, Transition::upper, w) >= 0.0);
  }
}

TEST_CASE("in_gap classification") {
  IsotropicBandEdge iso;
  iso.edge_frequency = 1.0;
  CHECK(in_gap(DosModel{iso}, 1.0 - 1e-12, 0.5));
  CHECK(in_gap(DosModel{iso}, 0.0, 1e-9));
  CHECK_FALSE(in_gap(DosModel{iso}, 1.5, 0.5));

  const DosModel lor = lorentzian();
  CHECK(in_gap(lor, 100.1, 1e-5));
  CHECK(in_gap(lor, 99.9, 1e-5));
  CHECK_FALSE(in_gap(lor, 110.0, 1e-2));
  CHECK_THROWS_AS(in_gap(lor, 100.0, 0.0), ValidationError);
  CHECK_THROWS_AS(in_gap(lor, 100.0, 1.5), ValidationError);
}

TEST_CASE("band reference picks edge or center") {
  IsotropicBandEdge iso;
  iso.edge_frequency = 3.5;
  CHECK(band_reference(DosModel{iso}) == 3.5);
  CHECK(band_reference(DosModel{lorentzian()}) == 100.0);
}

TEST_CASE("model validation catches bad parameters") {
  IsotropicBandEdge iso;
  iso.coupling_upper = -1.0;
  CHECK_THROWS_AS(validate(DosModel{iso}), ValidationError);
  auto lor = lorentzian();
  lor.half_width = 0.0;
  CHECK_THROWS_AS(validate(DosModel{lor}), ValidationError);
  auto lor2 = lorentzian();
  lor2.rate_lower = -0.1;
  CHECK_THROWS_AS(validate(DosModel{lor2}), ValidationError);
}
