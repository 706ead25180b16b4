#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>
#include <stdexcept>

#include "casimir/geometry.hpp"
#include "casimir/units.hpp"

using namespace casimir;

TEST_CASE("ideal force: benchmark value and quoted magnitude") {
  PlanePlaneGeometry g{1e-4, 1e-6};
  const double f = ideal_casimir_force(g);
  CHECK(f == doctest::Approx(1.300e-7).epsilon(1e-3));
  CHECK(f > 0.0);
}

TEST_CASE("ideal energy: benchmark value") {
  PlanePlaneGeometry g{1e-4, 1e-6};
  const double e = ideal_casimir_energy(g);
  CHECK(e == doctest::Approx(4.334e-14).epsilon(1e-3));
  CHECK(e > 0.0);
}

TEST_CASE("ideal force scales as L^-4, exactly under power-of-two rescaling") {
  const double f1 = ideal_casimir_force({1e-4, 1e-6});
  const double f2 = ideal_casimir_force({1e-4, 2e-6});
  CHECK(f2 == f1 / 16.0);
}

TEST_CASE("ideal quantities are linear in area") {
  CHECK(ideal_casimir_force({2e-4, 1e-6}) == 2.0 * ideal_casimir_force({1e-4, 1e-6}));
  CHECK(ideal_casimir_energy({2e-4, 1e-6}) == 2.0 * ideal_casimir_energy({1e-4, 1e-6}));
}

TEST_CASE("force equals 3 E / L") {
  for (double L : {0.05e-6, 0.3e-6, 1e-6, 4e-6, 10e-6}) {
    const double f = ideal_casimir_force({1e-4, L});
    const double e = ideal_casimir_energy({1e-4, L});
    CHECK(f == doctest::Approx(3.0 * e / L).epsilon(1e-15));
  }
}

TEST_CASE("force equals -dE/dL by central differences") {
  const double L = 1e-6, dL = 1e-4 * L;
  const double f = ideal_casimir_force({1e-4, L});
  const double fd = (ideal_casimir_energy({1e-4, L - dL}) -
                     ideal_casimir_energy({1e-4, L + dL})) /
                    (2.0 * dL);
  CHECK(fd == doctest::Approx(f).epsilon(1e-6));
}

TEST_CASE("homogeneity at a non-dyadic scale factor") {
  const double s = 3.0, L = 0.7e-6;
  CHECK(ideal_casimir_force({1e-4, s * L}) * s * s * s * s ==
        doctest::Approx(ideal_casimir_force({1e-4, L})).epsilon(1e-14));
  CHECK(ideal_casimir_energy({1e-4, s * L}) * s * s * s ==
        doctest::Approx(ideal_casimir_energy({1e-4, L})).epsilon(1e-14));
}

TEST_CASE("both quantities strictly decrease with distance") {
  double prev_f = std::numeric_limits<double>::infinity();
  double prev_e = std::numeric_limits<double>::infinity();
  for (double L : {0.1e-6, 0.5e-6, 1e-6, 2e-6, 5e-6}) {
    const double f = ideal_casimir_force({1e-4, L});
    const double e = ideal_casimir_energy({1e-4, L});
    CHECK(f < prev_f);
    CHECK(e < prev_e);
    prev_f = f;
    prev_e = e;
  }
}

TEST_CASE("plasma wavelength round trips") {
  CHECK(plasma_frequency(136e-9) == doctest::Approx(1.385e16).epsilon(1e-3));
  CHECK(plasma_frequency(107e-9) == doctest::Approx(1.760e16).epsilon(1e-3));
  for (double lp : {50e-9, 136e-9, 107e-9, 1e-6}) {
    CHECK(plasma_wavelength(plasma_frequency(lp)) == doctest::Approx(lp).epsilon(1e-15));
  }
  CHECK_THROWS_AS(plasma_wavelength(0.0), std::invalid_argument);
  CHECK_THROWS_AS(plasma_frequency(-1.0), std::invalid_argument);
}

TEST_CASE("thermal state: wavelength and validation") {
  ThermalState room{300.0};
  CHECK(room.thermal_wavelength() > 7.5e-6);
  CHECK(room.thermal_wavelength() < 7.7e-6);
  CHECK_FALSE(room.is_zero());

  ThermalState zero = ThermalState::zero();
  CHECK(zero.is_zero());
  CHECK(std::isinf(zero.thermal_wavelength()));

  CHECK_THROWS_AS(ThermalState{-1.0}, std::invalid_argument);
  CHECK_THROWS_AS(ThermalState{std::numeric_limits<double>::quiet_NaN()},
                  std::invalid_argument);
}

TEST_CASE("plane-plane geometry: validation and transverse-size warning") {
  CHECK_THROWS_AS(PlanePlaneGeometry(0.0, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(PlanePlaneGeometry(1e-4, -1e-6), std::invalid_argument);
  CHECK(PlanePlaneGeometry(1e-4, 1e-6).warnings().empty());
  CHECK_FALSE(PlanePlaneGeometry(1e-12, 1e-6).warnings().empty());
}

TEST_CASE("sphere-plane geometry: validation and proximity warning") {
  CHECK_THROWS_AS(SpherePlaneGeometry(0.0, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(SpherePlaneGeometry(1e-4, 0.0), std::invalid_argument);
  CHECK(SpherePlaneGeometry(101e-6, 1e-6).warnings().empty());
  CHECK_FALSE(SpherePlaneGeometry(50e-6, 1e-6).warnings().empty());
}

TEST_CASE("crossed-cylinders geometry: effective radius and proximity warning") {
  CHECK_THROWS_AS(CrossedCylindersGeometry(0.0, 1e-3, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(CrossedCylindersGeometry(1e-3, 1e-3, 0.0), std::invalid_argument);

  CrossedCylindersGeometry equal{2e-3, 2e-3, 1e-6};
  CHECK(equal.effective_radius() == 2e-3);

  CrossedCylindersGeometry mixed{1e-3, 4e-3, 1e-6};
  CHECK(mixed.effective_radius() == doctest::Approx(2e-3).epsilon(1e-15));

  CHECK(CrossedCylindersGeometry(1e-3, 1e-3, 1e-6).warnings().empty());
  CHECK_FALSE(CrossedCylindersGeometry(1e-3, 1e-3, 50e-6).warnings().empty());
}

TEST_CASE("exactly two polarizations, iterated in a fixed order") {
  REQUIRE(both_polarizations.size() == 2);
  CHECK(both_polarizations[0] == Polarization::TE);
  CHECK(both_polarizations[1] == Polarization::TM);
}

TEST_CASE("unit parsing: decimal spellings of the same value are identical") {
  CHECK(parse_length("1um") == parse_length("1000nm"));
  CHECK(parse_length("1um") == parse_length("1e-6"));
  CHECK(parse_length("1um") == parse_length("1\xc2\xb5m"));
  CHECK(parse_length("0.5um") == parse_length("500nm"));
  CHECK(parse_length("10mm") == parse_length("1cm"));
  CHECK(parse_area("1cm^2") == parse_area("1e-4"));
  CHECK(parse_area("1cm^2") == parse_area("100mm^2"));
  CHECK(parse_temperature("300K") == 300.0);
  CHECK(parse_temperature("300") == 300.0);
  CHECK(parse_angular_frequency("1.4e16rad/s") == 1.4e16);
}

TEST_CASE("unit parsing: rejects junk, unknown suffixes, and non-physical values") {
  CHECK_THROWS_AS(parse_length("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_length("1furlong"), std::invalid_argument);
  CHECK_THROWS_AS(parse_length("-1um"), std::invalid_argument);
  CHECK_THROWS_AS(parse_length("0m"), std::invalid_argument);
  CHECK_THROWS_AS(parse_area("1cm"), std::invalid_argument);
  CHECK_THROWS_AS(parse_temperature("-3K"), std::invalid_argument);
  CHECK_THROWS_AS(parse_angular_frequency("0"), std::invalid_argument);
}
