#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/constants.hpp"

// Cavity geometries, thermal state and the ideal-mirror closed forms.
//
// Conventions used throughout the project:
//   - strict SI internally (m, m^2, K, N, J); unit suffixes live at the CLI
//     boundary only;
//   - attraction is positive: forces and binding energies are returned >= 0;
//   - geometric validity limits (parallelism, proximity-force regime) are
//     surfaced as warnings, never as hard errors.
namespace casimir {

enum class Polarization { TE, TM };
inline constexpr std::array<Polarization, 2> both_polarizations{Polarization::TE,
                                                                Polarization::TM};

// Two parallel plane mirrors, area `area`, inner-face separation `separation`.
// The plane-plane formulas assume transverse dimensions much larger than the
// gap; `warnings()` flags L^2 > 1e-4 * A.
struct PlanePlaneGeometry {
  double area;        // m^2
  double separation;  // m

  PlanePlaneGeometry(double area_, double separation_) : area(area_), separation(separation_) {
    if (!(area > 0.0)) throw std::invalid_argument("plane-plane: area must be > 0");
    if (!(separation > 0.0)) throw std::invalid_argument("plane-plane: separation must be > 0");
  }

  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (separation * separation > 1e-4 * area)
      w.push_back("plane-plane geometry outside validity: L^2 > 1e-4 * A (gap not small "
                  "against transverse size)");
    return w;
  }
};

// Sphere of radius `radius` above a plane, closest approach `separation`.
// Mapped onto plane-plane via the proximity-force (Deriagin) approximation,
// trustworthy for R >> L; `warnings()` flags R < 100 L.
struct SpherePlaneGeometry {
  double radius;      // m
  double separation;  // m

  SpherePlaneGeometry(double radius_, double separation_) : radius(radius_), separation(separation_) {
    if (!(radius > 0.0)) throw std::invalid_argument("sphere-plane: radius must be > 0");
    if (!(separation > 0.0)) throw std::invalid_argument("sphere-plane: separation must be > 0");
  }

  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (radius < 100.0 * separation)
      w.push_back("sphere-plane geometry outside proximity-force validity: R < 100 * L");
    return w;
  }
};

// Two cylinders crossed at right angles; equivalent sphere-plane radius
// sqrt(R1 R2). When R1 == R2 the effective radius is returned exactly so the
// sphere-plane degeneracy is bit-exact.
struct CrossedCylindersGeometry {
  double radius1;     // m
  double radius2;     // m
  double separation;  // m

  CrossedCylindersGeometry(double radius1_, double radius2_, double separation_)
      : radius1(radius1_), radius2(radius2_), separation(separation_) {
    if (!(radius1 > 0.0) || !(radius2 > 0.0))
      throw std::invalid_argument("crossed-cylinders: radii must be > 0");
    if (!(separation > 0.0))
      throw std::invalid_argument("crossed-cylinders: separation must be > 0");
  }

  double effective_radius() const {
    return radius1 == radius2 ? radius1 : std::sqrt(radius1 * radius2);
  }

  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (effective_radius() < 100.0 * separation)
      w.push_back("crossed-cylinders geometry outside proximity-force validity: "
                  "sqrt(R1*R2) < 100 * L");
    return w;
  }
};

// Equilibrium temperature of the cavity. T = 0 selects the vacuum-only engine.
struct ThermalState {
  double temperature;  // K

  explicit ThermalState(double temperature_) : temperature(temperature_) {
    if (!(temperature >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
  }
  static ThermalState zero() { return ThermalState(0.0); }

  bool is_zero() const { return temperature == 0.0; }

  // lambda_T = hbar c / (kB T): photon thermal wavelength, infinite at T = 0.
  double thermal_wavelength() const {
    if (temperature == 0.0) return std::numeric_limits<double>::infinity();
    return constants::hbar * constants::c_light / (constants::k_boltzmann * temperature);
  }
};

// F_ideal = hbar c pi^2 A / (240 L^4): perfectly reflecting mirrors at T = 0.
inline double ideal_casimir_force(const PlanePlaneGeometry& g) {
  return constants::hbar * constants::c_light * constants::pi * constants::pi * g.area /
         (240.0 * g.separation * g.separation * g.separation * g.separation);
}

// E_ideal = hbar c pi^2 A / (720 L^3), binding energy taken positive.
// F_ideal = 3 E_ideal / L holds exactly.
inline double ideal_casimir_energy(const PlanePlaneGeometry& g) {
  return constants::hbar * constants::c_light * constants::pi * constants::pi * g.area /
         (720.0 * g.separation * g.separation * g.separation);
}

// lambda_P = 2 pi c / omega_P and its inverse; exact round trip.
inline double plasma_wavelength(double omega_p) {
  if (!(omega_p > 0.0)) throw std::invalid_argument("plasma frequency must be > 0");
  return 2.0 * constants::pi * constants::c_light / omega_p;
}

inline double plasma_frequency(double lambda_p) {
  if (!(lambda_p > 0.0)) throw std::invalid_argument("plasma wavelength must be > 0");
  return 2.0 * constants::pi * constants::c_light / lambda_p;
}

}  // namespace casimir
