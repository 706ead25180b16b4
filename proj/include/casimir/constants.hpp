#pragma once

#include <numbers>

// CODATA 2018 exact values (SI). Fixed: results must not depend on a
// configurable unit system, so these are compile-time constants.
namespace casimir::constants {

inline constexpr double hbar        = 1.054571817e-34;  // J s
inline constexpr double c_light     = 2.99792458e8;     // m / s
inline constexpr double k_boltzmann = 1.380649e-23;     // J / K
inline constexpr double pi          = std::numbers::pi;

}  // namespace casimir::constants
