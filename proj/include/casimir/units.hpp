#pragma once

#include <string>

// Unit-suffix parsing for the CLI boundary and locale-independent number
// formatting for CSV output. Everything behind this boundary is strict SI.
namespace casimir {

// "136nm", "0.5um", "1e-6" (bare = metres). Suffixes: nm, um (or the micro
// sign), mm, cm, m. Throws std::invalid_argument on anything else.
double parse_length(const std::string& text);

// "1cm^2", "1e-4" (bare = m^2). Suffixes: nm^2, um^2, mm^2, cm^2, m^2.
double parse_area(const std::string& text);

// "300K" or "300". Kelvin, >= 0.
double parse_temperature(const std::string& text);

// "1.4e16" or "1.4e16rad/s". rad/s, > 0.
double parse_angular_frequency(const std::string& text);

// Shortest round-trip decimal representation, locale-independent (never a
// comma decimal separator); used for every CSV cell so sweep output is
// byte-identical across runs and machines with the same binary.
std::string format_double(double v);

}  // namespace casimir
