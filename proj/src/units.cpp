#include "casimir/units.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace casimir {
namespace {

// Leading numeric token via from_chars (locale-independent); returns the
// value and the remaining suffix with surrounding whitespace stripped.
std::pair<double, std::string_view> split_number(const std::string& text, const char* what) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr == s.data())
    throw std::invalid_argument(std::string(what) + ": cannot parse a number from '" + text +
                                "'");
  std::string_view suffix = s.substr(static_cast<std::size_t>(ptr - s.data()));
  while (!suffix.empty() && suffix.front() == ' ') suffix.remove_prefix(1);
  return {value, suffix};
}

// Sub-unit scales are stored as the exact positive power of ten and applied
// by division: one correctly-rounded operation, so every decimal spelling of
// the same value ("1um", "1000nm", "1e-6") parses to the identical double.
struct Suffix {
  std::string_view name;
  double divisor;
};

double apply_suffix(double value, std::string_view suffix, const std::vector<Suffix>& table,
                    const char* what) {
  if (suffix.empty()) return value;
  for (const Suffix& s : table)
    if (suffix == s.name) return value / s.divisor;
  throw std::invalid_argument(std::string(what) + ": unknown unit suffix '" +
                              std::string(suffix) + "'");
}

// Both encodings of the micro sign: U+00B5 and U+03BC.
constexpr std::string_view kMicroSign = "\xc2\xb5";
constexpr std::string_view kGreekMu = "\xce\xbc";

}  // namespace

double parse_length(const std::string& text) {
  const auto [value, suffix] = split_number(text, "length");
  const std::vector<Suffix> table{{"nm", 1e9},
                                  {"um", 1e6},
                                  {std::string(kMicroSign) + "m", 1e6},
                                  {std::string(kGreekMu) + "m", 1e6},
                                  {"mm", 1e3},
                                  {"cm", 1e2},
                                  {"m", 1.0}};
  const double v = apply_suffix(value, suffix, table, "length");
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument("length: must be finite and > 0, got '" + text + "'");
  return v;
}

double parse_area(const std::string& text) {
  const auto [value, suffix] = split_number(text, "area");
  const std::vector<Suffix> table{{"nm^2", 1e18},
                                  {"um^2", 1e12},
                                  {std::string(kMicroSign) + "m^2", 1e12},
                                  {std::string(kGreekMu) + "m^2", 1e12},
                                  {"mm^2", 1e6},
                                  {"cm^2", 1e4},
                                  {"m^2", 1.0}};
  const double v = apply_suffix(value, suffix, table, "area");
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument("area: must be finite and > 0, got '" + text + "'");
  return v;
}

double parse_temperature(const std::string& text) {
  const auto [value, suffix] = split_number(text, "temperature");
  const std::vector<Suffix> table{{"K", 1.0}};
  const double v = apply_suffix(value, suffix, table, "temperature");
  if (v < 0.0 || !std::isfinite(v))
    throw std::invalid_argument("temperature: must be finite and >= 0, got '" + text + "'");
  return v;
}

double parse_angular_frequency(const std::string& text) {
  const auto [value, suffix] = split_number(text, "angular frequency");
  const std::vector<Suffix> table{{"rad/s", 1.0}};
  const double v = apply_suffix(value, suffix, table, "angular frequency");
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument("angular frequency: must be finite and > 0, got '" + text +
                                "'");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::invalid_argument("format_double: value not representable");
  return std::string(buf, ptr);
}

}  // namespace casimir
