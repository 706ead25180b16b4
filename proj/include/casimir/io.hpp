#pragma once

#include <optional>
#include <string>

#include "casimir/optics.hpp"

// File formats at the tool boundary.
//
// Optical data CSV (input): header `omega_rad_s,n,k` (Im eps = 2 n k) or
// `omega_rad_s,eps_imag`; `#` lines and blank lines ignored. Parse failures
// throw with the 1-based physical line number.
//
// Epsilon grid CSV (ingest output / mirror source): header `xi_rad_s,eps_i_xi`
// preceded by `# drude_omega_p=...` and `# drude_gamma=...` metadata lines so
// the grid stays usable as a mirror model at zero frequency.
namespace casimir {

struct RawOpticalRows {
  std::vector<double> omega;
  std::vector<double> eps_imag;
};

// Parses the CSV only; table invariants are applied by the caller when it
// constructs the OpticalDataTable (so row diagnostics stay file-relative).
RawOpticalRows load_optical_rows(const std::string& path);

// Convenience: load + construct. cutoff defaults to the last tabulated omega.
OpticalDataTable load_optical_table(const std::string& path, double drude_omega_p,
                                    double drude_gamma,
                                    std::optional<double> cutoff = std::nullopt);

void save_epsilon_grid(const std::string& path, const EpsilonGrid& grid);
EpsilonGrid load_epsilon_grid(const std::string& path);

}  // namespace casimir
