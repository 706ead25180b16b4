#pragma once

#include <string>

// Command-line front end. Options are collected as strings and resolved to
// domain types only at dispatch, so diagnostics can name the offending field
// before any computation starts.
namespace casimir::cli {

struct RunConfig {
  std::string geometry = "plane-plane";  // plane-plane | sphere-plane | crossed-cylinders
  std::string area = "1cm^2";            // plane-plane only
  std::string radius = "100um";          // sphere-plane / crossed-cylinders
  std::string radius2;                   // crossed-cylinders; defaults to radius
  std::string separation = "1um";
  std::string mirror1 = "perfect";
  std::string mirror2 = "same";
  std::string temperature = "0K";
  std::string quantity = "force";        // force | energy (energy: plane-plane only)
  std::string zero_frequency = "plasma"; // m = 0 TE prescription: plasma | drude
  std::string roughness;                 // empty | gauss:<rms> | file:<path>
  double rel_tol = 1e-9;
  std::string out;                       // empty = stdout
};

// Exit codes: 0 success, 2 configuration/parse error, 3 numerical
// non-convergence.
int run(int argc, char** argv);

}  // namespace casimir::cli
