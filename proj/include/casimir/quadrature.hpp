#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

// Deterministic adaptive quadrature and Matsubara summation.
//
// Contracts shared by every routine here:
//   - error_estimate is a bound-style estimate: |value - exact| is expected
//     within error_estimate for integrands satisfying the stated decay
//     preconditions; truncated tails are folded into error_estimate, never
//     silently dropped;
//   - results are bitwise reproducible for a given integrand and config
//     (fixed summation order of panel contributions, no randomness);
//   - failure to converge raises NumericsError, it is never reported as a
//     finite result.
namespace casimir {

class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureConfig {
  double rel_tol = 1e-9;      // relative tolerance target
  double abs_floor = 1e-300;  // absolute floor, integrand units
  int max_depth = 60;         // panel bisection depth limit
  int matsubara_run = 3;      // consecutive small terms required to stop the sum
  long matsubara_max_terms = 100000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
      throw std::invalid_argument("quadrature: rel_tol must be in (0, 1)");
    if (!(abs_floor > 0.0)) throw std::invalid_argument("quadrature: abs_floor must be > 0");
    if (max_depth < 10) throw std::invalid_argument("quadrature: max_depth must be >= 10");
    if (matsubara_run < 1 || matsubara_max_terms < 2)
      throw std::invalid_argument("quadrature: bad Matsubara truncation policy");
  }
};

struct NumericResult {
  double value = 0.0;
  double error_estimate = 0.0;  // >= 0
  long evaluations = 0;
};

using Integrand = std::function<double(double)>;

// integral of f over (a, b), globally adaptive G7/K15. `interior_breaks`
// seeds panel edges at known kinks (strictly inside (a, b), ascending).
// Endpoints are never evaluated (all Kronrod nodes are interior).
NumericResult integrate_finite(const Integrand& f, double a, double b,
                               const QuadratureConfig& cfg,
                               std::span<const double> interior_breaks = {});

// integral of f over (0, inf) for integrands decaying at least exponentially
// beyond t ~ decay_scale. Substitutes u = t / decay_scale, covers u with
// doubling panels [0,1], [1,2], [2,4], ... until the next panel is negligible,
// refines adaptively, and folds a geometric tail bound into error_estimate.
NumericResult integrate_semi_infinite(const Integrand& f, double decay_scale,
                                      const QuadratureConfig& cfg);

// term(0)/2 + sum_{m >= 1} term(m), for term sequences eventually decreasing
// geometrically. Stops once |term| < rel_tol * |partial sum| held for
// `matsubara_run` consecutive terms; the geometric tail bound from the last
// ratio is folded into error_estimate. Exceeding matsubara_max_terms raises
// NumericsError.
NumericResult matsubara_sum(const std::function<double(long)>& term,
                            const QuadratureConfig& cfg);

}  // namespace casimir
