#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "casimir/geometry.hpp"
#include "casimir/quadrature.hpp"

// Mirror optical response on the imaginary frequency axis and the Fresnel
// reflection amplitudes entering the cavity formulas.
//
// Sign convention: r^TE in (-1, 0], r^TM in [0, 1) for eps >= 1, so that the
// perfect-reflector limit is r^TE -> -1, r^TM -> +1. Only the products
// r1 * r2 enter any physical result.
namespace casimir {

// Absorption spectrum Im eps(omega) tabulated on the real axis, with an
// explicit Drude low-frequency extension and a high-frequency cutoff for the
// dispersion integral. Extrapolation parameters carry no defaults: they are
// material statements and must be supplied by the caller.
struct OpticalDataTable {
  std::vector<double> omega;     // rad/s, strictly ascending
  std::vector<double> eps_imag;  // dimensionless, >= 0
  double drude_omega_p;          // rad/s, extension below omega.front()
  double drude_gamma;            // rad/s
  double cutoff;                 // rad/s, integral truncated above min(cutoff, omega.back())

  // Throws std::invalid_argument naming the offending row (1-based) on bad
  // monotonicity or negative Im eps; requires >= 10 rows spanning >= 3 decades.
  OpticalDataTable(std::vector<double> omega_, std::vector<double> eps_imag_,
                   double drude_omega_p_, double drude_gamma_, double cutoff_);
};

// Precomputed eps(i xi) samples (the ingest-optical output); log-log linear
// in (xi, eps-1) with end-slope extension outside the grid. Keeps the Drude
// parameters of its source so the zero-frequency limits remain available.
struct EpsilonGrid {
  std::vector<double> xi;   // rad/s, strictly ascending, > 0
  std::vector<double> eps;  // > 1
  double drude_omega_p;     // rad/s
  double drude_gamma;       // rad/s

  EpsilonGrid(std::vector<double> xi_, std::vector<double> eps_, double drude_omega_p_,
              double drude_gamma_);
  double value(double xi_query) const;  // xi_query > 0
};

// One mirror's optical model. Perfect mirrors bypass the dielectric layer
// entirely (unit reflection at every frequency); the metallic models evaluate
// eps(i xi) and go through the Fresnel amplitudes.
class MirrorModel {
 public:
  enum class Kind { Perfect, Plasma, Drude, Tabulated };

  static MirrorModel perfect();
  static MirrorModel plasma(double omega_p);
  static MirrorModel drude(double omega_p, double gamma);
  static MirrorModel tabulated(OpticalDataTable table);
  static MirrorModel tabulated(EpsilonGrid grid);

  Kind kind() const;
  bool is_perfect() const { return kind() == Kind::Perfect; }
  bool is_plasma() const { return kind() == Kind::Plasma; }

  // Plasma frequency of the low-frequency response; defined for every
  // non-perfect model (tabulated models carry their Drude extension value).
  double omega_p() const;

  // Relaxation rate; defined for Drude and tabulated models.
  double drude_gamma() const;

  // Construction-time caveats (e.g. Drude gamma > 0.1 omega_P, outside the
  // good-conductor regime the model is meant for).
  std::vector<std::string> warnings() const;

  std::string describe() const;

  // True when both models provably evaluate identically (same parameters or
  // same shared table); lets the engine skip duplicate dielectric work.
  bool same_as(const MirrorModel& other) const;

  const OpticalDataTable* table() const;  // nullptr unless raw-table backed
  const EpsilonGrid* grid() const;        // nullptr unless grid backed

 private:
  struct PerfectTag {};
  struct PlasmaParams { double omega_p; };
  struct DrudeParams { double omega_p; double gamma; };
  using Rep = std::variant<PerfectTag, PlasmaParams, DrudeParams,
                           std::shared_ptr<const OpticalDataTable>,
                           std::shared_ptr<const EpsilonGrid>>;
  explicit MirrorModel(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

// eps(i xi) is real and >= 1 for every causal absorbing medium. Conductors
// diverge as xi -> 0; that limit (and the perfect mirror at any xi) is
// reported as divergent, never as a floating-point number.
struct EpsilonValue {
  double value = 0.0;
  bool divergent = false;
};

// Plasma: 1 + omega_P^2/xi^2. Drude: 1 + omega_P^2/(xi (xi + gamma)).
// Tabulated: dispersion integral over the stored table (or grid lookup).
EpsilonValue epsilon_imaginary_axis(const MirrorModel& m, double xi,
                                    const QuadratureConfig& cfg = {});

// eps(i xi) = 1 + (2/pi) Integral_0^inf omega Im eps(omega)/(omega^2 + xi^2) d omega,
// with the integrand continued below omega.front() by the Drude form
// Im eps = omega_P^2 gamma / (omega (omega^2 + gamma^2)) and truncated above
// the table cutoff. xi > 0.
double kramers_kronig_continuation(const OpticalDataTable& table, double xi,
                                   const QuadratureConfig& cfg = {});

// Fresnel amplitude at imaginary frequency xi >= 0, transverse wavevector
// k >= 0 (not both zero), for a medium with eps = eps(i xi) >= 1:
//   r^TE = -(sqrt(xi^2 eps + c^2 k^2) - c kappa) / (sqrt(...) + c kappa)
//   r^TM =  (eps c kappa - sqrt(xi^2 eps + c^2 k^2)) / (eps c kappa + sqrt(...))
// with kappa = sqrt(k^2 + xi^2/c^2). eps = 1 returns exactly 0.
double fresnel_reflection(double eps, double xi, double k, Polarization p);

// Same amplitude parameterized by kappa >= xi/c (the cavity integration
// variable); k^2 = kappa^2 - xi^2/c^2.
double fresnel_from_kappa(double eps, double xi, double kappa, Polarization p);

// xi = 0 limits, taken analytically per model family:
//   plasma-type:  r^TE(0,k) = -(sqrt(k^2 + omega_P^2/c^2) - k)/(sqrt(...) + k)
//   drude-type:   r^TE(0,k) = 0
//   every conductor: r^TM(0,k) = +1
double r_te_zero_frequency_plasma(double omega_p, double k);

}  // namespace casimir
