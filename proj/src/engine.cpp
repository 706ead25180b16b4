#include "casimir/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "casimir/constants.hpp"

namespace casimir {
namespace {

using constants::c_light;
using constants::hbar;
using constants::k_boltzmann;
using constants::pi;

// One mirror frozen at a single imaginary frequency. The dielectric response
// is evaluated once per xi, not once per (xi, kappa) node.
struct MirrorAtXi {
  bool perfect = false;
  double eps = 0.0;
};

MirrorAtXi mirror_at_xi(const MirrorModel& m, double xi, const QuadratureConfig& qcfg) {
  if (m.is_perfect()) return {true, 0.0};
  const EpsilonValue ev = epsilon_imaginary_axis(m, xi, qcfg);
  if (ev.divergent) throw NumericsError("engine: dielectric response diverged at xi > 0");
  if (!std::isfinite(ev.value) || ev.value < 1.0)
    throw NumericsError("engine: dielectric response left the causal range eps(i xi) >= 1");
  return {false, ev.value};
}

double amplitude(const MirrorAtXi& m, double xi, double kappa, Polarization p) {
  if (m.perfect) return p == Polarization::TE ? -1.0 : 1.0;
  return fresnel_from_kappa(m.eps, xi, kappa, p);
}

// Zero-frequency TE amplitude per prescription (TM is +1 for every mirror
// with a metallic response, -1 never arises because kappa = k at xi = 0).
double te_amplitude_zero_xi(const MirrorModel& m, double kappa, ZeroFrequencyPrescription z) {
  if (m.is_perfect()) return -1.0;
  if (z == ZeroFrequencyPrescription::Drude) return 0.0;
  return r_te_zero_frequency_plasma(m.omega_p(), kappa);
}

// Closed-loop factors, guarding the passivity bound r1 r2 e^{-2 kappa L} < 1.
double loop_factor(double R, double x, Quantity q) {
  const double Rx = R * x;
  if (!(Rx < 1.0))
    throw NumericsError("engine: internal consistency failure, r1 r2 e^{-2 kappa L} >= 1");
  return q == Quantity::Force ? Rx / (1.0 - Rx) : -std::log1p(-Rx);
}

// Integral over kappa at fixed xi > 0, shifted to t = kappa - xi/c so the
// lower limit is 0 and the decay scale is 1/(2L) independent of xi.
NumericResult inner_integral(Quantity q, double xi, const MirrorAtXi& m1, const MirrorAtXi& m2,
                             double L, const QuadratureConfig& cfg) {
  const double xi_over_c = xi / c_light;
  const bool same = (m1.perfect && m2.perfect) ||
                    (!m1.perfect && !m2.perfect && m1.eps == m2.eps);
  const Integrand f = [&](double t) {
    const double kappa = xi_over_c + t;
    const double x = std::exp(-2.0 * kappa * L);
    double sum = 0.0;
    for (Polarization p : both_polarizations) {
      const double r1 = amplitude(m1, xi, kappa, p);
      const double r2 = same ? r1 : amplitude(m2, xi, kappa, p);
      sum += loop_factor(r1 * r2, x, q);
    }
    return (q == Quantity::Force ? kappa * kappa : kappa) * sum;
  };
  return integrate_semi_infinite(f, 1.0 / (2.0 * L), cfg);
}

// m = 0 Matsubara term: xi = 0, kappa runs over k itself.
NumericResult inner_integral_zero_xi(Quantity q, const MirrorModel& m1, const MirrorModel& m2,
                                     ZeroFrequencyPrescription z, double L,
                                     const QuadratureConfig& cfg) {
  const Integrand f = [&](double kappa) {
    const double x = std::exp(-2.0 * kappa * L);
    double sum = loop_factor(1.0, x, q);  // TM: r1 r2 = 1 for all mirror pairs
    const double r1 = te_amplitude_zero_xi(m1, kappa, z);
    const double r2 = te_amplitude_zero_xi(m2, kappa, z);
    if (r1 != 0.0 && r2 != 0.0) sum += loop_factor(r1 * r2, x, q);
    return (q == Quantity::Force ? kappa * kappa : kappa) * sum;
  };
  return integrate_semi_infinite(f, 1.0 / (2.0 * L), cfg);
}

QuadratureConfig tighten_inner(const QuadratureConfig& cfg) {
  QuadratureConfig inner = cfg;
  inner.rel_tol = std::max(cfg.rel_tol * 0.1, 1e-14);
  return inner;
}

struct RawResult {
  double value = 0.0;
  double error = 0.0;
};

// Every integrand here is nonnegative, so the inner quadratures' relative
// tolerance propagates linearly: |delta Outer| <= inner_rel * Outer.
RawResult lifshitz_T0(const CavityConfig& cav, const EngineConfig& cfg, Quantity q) {
  const double L = cav.geometry.separation;
  const QuadratureConfig inner_cfg = tighten_inner(cfg.quadrature);
  const bool same_model = cav.mirror1.same_as(cav.mirror2);
  const Integrand outer = [&](double xi) {
    const MirrorAtXi m1 = mirror_at_xi(cav.mirror1, xi, inner_cfg);
    const MirrorAtXi m2 = same_model ? m1 : mirror_at_xi(cav.mirror2, xi, inner_cfg);
    return inner_integral(q, xi, m1, m2, L, inner_cfg).value;
  };
  const NumericResult out = integrate_semi_infinite(outer, c_light / (2.0 * L), cfg.quadrature);
  const double pref = q == Quantity::Force
                          ? hbar * cav.geometry.area / (2.0 * pi * pi)
                          : hbar * cav.geometry.area / (4.0 * pi * pi);
  return {pref * out.value,
          pref * (out.error_estimate + inner_cfg.rel_tol * std::abs(out.value))};
}

RawResult lifshitz_finite_T(const CavityConfig& cav, const EngineConfig& cfg, Quantity q) {
  const double T = cav.thermal.temperature;
  const double L = cav.geometry.separation;
  const double xi_step = 2.0 * pi * k_boltzmann * T / hbar;
  const QuadratureConfig inner_cfg = tighten_inner(cfg.quadrature);
  const bool same_model = cav.mirror1.same_as(cav.mirror2);
  const auto term = [&](long m) {
    if (m == 0)
      return inner_integral_zero_xi(q, cav.mirror1, cav.mirror2, cfg.zero_frequency, L,
                                    inner_cfg)
          .value;
    const double xi = xi_step * static_cast<double>(m);
    const MirrorAtXi m1 = mirror_at_xi(cav.mirror1, xi, inner_cfg);
    const MirrorAtXi m2 = same_model ? m1 : mirror_at_xi(cav.mirror2, xi, inner_cfg);
    return inner_integral(q, xi, m1, m2, L, inner_cfg).value;
  };
  const NumericResult s = matsubara_sum(term, cfg.quadrature);
  const double pref = q == Quantity::Force ? k_boltzmann * T * cav.geometry.area / pi
                                           : k_boltzmann * T * cav.geometry.area / (2.0 * pi);
  return {pref * s.value, pref * (s.error_estimate + inner_cfg.rel_tol * std::abs(s.value))};
}

std::vector<std::string> collect_warnings(const CavityConfig& cav) {
  std::vector<std::string> w = cav.geometry.warnings();
  for (const std::string& s : cav.mirror1.warnings()) w.push_back("mirror1: " + s);
  for (const std::string& s : cav.mirror2.warnings()) w.push_back("mirror2: " + s);
  return w;
}

ForceResult make_result(const CavityConfig& cav, Quantity q, const RawResult& raw) {
  ForceResult r;
  r.value = raw.value;
  r.error_estimate = raw.error;
  const double ideal = q == Quantity::Force ? ideal_casimir_force(cav.geometry)
                                            : ideal_casimir_energy(cav.geometry);
  r.reduction_factor = raw.value / ideal;
  r.quantity = q;
  r.warnings = collect_warnings(cav);
  return r;
}

void require_T0(const CavityConfig& cav, const char* op) {
  if (!cav.thermal.is_zero())
    throw std::invalid_argument(std::string(op) + ": thermal state must be T = 0");
}

void require_finite_T(const CavityConfig& cav, const char* op) {
  if (cav.thermal.is_zero())
    throw std::invalid_argument(std::string(op) + ": thermal state must have T > 0");
}

}  // namespace

ForceResult force_plane_plane_T0(const CavityConfig& cav, const EngineConfig& cfg) {
  require_T0(cav, "force_plane_plane_T0");
  cfg.quadrature.validate();
  return make_result(cav, Quantity::Force, lifshitz_T0(cav, cfg, Quantity::Force));
}

ForceResult energy_plane_plane_T0(const CavityConfig& cav, const EngineConfig& cfg) {
  require_T0(cav, "energy_plane_plane_T0");
  cfg.quadrature.validate();
  return make_result(cav, Quantity::Energy, lifshitz_T0(cav, cfg, Quantity::Energy));
}

ForceResult force_plane_plane_finite_T(const CavityConfig& cav, const EngineConfig& cfg) {
  require_finite_T(cav, "force_plane_plane_finite_T");
  cfg.quadrature.validate();
  return make_result(cav, Quantity::Force, lifshitz_finite_T(cav, cfg, Quantity::Force));
}

ForceResult energy_plane_plane_finite_T(const CavityConfig& cav, const EngineConfig& cfg) {
  require_finite_T(cav, "energy_plane_plane_finite_T");
  cfg.quadrature.validate();
  return make_result(cav, Quantity::Energy, lifshitz_finite_T(cav, cfg, Quantity::Energy));
}

ForceResult force_plane_plane(const CavityConfig& cav, const EngineConfig& cfg) {
  return cav.thermal.is_zero() ? force_plane_plane_T0(cav, cfg)
                               : force_plane_plane_finite_T(cav, cfg);
}

ForceResult energy_plane_plane(const CavityConfig& cav, const EngineConfig& cfg) {
  return cav.thermal.is_zero() ? energy_plane_plane_T0(cav, cfg)
                               : energy_plane_plane_finite_T(cav, cfg);
}

double eta_F(const CavityConfig& cav, const EngineConfig& cfg) {
  return force_plane_plane(cav, cfg).reduction_factor;
}

double eta_E(const CavityConfig& cav, const EngineConfig& cfg) {
  return energy_plane_plane(cav, cfg).reduction_factor;
}

CorrectionFactors correction_factors(const CavityConfig& cav, const EngineConfig& cfg) {
  EngineConfig tight = cfg;
  tight.quadrature.rel_tol = std::max(cfg.quadrature.rel_tol * 1e-2, 1e-13);

  const ForceResult full = force_plane_plane(cav, tight);

  CavityConfig frozen = cav;
  frozen.thermal = ThermalState::zero();
  const ForceResult plasma_part = force_plane_plane_T0(frozen, tight);

  CavityConfig ideal = cav;
  ideal.mirror1 = MirrorModel::perfect();
  ideal.mirror2 = MirrorModel::perfect();
  const ForceResult thermal_part = force_plane_plane(ideal, tight);

  CorrectionFactors out;
  out.eta_F = full.reduction_factor;
  out.eta_F_plasma = plasma_part.reduction_factor;
  out.eta_F_thermal = thermal_part.reduction_factor;
  out.delta_F = out.eta_F / (out.eta_F_plasma * out.eta_F_thermal) - 1.0;

  const double rel = full.error_estimate / full.value +
                     plasma_part.error_estimate / plasma_part.value +
                     thermal_part.error_estimate / thermal_part.value;
  out.delta_F_error = (1.0 + std::abs(out.delta_F)) * rel;

  out.warnings = full.warnings;
  if (!(cav.mirror1.is_plasma() && cav.mirror2.is_plasma()))
    out.warnings.push_back(
        "correction factors: decomposition is calibrated for plasma-model mirrors");
  return out;
}

}  // namespace casimir
