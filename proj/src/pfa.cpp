#include "casimir/pfa.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "casimir/constants.hpp"

namespace casimir {
namespace {

using constants::pi;

// Mass kept inside the +-4 sigma truncation window.
const double kGaussianNorm = std::erf(4.0 / std::sqrt(2.0));

ForceResult pfa_force(double effective_radius, double separation,
                      std::vector<std::string> geometry_warnings, const MirrorModel& mirror1,
                      const MirrorModel& mirror2, const ThermalState& thermal,
                      const EngineConfig& cfg) {
  // Unit-area cavity: E_pp per unit area times 2 pi R gives the curved force.
  const CavityConfig cav{mirror1, mirror2, PlanePlaneGeometry{1.0, separation}, thermal};
  const ForceResult epp = energy_plane_plane(cav, cfg);

  ForceResult r;
  const double scale = 2.0 * pi * effective_radius;
  r.value = scale * epp.value;
  r.error_estimate = scale * epp.error_estimate;
  r.reduction_factor = epp.reduction_factor;
  r.quantity = Quantity::Force;
  r.warnings = std::move(geometry_warnings);
  for (const std::string& s : epp.warnings) {
    // The unit-area plane-plane cavity is an internal device; its aspect
    // ratio warning does not describe the curved geometry.
    if (s.find("aspect") == std::string::npos) r.warnings.push_back(s);
  }
  return r;
}

}  // namespace

RoughnessProfile RoughnessProfile::gaussian(double rms) {
  if (!(rms > 0.0) || !std::isfinite(rms))
    throw std::invalid_argument("roughness: gaussian rms must be finite and > 0");
  RoughnessProfile p;
  p.gaussian_rms_ = rms;
  return p;
}

RoughnessProfile RoughnessProfile::discrete(std::vector<double> offsets,
                                            std::vector<double> weights) {
  if (offsets.empty() || offsets.size() != weights.size())
    throw std::invalid_argument("roughness: offsets and weights must be nonempty, same size");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw std::invalid_argument("roughness: weights must be finite and >= 0");
    total += w;
  }
  for (double h : offsets)
    if (!std::isfinite(h)) throw std::invalid_argument("roughness: offsets must be finite");
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("roughness: weights must sum to 1 within 1e-12");
  RoughnessProfile p;
  p.offsets_ = std::move(offsets);
  p.weights_ = std::move(weights);
  return p;
}

void RoughnessProfile::check_against(double separation) const {
  if (!(separation > 0.0) || !std::isfinite(separation))
    throw std::invalid_argument("roughness: separation must be finite and > 0");
  if (is_gaussian()) {
    if (gaussian_rms_ * 5.0 >= separation)
      throw std::invalid_argument(
          "roughness: gaussian rms must satisfy rms < separation / 5; the plate-averaging "
          "model breaks down for rougher surfaces");
    return;
  }
  for (double h : offsets_)
    if (!(separation + h > 0.0))
      throw std::invalid_argument("roughness: an offset closes or inverts the gap");
}

ForceResult force_sphere_plane(const SpherePlaneGeometry& geom, const MirrorModel& mirror1,
                               const MirrorModel& mirror2, const ThermalState& thermal,
                               const EngineConfig& cfg) {
  return pfa_force(geom.radius, geom.separation, geom.warnings(), mirror1, mirror2, thermal,
                   cfg);
}

ForceResult force_crossed_cylinders(const CrossedCylindersGeometry& geom,
                                    const MirrorModel& mirror1, const MirrorModel& mirror2,
                                    const ThermalState& thermal, const EngineConfig& cfg) {
  std::vector<std::string> w = geom.warnings();
  if (geom.radius1 != geom.radius2)
    w.push_back(
        "crossed cylinders with unequal radii use R_eff = sqrt(R1 R2), beyond the validated "
        "equal-radius regime");
  return pfa_force(geom.effective_radius(), geom.separation, std::move(w), mirror1, mirror2,
                   thermal, cfg);
}

ForceResult roughness_average(const std::function<double(double)>& base_force,
                              const RoughnessProfile& profile, double separation,
                              const QuadratureConfig& cfg) {
  cfg.validate();
  profile.check_against(separation);

  ForceResult r;
  r.quantity = Quantity::Force;

  if (profile.is_gaussian()) {
    const double a = profile.rms();
    const double norm = a * std::sqrt(2.0 * pi) * kGaussianNorm;
    const Integrand f = [&](double h) {
      return base_force(separation + h) * std::exp(-0.5 * (h / a) * (h / a)) / norm;
    };
    const double breaks[] = {-2.0 * a, -a, 0.0, a, 2.0 * a};
    const NumericResult avg = integrate_finite(f, -4.0 * a, 4.0 * a, cfg, breaks);
    r.value = avg.value;
    r.error_estimate = avg.error_estimate;
  } else {
    double sum = 0.0;
    for (std::size_t i = 0; i < profile.offsets().size(); ++i)
      sum += profile.weights()[i] * base_force(separation + profile.offsets()[i]);
    r.value = sum;
    r.error_estimate = 0.0;  // exact weighted sum; base_force's own error is the caller's
  }

  const double nominal = base_force(separation);
  r.reduction_factor = nominal != 0.0 ? r.value / nominal : 0.0;
  r.warnings.push_back(
      "roughness averaging assumes correlation lengths large against the gap; short-scale "
      "roughness needs a scattering treatment");
  return r;
}

}  // namespace casimir
