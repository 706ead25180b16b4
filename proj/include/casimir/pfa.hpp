#pragma once

#include <functional>
#include <vector>

#include "casimir/engine.hpp"
#include "casimir/geometry.hpp"

// Curved-surface mappings (proximity-force / Deriagin approximation) and
// surface roughness averaging, both built on the plane-plane engine.
namespace casimir {

// Surface height distribution around the nominal separation. Gaussian
// profiles are truncated at +-4 rms and renormalized; discrete profiles are
// explicit (offset, weight) pairs with weights summing to 1 within 1e-12.
class RoughnessProfile {
 public:
  static RoughnessProfile gaussian(double rms);
  static RoughnessProfile discrete(std::vector<double> offsets, std::vector<double> weights);

  bool is_gaussian() const { return gaussian_rms_ > 0.0; }
  double rms() const { return gaussian_rms_; }
  const std::vector<double>& offsets() const { return offsets_; }
  const std::vector<double>& weights() const { return weights_; }

  // Applicability at a nominal separation: every shifted gap must stay
  // positive, and a Gaussian rms must satisfy a < L/5 (hard error: the
  // averaging model itself breaks down beyond that).
  void check_against(double separation) const;

 private:
  RoughnessProfile() = default;
  double gaussian_rms_ = 0.0;
  std::vector<double> offsets_;
  std::vector<double> weights_;
};

// F_sphere-plane(L) = (2 pi R) * E_plane-plane(L) per unit area; the
// reduction factor of the result equals eta_E of the underlying cavity.
ForceResult force_sphere_plane(const SpherePlaneGeometry& geom, const MirrorModel& mirror1,
                               const MirrorModel& mirror2, const ThermalState& thermal,
                               const EngineConfig& cfg = {});

// Crossed cylinders map onto sphere-plane with R_eff = sqrt(R1 R2); exact
// degeneracy with sphere-plane when R1 = R2. The R1 != R2 composition is an
// extension beyond the validated regime and is flagged in the warnings.
ForceResult force_crossed_cylinders(const CrossedCylindersGeometry& geom,
                                    const MirrorModel& mirror1, const MirrorModel& mirror2,
                                    const ThermalState& thermal, const EngineConfig& cfg = {});

// Weighted average of base_force(L + h) over the profile. Discrete profiles
// sum exactly; Gaussian profiles integrate adaptively against the truncated
// normal density. Averaging force over a convex law never decreases it.
// The stochastic-surfaces caveat is always attached: plate-level averaging
// assumes roughness correlation lengths large against the gap.
ForceResult roughness_average(const std::function<double(double)>& base_force,
                              const RoughnessProfile& profile, double separation,
                              const QuadratureConfig& cfg = {});

}  // namespace casimir
