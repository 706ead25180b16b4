#include "casimir/optics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "casimir/constants.hpp"

namespace casimir {
namespace {

double sq(double v) { return v * v; }

void require_finite_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + " must be finite and > 0");
}

// Log-log linear interpolation of Im eps across one table interval; falls
// back to plain linear when a sample is exactly zero (log-log undefined).
double interp_eps_imag(const OpticalDataTable& t, double w) {
  const auto it = std::upper_bound(t.omega.begin(), t.omega.end(), w);
  std::size_t hi = static_cast<std::size_t>(it - t.omega.begin());
  if (hi == 0) hi = 1;
  if (hi == t.omega.size()) hi = t.omega.size() - 1;
  const std::size_t lo = hi - 1;
  const double w1 = t.omega[lo], w2 = t.omega[hi];
  const double e1 = t.eps_imag[lo], e2 = t.eps_imag[hi];
  if (e1 > 0.0 && e2 > 0.0) {
    const double slope = std::log(e2 / e1) / std::log(w2 / w1);
    return e1 * std::exp(slope * std::log(w / w1));
  }
  return e1 + (e2 - e1) * (w - w1) / (w2 - w1);
}

}  // namespace

OpticalDataTable::OpticalDataTable(std::vector<double> omega_, std::vector<double> eps_imag_,
                                   double drude_omega_p_, double drude_gamma_, double cutoff_)
    : omega(std::move(omega_)),
      eps_imag(std::move(eps_imag_)),
      drude_omega_p(drude_omega_p_),
      drude_gamma(drude_gamma_),
      cutoff(cutoff_) {
  if (omega.size() != eps_imag.size())
    throw std::invalid_argument("optical table: omega/eps_imag length mismatch");
  if (omega.size() < 10)
    throw std::invalid_argument("optical table: needs at least 10 rows");
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const std::string row = "row " + std::to_string(i + 1);
    if (!(omega[i] > 0.0) || !std::isfinite(omega[i]))
      throw std::invalid_argument("optical table: " + row + ": omega must be finite and > 0");
    if (!(eps_imag[i] >= 0.0) || !std::isfinite(eps_imag[i]))
      throw std::invalid_argument("optical table: " + row + ": Im eps must be finite and >= 0");
    if (i > 0 && !(omega[i] > omega[i - 1]))
      throw std::invalid_argument("optical table: " + row + ": omega must be strictly ascending");
  }
  if (!(omega.back() >= 1e3 * omega.front()))
    throw std::invalid_argument("optical table: must span at least 3 decades of omega");
  require_finite_positive(drude_omega_p, "optical table: drude_omega_p");
  require_finite_positive(drude_gamma, "optical table: drude_gamma");
  if (!(cutoff > omega.front()) || !std::isfinite(cutoff))
    throw std::invalid_argument("optical table: cutoff must be finite and above the first row");
}

EpsilonGrid::EpsilonGrid(std::vector<double> xi_, std::vector<double> eps_,
                         double drude_omega_p_, double drude_gamma_)
    : xi(std::move(xi_)),
      eps(std::move(eps_)),
      drude_omega_p(drude_omega_p_),
      drude_gamma(drude_gamma_) {
  if (xi.size() != eps.size() || xi.size() < 2)
    throw std::invalid_argument("epsilon grid: needs >= 2 matched (xi, eps) samples");
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const std::string row = "row " + std::to_string(i + 1);
    if (!(xi[i] > 0.0) || !std::isfinite(xi[i]))
      throw std::invalid_argument("epsilon grid: " + row + ": xi must be finite and > 0");
    if (!(eps[i] > 1.0) || !std::isfinite(eps[i]))
      throw std::invalid_argument("epsilon grid: " + row + ": eps must be finite and > 1");
    if (i > 0 && !(xi[i] > xi[i - 1]))
      throw std::invalid_argument("epsilon grid: " + row + ": xi must be strictly ascending");
  }
  require_finite_positive(drude_omega_p, "epsilon grid: drude_omega_p");
  require_finite_positive(drude_gamma, "epsilon grid: drude_gamma");
}

double EpsilonGrid::value(double xi_query) const {
  if (!(xi_query > 0.0) || !std::isfinite(xi_query))
    throw std::invalid_argument("epsilon grid: xi must be finite and > 0");
  // log-log linear in (xi, eps - 1); end slopes extend beyond the grid.
  const auto it = std::upper_bound(xi.begin(), xi.end(), xi_query);
  std::size_t hi = static_cast<std::size_t>(it - xi.begin());
  if (hi == 0) hi = 1;
  if (hi == xi.size()) hi = xi.size() - 1;
  const std::size_t lo = hi - 1;
  const double y1 = std::log(eps[lo] - 1.0), y2 = std::log(eps[hi] - 1.0);
  const double x1 = std::log(xi[lo]), x2 = std::log(xi[hi]);
  const double y = y1 + (y2 - y1) * (std::log(xi_query) - x1) / (x2 - x1);
  return 1.0 + std::exp(y);
}

MirrorModel MirrorModel::perfect() { return MirrorModel(Rep{PerfectTag{}}); }

MirrorModel MirrorModel::plasma(double omega_p) {
  require_finite_positive(omega_p, "plasma model: omega_p");
  return MirrorModel(Rep{PlasmaParams{omega_p}});
}

MirrorModel MirrorModel::drude(double omega_p, double gamma) {
  require_finite_positive(omega_p, "drude model: omega_p");
  require_finite_positive(gamma, "drude model: gamma");
  return MirrorModel(Rep{DrudeParams{omega_p, gamma}});
}

MirrorModel MirrorModel::tabulated(OpticalDataTable table) {
  return MirrorModel(Rep{std::make_shared<const OpticalDataTable>(std::move(table))});
}

MirrorModel MirrorModel::tabulated(EpsilonGrid grid) {
  return MirrorModel(Rep{std::make_shared<const EpsilonGrid>(std::move(grid))});
}

MirrorModel::Kind MirrorModel::kind() const {
  switch (rep_.index()) {
    case 0: return Kind::Perfect;
    case 1: return Kind::Plasma;
    case 2: return Kind::Drude;
    default: return Kind::Tabulated;
  }
}

double MirrorModel::omega_p() const {
  switch (rep_.index()) {
    case 1: return std::get<PlasmaParams>(rep_).omega_p;
    case 2: return std::get<DrudeParams>(rep_).omega_p;
    case 3: return std::get<std::shared_ptr<const OpticalDataTable>>(rep_)->drude_omega_p;
    case 4: return std::get<std::shared_ptr<const EpsilonGrid>>(rep_)->drude_omega_p;
    default:
      throw std::logic_error("perfect mirror has no plasma frequency");
  }
}

double MirrorModel::drude_gamma() const {
  switch (rep_.index()) {
    case 2: return std::get<DrudeParams>(rep_).gamma;
    case 3: return std::get<std::shared_ptr<const OpticalDataTable>>(rep_)->drude_gamma;
    case 4: return std::get<std::shared_ptr<const EpsilonGrid>>(rep_)->drude_gamma;
    default:
      throw std::logic_error("model has no relaxation rate");
  }
}

std::vector<std::string> MirrorModel::warnings() const {
  std::vector<std::string> w;
  if (kind() == Kind::Drude) {
    const auto& d = std::get<DrudeParams>(rep_);
    if (d.gamma > 0.1 * d.omega_p)
      w.push_back("drude model outside good-conductor regime: gamma > 0.1 * omega_p");
  }
  return w;
}

std::string MirrorModel::describe() const {
  std::ostringstream os;
  switch (rep_.index()) {
    case 0:
      os << "perfect";
      break;
    case 1: {
      const auto& p = std::get<PlasmaParams>(rep_);
      os << "plasma(omega_p=" << p.omega_p << " rad/s, lambda_p=" << plasma_wavelength(p.omega_p)
         << " m)";
      break;
    }
    case 2: {
      const auto& d = std::get<DrudeParams>(rep_);
      os << "drude(omega_p=" << d.omega_p << " rad/s, gamma=" << d.gamma << " rad/s)";
      break;
    }
    case 3: {
      const auto& t = std::get<std::shared_ptr<const OpticalDataTable>>(rep_);
      os << "tabulated(" << t->omega.size() << " optical rows, drude_omega_p=" << t->drude_omega_p
         << " rad/s)";
      break;
    }
    default: {
      const auto& g = std::get<std::shared_ptr<const EpsilonGrid>>(rep_);
      os << "tabulated(" << g->xi.size() << " eps(i xi) samples, drude_omega_p="
         << g->drude_omega_p << " rad/s)";
      break;
    }
  }
  return os.str();
}

bool MirrorModel::same_as(const MirrorModel& other) const {
  if (rep_.index() != other.rep_.index()) return false;
  switch (rep_.index()) {
    case 0:
      return true;
    case 1:
      return std::get<PlasmaParams>(rep_).omega_p == std::get<PlasmaParams>(other.rep_).omega_p;
    case 2: {
      const auto& a = std::get<DrudeParams>(rep_);
      const auto& b = std::get<DrudeParams>(other.rep_);
      return a.omega_p == b.omega_p && a.gamma == b.gamma;
    }
    case 3:
      return std::get<std::shared_ptr<const OpticalDataTable>>(rep_) ==
             std::get<std::shared_ptr<const OpticalDataTable>>(other.rep_);
    default:
      return std::get<std::shared_ptr<const EpsilonGrid>>(rep_) ==
             std::get<std::shared_ptr<const EpsilonGrid>>(other.rep_);
  }
}

const OpticalDataTable* MirrorModel::table() const {
  if (auto p = std::get_if<std::shared_ptr<const OpticalDataTable>>(&rep_)) return p->get();
  return nullptr;
}

const EpsilonGrid* MirrorModel::grid() const {
  if (auto p = std::get_if<std::shared_ptr<const EpsilonGrid>>(&rep_)) return p->get();
  return nullptr;
}

EpsilonValue epsilon_imaginary_axis(const MirrorModel& m, double xi,
                                    const QuadratureConfig& cfg) {
  if (m.is_perfect()) return {0.0, true};
  if (!std::isfinite(xi)) throw std::invalid_argument("epsilon: xi must be finite");
  if (!(xi > 0.0)) return {0.0, true};  // conductors: eps(i xi) -> inf as xi -> 0+

  switch (m.kind()) {
    case MirrorModel::Kind::Plasma:
      return {1.0 + sq(m.omega_p() / xi), false};
    case MirrorModel::Kind::Drude:
      return {1.0 + sq(m.omega_p()) / (xi * (xi + m.drude_gamma())), false};
    default:
      break;
  }
  if (const OpticalDataTable* t = m.table())
    return {kramers_kronig_continuation(*t, xi, cfg), false};
  const EpsilonGrid* g = m.grid();
  return {g->value(xi), false};
}

double kramers_kronig_continuation(const OpticalDataTable& table, double xi,
                                   const QuadratureConfig& cfg) {
  if (!(xi > 0.0) || !std::isfinite(xi))
    throw std::invalid_argument("dispersion continuation: xi must be finite and > 0");

  const double wp2 = sq(table.drude_omega_p);
  const double gamma = table.drude_gamma;
  const double omega1 = table.omega.front();
  const double upper = std::min(table.cutoff, table.omega.back());

  // Head (0, omega1): Drude form, omega * Im eps = wp^2 gamma / (omega^2 + gamma^2).
  const Integrand head = [wp2, gamma, xi](double w) {
    return wp2 * gamma / ((w * w + gamma * gamma) * (w * w + xi * xi));
  };
  std::vector<double> head_breaks;
  for (double b : {std::min(gamma, xi), std::max(gamma, xi)})
    if (b > 0.0 && b < omega1 && (head_breaks.empty() || b > head_breaks.back()))
      head_breaks.push_back(b);
  const NumericResult head_part = integrate_finite(head, 0.0, omega1, cfg, head_breaks);

  // Data (omega1, upper): interpolated table, panel edges at the sample points.
  const Integrand data = [&table, xi](double w) {
    return w * interp_eps_imag(table, w) / (w * w + xi * xi);
  };
  std::vector<double> data_breaks;
  for (double w : table.omega)
    if (w > omega1 && w < upper) data_breaks.push_back(w);
  const NumericResult data_part = integrate_finite(data, omega1, upper, cfg, data_breaks);

  return 1.0 + (2.0 / constants::pi) * (head_part.value + data_part.value);
}

namespace {

// Core of both Fresnel entry points. Arguments are the frequency xi >= 0,
// c*k and c*kappa (kappa = sqrt(k^2 + xi^2/c^2), so c*kappa = hypot(c k, xi)).
double fresnel_core(double eps, double xi, double ck, double ckappa, Polarization p) {
  if (!(eps >= 1.0) || !std::isfinite(eps))
    throw std::invalid_argument("fresnel: requires eps(i xi) >= 1 and finite");
  if (eps == 1.0) return 0.0;  // transparent medium reflects nothing

  // t = sqrt(xi^2 eps + c^2 k^2); hypot keeps the extreme-eps cases in range.
  const double t = std::hypot(xi * std::sqrt(eps), ck);

  if (eps > 1e30) {
    // Near-conductor limit: difference forms would square out of range.
    if (p == Polarization::TE) return -(t - ckappa) / (t + ckappa);
    const double rho = t / (eps * ckappa);  // eps*ckappa may overflow to inf: rho -> 0
    return (1.0 - rho) / (1.0 + rho);
  }

  if (p == Polarization::TE) {
    // t - ckappa = xi^2 (eps-1) / (t + ckappa), exact cancellation-free form.
    const double num = sq(xi) * (eps - 1.0);
    return -num / sq(t + ckappa);
  }
  // (eps ckappa)^2 - t^2 = (eps-1) (c^2 k^2 (eps+1) + xi^2 eps)
  const double num = (eps - 1.0) * (sq(ck) * (eps + 1.0) + sq(xi) * eps);
  return num / sq(eps * ckappa + t);
}

}  // namespace

double fresnel_reflection(double eps, double xi, double k, Polarization p) {
  if (!(xi >= 0.0) || !(k >= 0.0) || !std::isfinite(xi) || !std::isfinite(k))
    throw std::invalid_argument("fresnel: requires xi >= 0 and k >= 0");
  if (xi == 0.0 && k == 0.0)
    throw std::invalid_argument("fresnel: xi and k cannot both vanish");
  const double ck = constants::c_light * k;
  const double ckappa = std::hypot(ck, xi);
  return fresnel_core(eps, xi, ck, ckappa, p);
}

double fresnel_from_kappa(double eps, double xi, double kappa, Polarization p) {
  const double ckappa = constants::c_light * kappa;
  if (!(xi >= 0.0) || !(ckappa >= xi) || !std::isfinite(xi) || !std::isfinite(kappa))
    throw std::invalid_argument("fresnel: requires 0 <= xi <= c kappa");
  if (kappa == 0.0) throw std::invalid_argument("fresnel: xi and k cannot both vanish");
  // c^2 k^2 = (c kappa - xi)(c kappa + xi) >= 0, stable near the light cone.
  const double ck = std::sqrt((ckappa - xi) * (ckappa + xi));
  return fresnel_core(eps, xi, ck, ckappa, p);
}

double r_te_zero_frequency_plasma(double omega_p, double k) {
  require_finite_positive(omega_p, "zero-frequency TE limit: omega_p");
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::invalid_argument("zero-frequency TE limit: k must be finite and > 0");
  const double kp = omega_p / constants::c_light;
  const double root = std::hypot(k, kp);
  // (root - k)/(root + k) = kp^2 / (root + k)^2, cancellation-free.
  return -sq(kp) / sq(root + k);
}

}  // namespace casimir
