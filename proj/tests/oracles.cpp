#include "oracles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {
namespace {

constexpr double kHbar = 1.054571817e-34;
constexpr double kC = 2.99792458e8;
constexpr double kBoltzmann = 1.380649e-23;
constexpr double kPi = 3.141592653589793;
constexpr double kZeta3 = 1.2020569031595943;

// Summed closed-loop kernel at one (xi, kappa) node. energy = false gives the
// force kernel kappa^2 R x/(1 - R x), true gives -kappa ln(1 - R x).
double node(double xi, double kappa, double L, double omega_p, bool energy) {
  double r_te, r_tm;
  if (omega_p <= 0.0) {
    r_te = -1.0;
    r_tm = 1.0;
  } else {
    const double eps = 1.0 + (omega_p / xi) * (omega_p / xi);
    const double ck2 = (kC * kappa) * (kC * kappa) - xi * xi;  // c^2 k^2 >= 0
    const double root = std::sqrt(xi * xi * eps + ck2);
    r_te = (kC * kappa - root) / (kC * kappa + root);
    r_tm = (eps * kC * kappa - root) / (eps * kC * kappa + root);
  }
  const double x = std::exp(-2.0 * kappa * L);
  double sum = 0.0;
  for (double r : {r_te, r_tm}) {
    const double Rx = r * r * x;
    sum += energy ? -std::log1p(-Rx) : Rx / (1.0 - Rx);
  }
  return energy ? kappa * sum : kappa * kappa * sum;
}

struct LogGrid {
  std::vector<double> points;
  std::vector<double> weights;  // trapezoid weights for Int f dt = Int f t dln t
};

LogGrid log_grid(double lo, double hi, std::size_t n) {
  LogGrid g;
  g.points.resize(n);
  g.weights.resize(n);
  const double h = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g.points[i] = lo * std::exp(h * static_cast<double>(i));
    g.weights[i] = g.points[i] * h * (i == 0 || i == n - 1 ? 0.5 : 1.0);
  }
  return g;
}

double double_integral(double area, double L, double omega_p, std::size_t n_xi,
                       std::size_t n_t, bool energy) {
  if (n_xi < 2 || n_t < 2) throw std::invalid_argument("oracle: grid too small");
  const double xi_scale = kC / (2.0 * L);
  const double t_scale = 1.0 / (2.0 * L);
  const LogGrid xi = log_grid(1e-6 * xi_scale, 60.0 * xi_scale, n_xi);
  const LogGrid t = log_grid(1e-6 * t_scale, 60.0 * t_scale, n_t);

  const auto inner = [&](double xi_v) {
    double acc = 0.0;
    for (std::size_t j = 0; j < t.points.size(); ++j)
      acc += t.weights[j] * node(xi_v, xi_v / kC + t.points[j], L, omega_p, energy);
    // rectangle closing the (0, t_lo) gap; the integrand is finite there
    acc += t.points.front() * node(xi_v, xi_v / kC + t.points.front(), L, omega_p, energy);
    return acc;
  };

  double acc = 0.0;
  for (std::size_t i = 0; i < xi.points.size(); ++i) acc += xi.weights[i] * inner(xi.points[i]);
  acc += xi.points.front() * inner(xi.points.front());

  const double pref = energy ? kHbar * area / (4.0 * kPi * kPi)
                             : kHbar * area / (2.0 * kPi * kPi);
  return pref * acc;
}

}  // namespace

double force_trapezoid(double area, double separation, double omega_p, std::size_t n_xi,
                       std::size_t n_t) {
  return double_integral(area, separation, omega_p, n_xi, n_t, false);
}

double energy_trapezoid(double area, double separation, double omega_p, std::size_t n_xi,
                        std::size_t n_t) {
  return double_integral(area, separation, omega_p, n_xi, n_t, true);
}

double simpson(const std::function<double(double)>& f, double a, double b,
               std::size_t intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < intervals; ++i)
    acc += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

double matsubara_perfect_force(double area, double separation, double temperature,
                               long m_terms) {
  const double L = separation;
  const double xi_step = 2.0 * kPi * kBoltzmann * temperature / kHbar;
  // m = 0 at half weight: I(0) = Int_0^inf kappa^2 x/(1-x) dkappa = zeta(3)/(4 L^3)
  double sum = 0.5 * kZeta3 / (4.0 * L * L * L);
  for (long m = 1; m <= m_terms; ++m) {
    const double a = xi_step * static_cast<double>(m) / kC;
    // I(a) = sum_n e^{-2 n L a} (a^2/(2nL) + 2a/(2nL)^2 + 2/(2nL)^3)
    double im = 0.0;
    for (long n = 1;; ++n) {
      const double d = 2.0 * static_cast<double>(n) * L;
      const double term = std::exp(-d * a) * (a * a / d + 2.0 * a / (d * d) + 2.0 / (d * d * d));
      im += term;
      if (term < 1e-18 * im || n > 10000000) break;
    }
    sum += im;
    if (im < 1e-18 * sum) break;  // decayed far below the truncation request
  }
  return 2.0 * kBoltzmann * temperature * area / kPi * sum;
}

double monte_carlo_gaussian_average(const std::function<double(double)>& base,
                                    double separation, double rms, std::size_t samples,
                                    unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, rms);
  double acc = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    double h = dist(rng);
    while (std::abs(h) > 4.0 * rms) h = dist(rng);
    acc += base(separation + h);
  }
  return acc / static_cast<double>(samples);
}

}  // namespace oracles
