#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace casimir {
namespace {

// G7/K15 nodes and weights (QUADPACK qk15 values). Positive half only;
// index 7 is the center node. Gauss nodes sit at Kronrod indices 1, 3, 5
// and the center.
constexpr double kKronrodNode[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kKronrodWeight[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kGaussWeight[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
};

// One G7/K15 application on [a, b], with QUADPACK's error scaling so that
// rough panels are not reported as more accurate than they are.
PanelEstimate gk15(const Integrand& f, double a, double b, long& evals) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(center + half * kKronrodNode[i]);
    fv[8 + i] = f(center - half * kKronrodNode[i]);
  }
  fv[7] = f(center);
  evals += 15;

  double resk = kKronrodWeight[7] * fv[7];
  double resg = kGaussWeight[3] * fv[7];
  double resabs = std::abs(resk);
  for (int i = 0; i < 7; ++i) {
    const double pair_sum = fv[i] + fv[8 + i];
    resk += kKronrodWeight[i] * pair_sum;
    resabs += kKronrodWeight[i] * (std::abs(fv[i]) + std::abs(fv[8 + i]));
    if (i == 1 || i == 3 || i == 5) resg += kGaussWeight[(i - 1) / 2] * pair_sum;
  }

  const double mean = resk * 0.5;
  double resasc = kKronrodWeight[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kKronrodWeight[i] * (std::abs(fv[i] - mean) + std::abs(fv[8 + i] - mean));

  PanelEstimate est;
  est.value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  est.error = std::abs((resk - resg) * half);
  if (resasc != 0.0 && est.error != 0.0)
    est.error = resasc * std::min(1.0, std::pow(200.0 * est.error / resasc, 1.5));
  constexpr double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    est.error = std::max(eps50 * resabs, est.error);

  if (!std::isfinite(est.value) || !std::isfinite(est.error))
    throw NumericsError("quadrature: integrand returned a non-finite value");
  return est;
}

struct Segment {
  double a = 0.0, b = 0.0;
  double value = 0.0, error = 0.0;
  int depth = 0;
  long seq = 0;
};

// Max-heap on error; creation order breaks ties so refinement is
// deterministic.
struct LessUrgent {
  bool operator()(const Segment& x, const Segment& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.seq > y.seq;
  }
};

using SegmentHeap = std::priority_queue<Segment, std::vector<Segment>, LessUrgent>;

constexpr long kMaxSegments = 200000;

// Refines the heap until the summed error meets max(rel_tol |I|, abs_floor)
// plus whatever fixed_error the caller already carries (e.g. a tail bound).
// On success returns the finished segments in ascending order of left edge.
std::vector<Segment> refine(const Integrand& f, SegmentHeap heap, double total, double total_err,
                            double fixed_error, const QuadratureConfig& cfg, long& evals,
                            long& seq, const char* what) {
  for (;;) {
    const double target = std::max(cfg.rel_tol * std::abs(total), cfg.abs_floor);
    if (total_err + fixed_error <= target) break;
    if (fixed_error > target)
      throw NumericsError(std::string(what) + ": tail bound alone exceeds the tolerance target");
    Segment worst = heap.top();
    if (worst.depth >= cfg.max_depth)
      throw NumericsError(std::string(what) + ": panel bisection depth limit reached without "
                                              "meeting the tolerance");
    if (static_cast<long>(heap.size()) >= kMaxSegments)
      throw NumericsError(std::string(what) + ": segment budget exhausted without convergence");
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b))
      throw NumericsError(std::string(what) + ": panel width at floating-point resolution");
    Segment left{worst.a, mid, 0.0, 0.0, worst.depth + 1, seq++};
    Segment right{mid, worst.b, 0.0, 0.0, worst.depth + 1, seq++};
    PanelEstimate le = gk15(f, left.a, left.b, evals);
    PanelEstimate re = gk15(f, right.a, right.b, evals);
    left.value = le.value;
    left.error = le.error;
    right.value = re.value;
    right.error = re.error;
    total += (le.value + re.value) - worst.value;
    total_err += (le.error + re.error) - worst.error;
    heap.push(left);
    heap.push(right);
  }

  std::vector<Segment> done;
  done.reserve(heap.size());
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  std::sort(done.begin(), done.end(),
            [](const Segment& x, const Segment& y) { return x.a < y.a; });
  return done;
}

NumericResult sum_in_order(const std::vector<Segment>& segments, double fixed_error, long evals) {
  NumericResult out;
  for (const Segment& s : segments) {
    out.value += s.value;
    out.error_estimate += s.error;
  }
  out.error_estimate += fixed_error;
  out.evaluations = evals;
  return out;
}

}  // namespace

NumericResult integrate_finite(const Integrand& f, double a, double b,
                               const QuadratureConfig& cfg,
                               std::span<const double> interior_breaks) {
  cfg.validate();
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw std::invalid_argument("integrate_finite: requires finite a < b");

  std::vector<double> edges;
  edges.reserve(interior_breaks.size() + 2);
  edges.push_back(a);
  for (double x : interior_breaks) {
    if (!(x > edges.back() && x < b))
      throw std::invalid_argument("integrate_finite: breaks must ascend strictly inside (a, b)");
    edges.push_back(x);
  }
  edges.push_back(b);

  SegmentHeap heap;
  long evals = 0, seq = 0;
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Segment s{edges[i], edges[i + 1], 0.0, 0.0, 0, seq++};
    PanelEstimate est = gk15(f, s.a, s.b, evals);
    s.value = est.value;
    s.error = est.error;
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }

  auto done = refine(f, std::move(heap), total, total_err, 0.0, cfg, evals, seq,
                     "integrate_finite");
  return sum_in_order(done, 0.0, evals);
}

NumericResult integrate_semi_infinite(const Integrand& f, double decay_scale,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(decay_scale > 0.0) || !std::isfinite(decay_scale))
    throw std::invalid_argument("integrate_semi_infinite: decay_scale must be finite and > 0");

  const Integrand g = [&f, decay_scale](double u) { return decay_scale * f(decay_scale * u); };

  // Doubling panels in u = t / decay_scale. The first panels always cover
  // u <= 32 so a slow start cannot fake convergence; extension stops once a
  // panel is negligible against the running total.
  constexpr int kMinPanels = 6;
  constexpr int kMaxPanels = 64;
  SegmentHeap heap;
  std::vector<double> panel_values;
  long evals = 0, seq = 0;
  double total = 0.0, total_err = 0.0;
  double lo = 0.0, hi = 1.0;
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    Segment s{lo, hi, 0.0, 0.0, 0, seq++};
    PanelEstimate est = gk15(g, s.a, s.b, evals);
    s.value = est.value;
    s.error = est.error;
    total += s.value;
    total_err += s.error;
    heap.push(s);
    panel_values.push_back(s.value);

    const double negligible =
        std::max(cfg.abs_floor, 1e-3 * cfg.rel_tol * std::abs(total));
    if (panel + 1 >= kMinPanels && std::abs(s.value) <= negligible) break;
    lo = hi;
    hi *= 2.0;
  }

  // Geometric tail bound from the last two panel magnitudes. For integrands
  // honouring the decay precondition the ratio collapses super-exponentially.
  const double last = std::abs(panel_values.back());
  double tail = 0.0;
  if (last > 0.0) {
    const double prev = std::abs(panel_values[panel_values.size() - 2]);
    const double ratio = prev > 0.0 ? last / prev : 1.0;
    tail = ratio < 0.75 ? last * ratio / (1.0 - ratio) : last;
  }

  auto done = refine(g, std::move(heap), total, total_err, tail, cfg, evals, seq,
                     "integrate_semi_infinite");
  return sum_in_order(done, tail, evals);
}

NumericResult matsubara_sum(const std::function<double(long)>& term,
                            const QuadratureConfig& cfg) {
  cfg.validate();

  const double t0 = term(0);
  if (!std::isfinite(t0)) throw NumericsError("matsubara_sum: non-finite term at m = 0");
  double sum = 0.5 * t0;
  long evals = 1;
  int streak = 0;
  double prev_abs = std::abs(t0);
  double last_abs = prev_abs;

  for (long m = 1; m <= cfg.matsubara_max_terms; ++m) {
    const double t = term(m);
    if (!std::isfinite(t))
      throw NumericsError("matsubara_sum: non-finite term at m = " + std::to_string(m));
    sum += t;
    ++evals;
    prev_abs = last_abs;
    last_abs = std::abs(t);

    const bool small =
        last_abs < std::max(cfg.rel_tol * std::abs(sum), cfg.abs_floor);
    streak = small ? streak + 1 : 0;
    if (streak >= cfg.matsubara_run) {
      // Geometric tail bound sum_{k>=1} |t| q^k = |t| q/(1-q). Slowly decaying
      // sequences (q near 1) keep an honestly large bound rather than a
      // truncated one; q is clamped only to keep the bound finite.
      double tail = 0.0;
      if (last_abs > 0.0) {
        const double ratio =
            prev_abs > 0.0 ? std::min(last_abs / prev_abs, 0.999) : 0.5;
        tail = last_abs * ratio / (1.0 - ratio);
      }
      NumericResult out;
      out.value = sum;
      out.error_estimate =
          tail + std::numeric_limits<double>::epsilon() * static_cast<double>(evals) *
                     std::abs(sum);
      out.evaluations = evals;
      return out;
    }
  }
  throw NumericsError("matsubara_sum: no convergence within " +
                      std::to_string(cfg.matsubara_max_terms) + " terms");
}

}  // namespace casimir
