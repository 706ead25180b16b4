#include "run_config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/engine.hpp"
#include "casimir/io.hpp"
#include "casimir/pfa.hpp"
#include "casimir/units.hpp"

namespace casimir::cli {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::pair<std::string, std::string> key_value(const std::string& token, const char* what) {
  const std::size_t eq = token.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument(std::string(what) + ": expected key=value, got '" + token + "'");
  return {token.substr(0, eq), token.substr(eq + 1)};
}

MirrorModel parse_mirror_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? std::string() : spec.substr(colon + 1);

  if (head == "perfect") {
    if (!rest.empty()) throw std::invalid_argument("mirror: 'perfect' takes no parameters");
    return MirrorModel::perfect();
  }
  if (head == "plasma") {
    if (rest.empty())
      throw std::invalid_argument("mirror: plasma needs a wavelength, e.g. plasma:136nm");
    if (rest.starts_with("omega="))
      return MirrorModel::plasma(parse_angular_frequency(rest.substr(6)));
    if (rest.starts_with("lambda="))
      return MirrorModel::plasma(plasma_frequency(parse_length(rest.substr(7))));
    return MirrorModel::plasma(plasma_frequency(parse_length(rest)));
  }
  if (head == "drude") {
    double omega_p = 0.0, gamma = 0.0;
    for (const std::string& token : split(rest, ',')) {
      const auto [k, v] = key_value(token, "mirror: drude");
      if (k == "omega")
        omega_p = parse_angular_frequency(v);
      else if (k == "lambda")
        omega_p = plasma_frequency(parse_length(v));
      else if (k == "gamma")
        gamma = parse_angular_frequency(v);
      else
        throw std::invalid_argument("mirror: drude: unknown key '" + k + "'");
    }
    if (omega_p == 0.0 || gamma == 0.0)
      throw std::invalid_argument(
          "mirror: drude needs lambda= (or omega=) and gamma=, e.g. "
          "drude:lambda=136nm,gamma=4.5e13");
    return MirrorModel::drude(omega_p, gamma);
  }
  if (head == "tabulated") {
    const std::vector<std::string> tokens = split(rest, ';');
    if (tokens.empty() || tokens.front().empty())
      throw std::invalid_argument("mirror: tabulated needs a file path");
    const std::string& path = tokens.front();
    double omega_p = 0.0, gamma = 0.0;
    std::optional<double> cutoff;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto [k, v] = key_value(tokens[i], "mirror: tabulated");
      if (k == "omega_p")
        omega_p = parse_angular_frequency(v);
      else if (k == "lambda_p")
        omega_p = plasma_frequency(parse_length(v));
      else if (k == "gamma")
        gamma = parse_angular_frequency(v);
      else if (k == "cutoff")
        cutoff = parse_angular_frequency(v);
      else
        throw std::invalid_argument("mirror: tabulated: unknown key '" + k + "'");
    }
    if (omega_p == 0.0 || gamma == 0.0)
      throw std::invalid_argument(
          "mirror: tabulated needs lambda_p= (or omega_p=) and gamma= for the low-frequency "
          "extension");
    return MirrorModel::tabulated(load_optical_table(path, omega_p, gamma, cutoff));
  }
  if (head == "epsgrid") {
    if (rest.empty()) throw std::invalid_argument("mirror: epsgrid needs a file path");
    return MirrorModel::tabulated(load_epsilon_grid(rest));
  }
  throw std::invalid_argument("mirror: unknown model '" + head +
                              "' (expected perfect | plasma | drude | tabulated | epsgrid)");
}

RoughnessProfile load_roughness_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open");
  std::vector<double> offsets, weights;
  std::string raw;
  long number = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++number;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t a = line.find_first_not_of(" \t");
    if (a == std::string::npos || line[a] == '#') continue;
    line = line.substr(a);
    if (!header_seen) {
      if (line != "offset_m,weight")
        throw std::invalid_argument(path + ":" + std::to_string(number) +
                                    ": header must be 'offset_m,weight'");
      header_seen = true;
      continue;
    }
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 2)
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": wrong field count");
    double h = 0.0, w = 0.0;
    auto r1 = std::from_chars(f[0].data(), f[0].data() + f[0].size(), h);
    auto r2 = std::from_chars(f[1].data(), f[1].data() + f[1].size(), w);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
        r1.ptr != f[0].data() + f[0].size() || r2.ptr != f[1].data() + f[1].size())
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": cannot parse row");
    offsets.push_back(h);
    weights.push_back(w);
  }
  if (!header_seen) throw std::invalid_argument(path + ": no header line");
  return RoughnessProfile::discrete(std::move(offsets), std::move(weights));
}

struct Resolved {
  MirrorModel m1 = MirrorModel::perfect();
  MirrorModel m2 = MirrorModel::perfect();
  std::string geometry;
  double area = 0.0;
  double radius = 0.0;
  double radius2 = 0.0;
  double separation = 0.0;
  ThermalState thermal = ThermalState::zero();
  EngineConfig engine;
  std::optional<RoughnessProfile> roughness;
  Quantity quantity = Quantity::Force;
};

Resolved resolve(const RunConfig& rc) {
  Resolved r;
  r.m1 = parse_mirror_spec(rc.mirror1);
  r.m2 = rc.mirror2 == "same" ? r.m1 : parse_mirror_spec(rc.mirror2);

  r.geometry = rc.geometry;
  if (rc.geometry == "plane-plane") {
    r.area = parse_area(rc.area);
  } else if (rc.geometry == "sphere-plane") {
    r.radius = parse_length(rc.radius);
  } else if (rc.geometry == "crossed-cylinders") {
    r.radius = parse_length(rc.radius);
    r.radius2 = rc.radius2.empty() ? r.radius : parse_length(rc.radius2);
  } else {
    throw std::invalid_argument(
        "geometry: unknown '" + rc.geometry +
        "' (expected plane-plane | sphere-plane | crossed-cylinders)");
  }
  r.separation = parse_length(rc.separation);
  r.thermal = ThermalState(parse_temperature(rc.temperature));

  if (rc.quantity == "force")
    r.quantity = Quantity::Force;
  else if (rc.quantity == "energy")
    r.quantity = Quantity::Energy;
  else
    throw std::invalid_argument("quantity: expected force | energy, got '" + rc.quantity + "'");
  if (r.quantity == Quantity::Energy && rc.geometry != "plane-plane")
    throw std::invalid_argument("quantity: energy is available for plane-plane geometry only");

  if (rc.zero_frequency == "plasma")
    r.engine.zero_frequency = ZeroFrequencyPrescription::Plasma;
  else if (rc.zero_frequency == "drude")
    r.engine.zero_frequency = ZeroFrequencyPrescription::Drude;
  else
    throw std::invalid_argument("zero-frequency: expected plasma | drude, got '" +
                                rc.zero_frequency + "'");

  r.engine.quadrature.rel_tol = rc.rel_tol;
  r.engine.quadrature.validate();

  if (!rc.roughness.empty()) {
    if (rc.roughness.starts_with("gauss:"))
      r.roughness = RoughnessProfile::gaussian(parse_length(rc.roughness.substr(6)));
    else if (rc.roughness.starts_with("file:"))
      r.roughness = load_roughness_file(rc.roughness.substr(5));
    else
      throw std::invalid_argument("roughness: expected gauss:<rms> | file:<path>, got '" +
                                  rc.roughness + "'");
  }
  return r;
}

ForceResult evaluate_smooth(const Resolved& r, double separation) {
  if (r.geometry == "plane-plane") {
    const CavityConfig cav{r.m1, r.m2, PlanePlaneGeometry{r.area, separation}, r.thermal};
    return r.quantity == Quantity::Force ? force_plane_plane(cav, r.engine)
                                         : energy_plane_plane(cav, r.engine);
  }
  if (r.geometry == "sphere-plane")
    return force_sphere_plane(SpherePlaneGeometry{r.radius, separation}, r.m1, r.m2, r.thermal,
                              r.engine);
  return force_crossed_cylinders(CrossedCylindersGeometry{r.radius, r.radius2, separation},
                                 r.m1, r.m2, r.thermal, r.engine);
}

// Roughness composes on top of the smooth law; the reduction factor is
// rebased to the ideal value at the nominal separation.
ForceResult evaluate_at(const Resolved& r, double separation) {
  ForceResult smooth = evaluate_smooth(r, separation);
  if (!r.roughness) return smooth;

  const auto base = [&](double sep) { return evaluate_smooth(r, sep).value; };
  ForceResult avg = roughness_average(base, *r.roughness, separation, r.engine.quadrature);
  const double ideal = smooth.value / smooth.reduction_factor;

  ForceResult out;
  out.value = avg.value;
  out.error_estimate =
      avg.error_estimate + (smooth.error_estimate / smooth.value) * std::abs(avg.value);
  out.reduction_factor = avg.value / ideal;
  out.quantity = smooth.quantity;
  out.warnings = smooth.warnings;
  for (const std::string& w : avg.warnings) out.warnings.push_back(w);
  return out;
}

class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument(path + ": cannot open for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish(const std::string& path) {
    stream().flush();
    if (file_.is_open() && !file_)
      throw std::invalid_argument(path + ": write failure");
  }

 private:
  std::ofstream file_;
};

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join_warnings(const std::vector<std::string>& warnings) {
  std::string text;
  for (const std::string& w : warnings) {
    if (!text.empty()) text += "; ";
    text += w;
  }
  return text;
}

int cmd_force(const RunConfig& rc) {
  const Resolved r = resolve(rc);
  const ForceResult res = evaluate_at(r, r.separation);

  OutputTarget target(rc.out);
  std::ostream& os = target.stream();
  os << "quantity:          " << (res.quantity == Quantity::Force ? "force" : "energy") << "\n";
  os << "geometry:          " << r.geometry;
  if (r.geometry == "plane-plane")
    os << " (area " << format_double(r.area) << " m^2, separation "
       << format_double(r.separation) << " m)\n";
  else if (r.geometry == "sphere-plane")
    os << " (radius " << format_double(r.radius) << " m, separation "
       << format_double(r.separation) << " m)\n";
  else
    os << " (radii " << format_double(r.radius) << ", " << format_double(r.radius2)
       << " m, separation " << format_double(r.separation) << " m)\n";
  os << "mirror 1:          " << r.m1.describe() << "\n";
  os << "mirror 2:          " << r.m2.describe() << "\n";
  os << "temperature:       " << format_double(r.thermal.temperature) << " K\n";
  const char* unit = res.quantity == Quantity::Force ? "N" : "J";
  os << "value:             " << format_double(res.value) << " " << unit << "\n";
  os << "error estimate:    " << format_double(res.error_estimate) << " " << unit << "\n";
  const char* eta_name = r.geometry != "plane-plane"          ? "eta_E"
                         : res.quantity == Quantity::Force    ? "eta_F"
                                                              : "eta_E";
  os << "reduction factor:  " << format_double(res.reduction_factor) << " (" << eta_name
     << ")\n";
  for (const std::string& w : res.warnings) os << "warning:           " << w << "\n";
  target.finish(rc.out);
  return 0;
}

std::vector<double> make_grid(double lmin, double lmax, int points, const std::string& spacing) {
  if (!(lmin > 0.0) || !(lmax > lmin))
    throw std::invalid_argument("sweep: requires 0 < lmin < lmax");
  if (points < 2) throw std::invalid_argument("sweep: requires points >= 2");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double n1 = points - 1;
  for (int i = 0; i < points; ++i) {
    if (spacing == "log")
      grid[static_cast<std::size_t>(i)] = lmin * std::pow(lmax / lmin, i / n1);
    else if (spacing == "linear")
      grid[static_cast<std::size_t>(i)] = lmin + (lmax - lmin) * (i / n1);
    else
      throw std::invalid_argument("sweep: spacing must be log | linear");
  }
  grid.back() = lmax;
  return grid;
}

// Evaluates one job per grid point on `jobs` workers; results land in input
// order, so output bytes are independent of the worker count.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, const Fn& fn) {
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (std::thread& t : pool) t.join();
}

struct SweepOptions {
  std::string lmin = "0.1um";
  std::string lmax = "10um";
  int points = 50;
  std::string spacing = "log";
  int jobs = 1;
};

int cmd_sweep(const RunConfig& rc, const SweepOptions& so) {
  if (rc.quantity != "force")
    throw std::invalid_argument("sweep: emits the force column only; use 'figure compe' for "
                                "energy reduction curves");
  const Resolved r = resolve(rc);
  const std::vector<double> grid =
      make_grid(parse_length(so.lmin), parse_length(so.lmax), so.points, so.spacing);

  struct Row {
    std::string text;
    bool failed = false;
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), so.jobs, [&](std::size_t i) {
    const double L = grid[i];
    Row& row = rows[i];
    try {
      const ForceResult res = evaluate_at(r, L);
      const std::string warn = join_warnings(res.warnings);
      row.text = format_double(L) + "," + format_double(res.value) + "," +
                 format_double(res.reduction_factor) + "," + format_double(res.error_estimate) +
                 "," + (warn.empty() ? std::string() : csv_quote(warn));
    } catch (const std::exception& e) {
      row.text = format_double(L) + ",,,," + csv_quote(e.what());
      row.failed = true;
    }
  });

  OutputTarget target(rc.out);
  std::ostream& os = target.stream();
  os << "L_m,force_N,eta_F,error_est,warnings\n";
  bool all_failed = true;
  for (const Row& row : rows) {
    os << row.text << "\n";
    all_failed = all_failed && row.failed;
  }
  target.finish(rc.out);
  return all_failed ? 3 : 0;
}

struct FigureOptions {
  std::string name;
  std::string lmin = "0.1um";
  std::string lmax = "10um";
  int points = 50;
  int jobs = 1;
  double rel_tol = 1e-9;
  std::string zero_frequency = "plasma";
  std::string optical_data;
  std::string tab_lambda_p;
  std::string tab_gamma;
  std::string tab_cutoff;
  std::string out;
};

int cmd_figure(const FigureOptions& fo) {
  EngineConfig engine;
  engine.quadrature.rel_tol = fo.rel_tol;
  engine.quadrature.validate();
  if (fo.zero_frequency == "plasma")
    engine.zero_frequency = ZeroFrequencyPrescription::Plasma;
  else if (fo.zero_frequency == "drude")
    engine.zero_frequency = ZeroFrequencyPrescription::Drude;
  else
    throw std::invalid_argument("zero-frequency: expected plasma | drude");

  const double area = 1e-4;  // reduction factors are area-independent
  std::optional<MirrorModel> tab;
  if (!fo.optical_data.empty()) {
    if (fo.tab_lambda_p.empty() || fo.tab_gamma.empty())
      throw std::invalid_argument(
          "figure: --optical-data needs --tab-lambda-p and --tab-gamma");
    std::optional<double> cutoff;
    if (!fo.tab_cutoff.empty()) cutoff = parse_angular_frequency(fo.tab_cutoff);
    tab = MirrorModel::tabulated(
        load_optical_table(fo.optical_data, plasma_frequency(parse_length(fo.tab_lambda_p)),
                           parse_angular_frequency(fo.tab_gamma), cutoff));
  }

  std::string header;
  std::vector<std::function<double(double)>> columns;
  if (fo.name == "compf" || fo.name == "compe") {
    const bool energy = fo.name == "compe";
    const MirrorModel gold = MirrorModel::plasma(plasma_frequency(136e-9));
    header = energy ? "L_m,eta_E_plasma" : "L_m,eta_F_plasma";
    columns.push_back([=](double L) {
      const CavityConfig cav{gold, gold, PlanePlaneGeometry{area, L}, ThermalState::zero()};
      return energy ? eta_E(cav, engine) : eta_F(cav, engine);
    });
    if (tab) {
      header += energy ? ",eta_E_tabulated" : ",eta_F_tabulated";
      const MirrorModel m = *tab;
      columns.push_back([=](double L) {
        const CavityConfig cav{m, m, PlanePlaneGeometry{area, L}, ThermalState::zero()};
        return energy ? eta_E(cav, engine) : eta_F(cav, engine);
      });
    }
  } else if (fo.name == "etatherm") {
    const MirrorModel al = MirrorModel::plasma(plasma_frequency(107e-9));
    const MirrorModel ideal = MirrorModel::perfect();
    const ThermalState room{300.0};
    header = "L_m,eta_F_full,eta_F_plasma,eta_F_thermal";
    columns.push_back([=](double L) {
      return eta_F({al, al, PlanePlaneGeometry{area, L}, room}, engine);
    });
    columns.push_back([=](double L) {
      return eta_F({al, al, PlanePlaneGeometry{area, L}, ThermalState::zero()}, engine);
    });
    columns.push_back([=](double L) {
      return eta_F({ideal, ideal, PlanePlaneGeometry{area, L}, room}, engine);
    });
  } else {
    throw std::invalid_argument("figure: unknown name '" + fo.name +
                                "' (expected compf | etatherm | compe)");
  }

  const std::vector<double> grid =
      make_grid(parse_length(fo.lmin), parse_length(fo.lmax), fo.points, "log");

  struct Row {
    std::vector<std::optional<double>> cells;
    std::vector<std::string> notes;
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), fo.jobs, [&](std::size_t i) {
    Row& row = rows[i];
    row.cells.resize(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      try {
        row.cells[c] = columns[c](grid[i]);
      } catch (const std::exception& e) {
        row.notes.push_back("L=" + format_double(grid[i]) + ": " + e.what());
      }
    }
  });

  OutputTarget target(fo.out);
  std::ostream& os = target.stream();
  os << header << "\n";
  for (const Row& row : rows)
    for (const std::string& note : row.notes) os << "# warning: " << note << "\n";
  bool all_failed = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << format_double(grid[i]);
    for (const std::optional<double>& cell : rows[i].cells) {
      os << ",";
      if (cell) {
        os << format_double(*cell);
        all_failed = false;
      }
    }
    os << "\n";
  }
  target.finish(fo.out);
  return all_failed ? 3 : 0;
}

struct IngestOptions {
  std::string input;
  std::string lambda_p;
  std::string omega_p;
  std::string gamma;
  std::string cutoff;
  double ximin = 1e12;
  double ximax = 1e18;
  int points = 200;
  std::string out;
};

int cmd_ingest(const IngestOptions& io) {
  if (io.lambda_p.empty() == io.omega_p.empty())
    throw std::invalid_argument("ingest-optical: exactly one of --lambda-p / --omega-p");
  const double omega_p = io.lambda_p.empty() ? parse_angular_frequency(io.omega_p)
                                             : plasma_frequency(parse_length(io.lambda_p));
  const double gamma = parse_angular_frequency(io.gamma);
  std::optional<double> cutoff;
  if (!io.cutoff.empty()) cutoff = parse_angular_frequency(io.cutoff);
  if (!(io.ximin > 0.0) || !(io.ximax > io.ximin))
    throw std::invalid_argument("ingest-optical: requires 0 < ximin < ximax");
  if (io.points < 2) throw std::invalid_argument("ingest-optical: requires points >= 2");
  if (io.out.empty()) throw std::invalid_argument("ingest-optical: --out is required");

  const OpticalDataTable table = load_optical_table(io.input, omega_p, gamma, cutoff);

  std::vector<double> xi(static_cast<std::size_t>(io.points));
  std::vector<double> eps(xi.size());
  const double n1 = io.points - 1;
  for (int i = 0; i < io.points; ++i)
    xi[static_cast<std::size_t>(i)] = io.ximin * std::pow(io.ximax / io.ximin, i / n1);
  xi.back() = io.ximax;
  for (std::size_t i = 0; i < xi.size(); ++i)
    eps[i] = kramers_kronig_continuation(table, xi[i]);

  const EpsilonGrid grid(std::move(xi), std::move(eps), omega_p, gamma);
  save_epsilon_grid(io.out, grid);

  // Share of the dispersion mass coming from the Drude extension below the
  // first tabulated row, and a bound on the truncated high-frequency tail.
  const auto shares = [&](double x) {
    const double omega1 = table.omega.front();
    const Integrand head = [&](double w) {
      return omega_p * omega_p * gamma / ((w * w + gamma * gamma) * (w * w + x * x));
    };
    std::vector<double> breaks;
    for (double b : {std::min(gamma, x), std::max(gamma, x)})
      if (b > 0.0 && b < omega1) breaks.push_back(b);
    const double head_mass =
        (2.0 / constants::pi) * integrate_finite(head, 0.0, omega1, {}, breaks).value;
    const double upper = std::min(table.cutoff, table.omega.back());
    const double tail_mass =
        (2.0 / constants::pi) * omega_p * omega_p * gamma / (3.0 * upper * upper * upper);
    const double total = grid.value(x) - 1.0;
    return std::pair<double, double>{head_mass / total, tail_mass / total};
  };

  std::cout << "ingested " << table.omega.size() << " optical rows spanning ["
            << format_double(table.omega.front()) << ", " << format_double(table.omega.back())
            << "] rad/s\n";
  std::cout << "wrote " << io.points << "-point eps(i xi) grid over [" << format_double(io.ximin)
            << ", " << format_double(io.ximax) << "] rad/s to " << io.out << "\n";
  for (double x : {io.ximin, io.ximax}) {
    const auto [head_share, tail_share] = shares(x);
    std::cout << "xi = " << format_double(x) << ": low-frequency (Drude) extension carries "
              << format_double(head_share) << " of the dispersion integral, truncated "
              << "high-frequency tail <= " << format_double(tail_share) << "\n";
  }
  return 0;
}

std::string trim_copy(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Flat key=value config lines become --key=value tokens. They are spliced in
// directly after the subcommand name, so explicit flags come later and win
// under the TakeLast option policy.
std::vector<std::string> load_config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open config file");
  std::vector<std::string> tokens;
  std::string raw;
  long number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string line = trim_copy(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument(path + ":" + std::to_string(number) +
                                  ": expected key=value");
    tokens.push_back("--" + trim_copy(line.substr(0, eq)) + "=" +
                     trim_copy(line.substr(eq + 1)));
  }
  return tokens;
}

std::vector<std::string> expand_config_args(std::vector<std::string> args) {
  std::size_t sub_pos = args.size();
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!args[i].empty() && args[i].front() != '-') {
      sub_pos = i;
      break;
    }
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw std::invalid_argument("--config: needs a file path");
      path = args[i + 1];
      break;
    }
    if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
      break;
    }
  }
  if (path.empty() || sub_pos == args.size()) return args;
  const std::vector<std::string> tokens = load_config_tokens(path);
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, tokens.begin(),
              tokens.end());
  return args;
}

void add_common_options(CLI::App* sub, RunConfig& rc, std::string& config_sink) {
  sub->add_option("--config", config_sink,
                  "flat key=value config file; # comments; flags override");
  sub->add_option("--geometry", rc.geometry, "plane-plane | sphere-plane | crossed-cylinders")
      ->capture_default_str();
  sub->add_option("--area", rc.area, "plate area (plane-plane), e.g. 1cm^2")
      ->capture_default_str();
  sub->add_option("--radius", rc.radius, "sphere / first cylinder radius, e.g. 100um")
      ->capture_default_str();
  sub->add_option("--radius2", rc.radius2, "second cylinder radius (defaults to --radius)");
  sub->add_option("--mirror1", rc.mirror1,
                  "perfect | plasma:<lambda> | drude:lambda=..,gamma=.. | "
                  "tabulated:<path>;lambda_p=..;gamma=..[;cutoff=..] | epsgrid:<path>")
      ->capture_default_str();
  sub->add_option("--mirror2", rc.mirror2, "mirror model, or 'same'")->capture_default_str();
  sub->add_option("-T,--temperature", rc.temperature, "e.g. 300K (0 = vacuum state)")
      ->capture_default_str();
  sub->add_option("--zero-frequency", rc.zero_frequency, "m=0 TE prescription: plasma | drude")
      ->capture_default_str();
  sub->add_option("--roughness", rc.roughness, "gauss:<rms> | file:<path>");
  sub->add_option("--rel-tol", rc.rel_tol, "relative tolerance of the evaluation")
      ->capture_default_str();
  sub->add_option("-o,--out", rc.out, "output path (default stdout)");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Casimir force and energy between real mirrors"};
  app.name("casimir");
  app.require_subcommand(1);
  std::string config_sink;

  RunConfig rc_force;
  CLI::App* force = app.add_subcommand("force", "single-point force or energy evaluation");
  add_common_options(force, rc_force, config_sink);
  force->add_option("-L,--separation", rc_force.separation, "mirror separation, e.g. 1um")
      ->capture_default_str();
  force->add_option("--quantity", rc_force.quantity, "force | energy")->capture_default_str();

  RunConfig rc_sweep;
  SweepOptions so;
  CLI::App* sweep = app.add_subcommand("sweep", "force over a separation grid, CSV output");
  add_common_options(sweep, rc_sweep, config_sink);
  sweep->add_option("--quantity", rc_sweep.quantity, "force (sweep emits force only)")
      ->capture_default_str();
  sweep->add_option("--lmin", so.lmin, "smallest separation")->capture_default_str();
  sweep->add_option("--lmax", so.lmax, "largest separation")->capture_default_str();
  sweep->add_option("--points", so.points, "grid size")->capture_default_str();
  sweep->add_option("--spacing", so.spacing, "log | linear")->capture_default_str();
  sweep->add_option("--jobs", so.jobs, "worker threads (output is order-independent)")
      ->capture_default_str();

  FigureOptions fo;
  CLI::App* figure =
      app.add_subcommand("figure", "reference reduction-factor datasets, CSV output");
  figure->add_option("--config", config_sink,
                     "flat key=value config file; # comments; flags override");
  figure->add_option("name", fo.name, "compf | etatherm | compe")->required();
  figure->add_option("--lmin", fo.lmin, "smallest separation")->capture_default_str();
  figure->add_option("--lmax", fo.lmax, "largest separation")->capture_default_str();
  figure->add_option("--points", fo.points, "grid size")->capture_default_str();
  figure->add_option("--jobs", fo.jobs, "worker threads")->capture_default_str();
  figure->add_option("--rel-tol", fo.rel_tol, "relative tolerance")->capture_default_str();
  figure->add_option("--zero-frequency", fo.zero_frequency, "plasma | drude")
      ->capture_default_str();
  figure->add_option("--optical-data", fo.optical_data,
                     "optical CSV adding a tabulated-mirror column (compf/compe)");
  figure->add_option("--tab-lambda-p", fo.tab_lambda_p, "plasma wavelength of that data");
  figure->add_option("--tab-gamma", fo.tab_gamma, "relaxation rate of that data");
  figure->add_option("--tab-cutoff", fo.tab_cutoff, "dispersion-integral cutoff");
  figure->add_option("-o,--out", fo.out, "output path (default stdout)");

  IngestOptions io;
  CLI::App* ingest =
      app.add_subcommand("ingest-optical", "optical CSV -> eps(i xi) grid file");
  ingest->add_option("--config", config_sink,
                     "flat key=value config file; # comments; flags override");
  ingest->add_option("input", io.input, "optical data CSV")->required();
  ingest->add_option("--lambda-p", io.lambda_p, "plasma wavelength of the Drude extension");
  ingest->add_option("--omega-p", io.omega_p, "plasma frequency of the Drude extension");
  ingest->add_option("--gamma", io.gamma, "relaxation rate of the Drude extension");
  ingest->add_option("--cutoff", io.cutoff, "dispersion cutoff (default: last table row)");
  ingest->add_option("--ximin", io.ximin, "grid lower bound, rad/s")->capture_default_str();
  ingest->add_option("--ximax", io.ximax, "grid upper bound, rad/s")->capture_default_str();
  ingest->add_option("--points", io.points, "grid size")->capture_default_str();
  ingest->add_option("-o,--out", io.out, "output grid path (required)");

  for (CLI::App* sub : {force, sweep, figure, ingest})
    for (CLI::Option* o : sub->get_options())
      if (!o->get_positional()) o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  try {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    args = expand_config_args(std::move(args));
    std::reverse(args.begin(), args.end());  // App::parse consumes back-to-front
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (force->parsed()) return cmd_force(rc_force);
    if (sweep->parsed()) return cmd_sweep(rc_sweep, so);
    if (figure->parsed()) return cmd_figure(fo);
    return cmd_ingest(io);
  } catch (const NumericsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace casimir::cli
