#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/geometry.hpp"

#ifndef CASIMIR_BIN
#error "CASIMIR_BIN must name the casimir executable"
#endif

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("casimir_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path unique_path(const std::string& stem) {
  static int counter = 0;
  return scratch_dir() / (stem + "_" + std::to_string(counter++));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = unique_path("stdout");
  const fs::path err = unique_path("stderr");
  const std::string cmd = std::string("\"") + CASIMIR_BIN + "\" " + args + " > \"" +
                          out.string() + "\" 2> \"" + err.string() + "\"";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = raw == -1 ? -1 : WEXITSTATUS(raw);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> csv_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// Payload of the "value:" line of a `force` report.
double value_of(const std::string& report) {
  for (const std::string& line : lines_of(report))
    if (line.rfind("value:", 0) == 0) return std::stod(line.substr(6));
  FAIL("report has no value line:\n" << report);
  return 0.0;
}

}  // namespace

TEST_CASE("cli force: ideal mirrors reproduce the closed form") {
  auto r = run_cli("force -L 1um --area 1cm^2");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("quantity:          force") != std::string::npos);
  CHECK(r.out.find("(eta_F)") != std::string::npos);
  const double ideal = casimir::ideal_casimir_force({1e-4, 1e-6});
  CHECK(value_of(r.out) == doctest::Approx(ideal).epsilon(1e-8));

  auto e = run_cli("force -L 1um --area 1cm^2 --quantity energy");
  REQUIRE(e.code == 0);
  CHECK(e.out.find("quantity:          energy") != std::string::npos);
  CHECK(e.out.find("(eta_E)") != std::string::npos);
  CHECK(value_of(e.out) ==
        doctest::Approx(casimir::ideal_casimir_energy({1e-4, 1e-6})).epsilon(1e-8));
}

TEST_CASE("cli force: unit suffixes are equivalent spellings") {
  auto um = run_cli("force -L 1um");
  auto nm = run_cli("force -L 1000nm");
  auto si = run_cli("force --separation=1e-6");
  REQUIRE(um.code == 0);
  REQUIRE(nm.code == 0);
  REQUIRE(si.code == 0);
  CHECK(um.out == nm.out);
  CHECK(um.out == si.out);

  auto cm2 = run_cli("force -L 1um --area 1cm^2");
  auto m2 = run_cli("force -L 1um --area 1e-4");
  REQUIRE(cm2.code == 0);
  REQUIRE(m2.code == 0);
  CHECK(cm2.out == m2.out);
}

TEST_CASE("cli force: curved geometries") {
  auto sphere = run_cli("force --geometry sphere-plane --radius 100um -L 1um");
  REQUIRE(sphere.code == 0);
  CHECK(sphere.out.find("(eta_E)") != std::string::npos);
  const double closed = casimir::constants::hbar * casimir::constants::c_light *
                        std::pow(casimir::constants::pi, 3) * 100e-6 / (360.0 * 1e-18);
  CHECK(value_of(sphere.out) == doctest::Approx(closed).epsilon(1e-8));

  auto crossed = run_cli("force --geometry crossed-cylinders --radius 10mm -L 50nm");
  REQUIRE(crossed.code == 0);
  const double closed_x = casimir::constants::hbar * casimir::constants::c_light *
                          std::pow(casimir::constants::pi, 3) * 10e-3 /
                          (360.0 * std::pow(50e-9, 3));
  CHECK(value_of(crossed.out) == doctest::Approx(closed_x).epsilon(1e-8));
}

TEST_CASE("cli sweep: rows agree with single-point runs") {
  auto sweep = run_cli(
      "sweep --mirror1 plasma:136nm --lmin 0.5um --lmax 1um --points 2 --spacing log");
  REQUIRE(sweep.code == 0);
  const auto lines = lines_of(sweep.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "L_m,force_N,eta_F,error_est,warnings");

  const auto row1 = csv_cells(lines[1]);
  const auto row2 = csv_cells(lines[2]);
  REQUIRE(row1.size() == 5);
  REQUIRE(row2.size() == 5);

  auto p1 = run_cli("force --mirror1 plasma:136nm -L 0.5um");
  auto p2 = run_cli("force --mirror1 plasma:136nm -L 1um");
  REQUIRE(p1.code == 0);
  REQUIRE(p2.code == 0);
  CHECK(std::stod(row1[1]) == value_of(p1.out));
  CHECK(std::stod(row2[1]) == value_of(p2.out));
  CHECK(std::stod(row1[0]) == 0.5e-6);
  CHECK(std::stod(row2[0]) == 1e-6);
}

TEST_CASE("cli sweep: output bytes are reproducible and worker-count independent") {
  const std::string base =
      "sweep --mirror1 plasma:136nm --lmin 0.2um --lmax 2um --points 7 --rel-tol 1e-6";
  const fs::path f1 = unique_path("sweep_jobs1");
  const fs::path f4 = unique_path("sweep_jobs4");
  const fs::path f1b = unique_path("sweep_jobs1_again");
  REQUIRE(run_cli(base + " --jobs 1 -o " + f1.string()).code == 0);
  REQUIRE(run_cli(base + " --jobs 4 -o " + f4.string()).code == 0);
  REQUIRE(run_cli(base + " --jobs 1 -o " + f1b.string()).code == 0);
  const std::string bytes = slurp(f1);
  CHECK(bytes == slurp(f4));
  CHECK(bytes == slurp(f1b));
  CHECK(!bytes.empty());
}

TEST_CASE("cli config: file keys load and explicit flags win") {
  const fs::path cfg = unique_path("run_cfg");
  spit(cfg,
       "# cavity setup\n"
       "mirror1 = plasma:136nm\n"
       "separation = 0.5um\n"
       "temperature = 0K\n");

  auto from_cfg = run_cli("force --config " + cfg.string());
  auto from_flags = run_cli("force --mirror1 plasma:136nm -L 0.5um");
  REQUIRE(from_cfg.code == 0);
  REQUIRE(from_flags.code == 0);
  CHECK(value_of(from_cfg.out) == value_of(from_flags.out));

  auto overridden = run_cli("force --config " + cfg.string() + " --separation=1um");
  auto at_1um = run_cli("force --mirror1 plasma:136nm -L 1um");
  REQUIRE(overridden.code == 0);
  CHECK(value_of(overridden.out) == value_of(at_1um.out));
}

TEST_CASE("cli config: malformed lines are rejected with their location") {
  const fs::path cfg = unique_path("bad_cfg");
  spit(cfg, "# comment\nseparation 1um\n");
  auto r = run_cli("force --config " + cfg.string());
  CHECK(r.code == 2);
  CHECK(r.err.find(":2: expected key=value") != std::string::npos);
}

TEST_CASE("cli: configuration errors exit with code 2") {
  CHECK(run_cli("force --separation=-1um").code == 2);
  CHECK(run_cli("force -L 0um").code == 2);
  CHECK(run_cli("bogus-subcommand").code == 2);

  auto mirror = run_cli("force --mirror1 chrome");
  CHECK(mirror.code == 2);
  CHECK(mirror.err.find("unknown model") != std::string::npos);

  auto sweep_energy = run_cli("sweep --quantity energy --points 2");
  CHECK(sweep_energy.code == 2);
  CHECK(sweep_energy.err.find("force column only") != std::string::npos);

  auto sphere_energy = run_cli("force --geometry sphere-plane --quantity energy");
  CHECK(sphere_energy.code == 2);
  CHECK(sphere_energy.err.find("plane-plane geometry only") != std::string::npos);

  auto figure = run_cli("figure bogus --points 2");
  CHECK(figure.code == 2);
  CHECK(figure.err.find("unknown name") != std::string::npos);
}

TEST_CASE("cli roughness: averaged runs carry the caveat, rough surfaces are rejected") {
  auto ok = run_cli("force -L 1um --roughness gauss:50nm --rel-tol 1e-6");
  REQUIRE(ok.code == 0);
  CHECK(ok.out.find("correlation lengths") != std::string::npos);
  CHECK(value_of(ok.out) > casimir::ideal_casimir_force({1e-4, 1e-6}));

  auto too_rough = run_cli("force -L 1um --roughness gauss:300nm --rel-tol 1e-6");
  CHECK(too_rough.code == 2);
  CHECK(too_rough.err.find("averaging model") != std::string::npos);
}

TEST_CASE("cli figure: compe emits an energy reduction curve") {
  auto r = run_cli("figure compe --lmin 0.5um --lmax 1um --points 2");
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "L_m,eta_E_plasma");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = csv_cells(lines[i]);
    REQUIRE(cells.size() == 2);
    const double eta = std::stod(cells[1]);
    CHECK(eta > 0.0);
    CHECK(eta < 1.0);
  }
}

TEST_CASE("cli ingest-optical: validates input and produces a usable grid") {
  const fs::path empty = unique_path("empty_csv");
  spit(empty, "");
  auto no_header = run_cli("ingest-optical " + empty.string() +
                           " --lambda-p 136nm --gamma 5.32e13 -o " +
                           unique_path("grid_none").string());
  CHECK(no_header.code == 2);
  CHECK(no_header.err.find("no header line") != std::string::npos);

  const fs::path disordered = unique_path("disordered_csv");
  {
    std::ostringstream csv;
    csv << "omega_rad_s,eps_imag\n";
    for (int i = 0; i < 12; ++i) {
      double omega = 1e12 * std::pow(10.0, i * 0.6);
      if (i == 3) omega = 1e12;  // falls behind row 3: ordering violation
      csv << omega << "," << 1.0 / omega << "\n";
    }
    spit(disordered, csv.str());
  }
  auto unsorted = run_cli("ingest-optical " + disordered.string() +
                          " --lambda-p 136nm --gamma 5.32e13 -o " +
                          unique_path("grid_unsorted").string());
  CHECK(unsorted.code == 2);
  CHECK(unsorted.err.find("row") != std::string::npos);

  // Synthetic Drude data: the round trip through the grid file must agree
  // with the closed-form Drude mirror.
  const double omega_p = casimir::plasma_frequency(136e-9);
  const double gamma = 5.32e13;
  const fs::path drude_csv = unique_path("drude_csv");
  {
    std::ostringstream csv;
    csv << "omega_rad_s,eps_imag\n";
    const int per_decade = 40;
    for (int i = 0; i <= 7 * per_decade; ++i) {
      const double omega = 1e12 * std::pow(10.0, static_cast<double>(i) / per_decade);
      const double eps_imag = omega_p * omega_p * gamma / (omega * (omega * omega + gamma * gamma));
      csv << omega << "," << eps_imag << "\n";
    }
    spit(drude_csv, csv.str());
  }
  const fs::path grid = unique_path("drude_grid");
  auto ingest = run_cli("ingest-optical " + drude_csv.string() +
                        " --lambda-p 136nm --gamma 5.32e13 --cutoff 1e19 -o " + grid.string());
  REQUIRE(ingest.code == 0);
  CHECK(ingest.out.find("optical rows spanning") != std::string::npos);
  CHECK(ingest.out.find("extension carries") != std::string::npos);

  auto via_grid = run_cli("force --mirror1 epsgrid:" + grid.string() + " -L 0.5um");
  auto via_drude = run_cli("force --mirror1 drude:lambda=136nm,gamma=5.32e13 -L 0.5um");
  REQUIRE(via_grid.code == 0);
  REQUIRE(via_drude.code == 0);
  CHECK(value_of(via_grid.out) == doctest::Approx(value_of(via_drude.out)).epsilon(1e-2));
}
