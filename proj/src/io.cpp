#include "casimir/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "casimir/units.hpp"

namespace casimir {
namespace {

[[noreturn]] void fail(const std::string& path, long line, const std::string& what) {
  throw std::invalid_argument(path + ":" + std::to_string(line) + ": " + what);
}

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t comma = s.find(',');
    if (comma == std::string_view::npos) {
      out.push_back(trimmed(s));
      return out;
    }
    out.push_back(trimmed(s.substr(0, comma)));
    s.remove_prefix(comma + 1);
  }
}

double parse_field(std::string_view field, const std::string& path, long line,
                   const char* column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    fail(path, line, std::string("cannot parse ") + column + " from '" + std::string(field) +
                         "'");
  return v;
}

struct Line {
  std::string text;
  long number = 0;
};

// All content lines (comments and blanks dropped), each with its 1-based
// physical line number for diagnostics.
std::vector<Line> content_lines(const std::string& path, std::ifstream& in) {
  std::vector<Line> out;
  std::string raw;
  long number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string_view t = trimmed(raw);
    if (t.empty() || t.front() == '#') continue;
    out.push_back({std::string(t), number});
  }
  if (in.bad()) throw std::invalid_argument(path + ": read failure");
  return out;
}

}  // namespace

RawOpticalRows load_optical_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open");
  const std::vector<Line> lines = content_lines(path, in);
  if (lines.empty()) throw std::invalid_argument(path + ": no header line");

  const std::vector<std::string_view> header = split_fields(lines.front().text);
  bool from_nk = false;
  if (header.size() == 3 && header[0] == "omega_rad_s" && header[1] == "n" && header[2] == "k")
    from_nk = true;
  else if (!(header.size() == 2 && header[0] == "omega_rad_s" && header[1] == "eps_imag"))
    fail(path, lines.front().number,
         "header must be 'omega_rad_s,n,k' or 'omega_rad_s,eps_imag'");

  RawOpticalRows rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    const std::vector<std::string_view> f = split_fields(ln.text);
    if (f.size() != (from_nk ? 3u : 2u)) fail(path, ln.number, "wrong field count");
    const double omega = parse_field(f[0], path, ln.number, "omega_rad_s");
    double eps_imag;
    if (from_nk) {
      const double n = parse_field(f[1], path, ln.number, "n");
      const double k = parse_field(f[2], path, ln.number, "k");
      eps_imag = 2.0 * n * k;
    } else {
      eps_imag = parse_field(f[1], path, ln.number, "eps_imag");
    }
    rows.omega.push_back(omega);
    rows.eps_imag.push_back(eps_imag);
  }
  if (rows.omega.empty()) throw std::invalid_argument(path + ": no data rows");
  return rows;
}

OpticalDataTable load_optical_table(const std::string& path, double drude_omega_p,
                                    double drude_gamma, std::optional<double> cutoff) {
  RawOpticalRows rows = load_optical_rows(path);
  const double upper = cutoff.value_or(rows.omega.back());
  return OpticalDataTable(std::move(rows.omega), std::move(rows.eps_imag), drude_omega_p,
                          drude_gamma, upper);
}

void save_epsilon_grid(const std::string& path, const EpsilonGrid& grid) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument(path + ": cannot open for writing");
  out << "# drude_omega_p=" << format_double(grid.drude_omega_p) << "\n";
  out << "# drude_gamma=" << format_double(grid.drude_gamma) << "\n";
  out << "xi_rad_s,eps_i_xi\n";
  for (std::size_t i = 0; i < grid.xi.size(); ++i)
    out << format_double(grid.xi[i]) << "," << format_double(grid.eps[i]) << "\n";
  if (!out) throw std::invalid_argument(path + ": write failure");
}

EpsilonGrid load_epsilon_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open");

  // Metadata travels in comment lines, so scan the raw stream first.
  double omega_p = 0.0;
  double gamma = -1.0;
  std::vector<Line> lines;
  {
    std::string raw;
    long number = 0;
    while (std::getline(in, raw)) {
      ++number;
      const std::string_view t = trimmed(raw);
      if (t.empty()) continue;
      if (t.front() == '#') {
        const std::string_view body = trimmed(t.substr(1));
        if (body.starts_with("drude_omega_p="))
          omega_p = parse_field(body.substr(14), path, number, "drude_omega_p");
        else if (body.starts_with("drude_gamma="))
          gamma = parse_field(body.substr(12), path, number, "drude_gamma");
        continue;
      }
      lines.push_back({std::string(t), number});
    }
    if (in.bad()) throw std::invalid_argument(path + ": read failure");
  }
  if (lines.empty()) throw std::invalid_argument(path + ": no header line");
  if (!(omega_p > 0.0) || gamma < 0.0)
    throw std::invalid_argument(path +
                                ": missing '# drude_omega_p=' or '# drude_gamma=' metadata");

  const std::vector<std::string_view> header = split_fields(lines.front().text);
  if (!(header.size() == 2 && header[0] == "xi_rad_s" && header[1] == "eps_i_xi"))
    fail(path, lines.front().number, "header must be 'xi_rad_s,eps_i_xi'");

  std::vector<double> xi;
  std::vector<double> eps;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    const std::vector<std::string_view> f = split_fields(ln.text);
    if (f.size() != 2) fail(path, ln.number, "wrong field count");
    xi.push_back(parse_field(f[0], path, ln.number, "xi_rad_s"));
    eps.push_back(parse_field(f[1], path, ln.number, "eps_i_xi"));
  }
  return EpsilonGrid(std::move(xi), std::move(eps), omega_p, gamma);
}

}  // namespace casimir
