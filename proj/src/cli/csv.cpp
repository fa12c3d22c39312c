#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "pmc/cli.hpp"
#include "pmc/error.hpp"
#include "pmc/numfmt.hpp"

namespace pmc::cli {

namespace {

constexpr const char* kHeader = "r,u,du,sin_psi,kappa,y,w,margin_upper,margin_lower";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

void write_solution_csv(std::ostream& os, const SolveOutcome& outcome) {
  const SolutionGrid& g = outcome.grid;
  const bool with_circles = outcome.circles_available && !outcome.circles.degenerate;
  std::vector<double> y, w;
  if (with_circles) {
    y = circle_heights(outcome.circles.upper, g.r);
    w = circle_heights(outcome.circles.lower, g.r);
  }
  os << kHeader << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) {
    os << format_double(g.r[i]) << ',' << format_double(g.u[i]) << ',' << format_double(g.du[i])
       << ',' << format_double(g.sin_psi[i]) << ',' << format_double(g.kappa[i]) << ',';
    if (with_circles) {
      os << format_double(y[i]) << ',' << format_double(w[i]) << ',' << format_double(y[i] - g.u[i])
         << ',' << format_double(g.u[i] - w[i]);
    } else {
      os << ",,,";
    }
    os << '\n';
  }
}

SolutionGrid read_solution_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Config, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw Error(ErrorKind::Config, "unexpected CSV header: " + line);
  SolutionGrid g;
  g.method = SolveMethod::Quadrature;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 9) throw Error(ErrorKind::Config, "CSV row " + std::to_string(row) + ": expected 9 cells");
    double v[5];
    for (int k = 0; k < 5; ++k)
      if (!parse_double(cells[k], v[k]))
        throw Error(ErrorKind::Config, "CSV row " + std::to_string(row) + ": bad number '" + cells[k] + "'");
    g.r.push_back(v[0]);
    g.u.push_back(v[1]);
    g.du.push_back(v[2]);
    g.sin_psi.push_back(v[3]);
    g.kappa.push_back(v[4]);
  }
  if (g.size() < 3) throw Error(ErrorKind::Config, "CSV needs at least 3 rows");
  g.u0 = g.u.front();
  g.c_eff = g.r.back();
  g.c_requested = g.c_eff;
  g.gamma = std::atan(g.du.back());
  for (double s : g.sin_psi)
    if (s < 0.0) g.bends_down = true;
  return g;
}

void write_sweep_csv(std::ostream& os, const std::string& parameter, const std::vector<SweepRow>& rows) {
  os << parameter
     << ",status,gamma,R,u_c,volume_y,volume_u,volume_w,min_margin_upper,min_margin_lower\n";
  for (const auto& row : rows) {
    os << format_double(row.value) << ',' << row.status;
    if (row.status == "ok" || row.status == "vertical" || row.status == "degenerate") {
      os << ',' << format_double(row.gamma) << ',' << format_double(row.radius) << ','
         << format_double(row.u_end) << ',' << format_double(row.volume_y) << ','
         << format_double(row.volume_u) << ',' << format_double(row.volume_w) << ','
         << format_double(row.min_margin_upper) << ',' << format_double(row.min_margin_lower);
    } else if (row.status == "no_circles") {
      os << ',' << format_double(row.gamma) << ",," << format_double(row.u_end) << ",,"
         << format_double(row.volume_u) << ",,,";
    } else {
      os << ",,,,,,,,";
    }
    os << '\n';
  }
}

}  // namespace pmc::cli
