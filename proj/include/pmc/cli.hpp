#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmc/geometry.hpp"
#include "pmc/profiles.hpp"
#include "pmc/solver.hpp"
#include "pmc/verify.hpp"

namespace pmc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitSolver = 3,
  kExitDegenerate = 4,
  kExitVerification = 5,
};

enum class MethodChoice { Auto, Quadrature, Ivp };

struct SweepSpec {
  std::string parameter;  // a profile scalar ("k", "a", "b", "B", "c3") or "u0"
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
};

struct RunConfig {
  Profile profile = Profile::constant(0.0);
  double c = 0.0;
  std::optional<double> u0;
  std::optional<double> gamma;  // radians; implies shooting
  std::pair<double, double> bracket{0.0, 0.0};
  std::size_t intervals = 2000;
  double tol = 1e-10;
  MethodChoice method = MethodChoice::Auto;
  std::string out;
  std::string svg;
  std::optional<SweepSpec> sweep;
  bool strict = false;
};

using KeyValues = std::map<std::string, std::string>;

// Flat "key = value" lines; '#' starts a comment. Throws Error{Config}.
KeyValues parse_config_text(const std::string& text);
KeyValues read_config_file(const std::string& path);

// Radians by default; a trailing "deg" means degrees ("30deg").
double parse_angle(const std::string& key, const std::string& text);

// Validates and assembles a run configuration. Error{Config} messages name the
// offending key.
RunConfig build_run_config(const KeyValues& kv);

// Every key accepted by build_run_config.
const std::vector<std::string>& known_keys();

struct SolveOutcome {
  SolutionGrid grid;
  std::optional<double> shot_u0;  // set when the run used shooting
  int shoot_iterations = 0;
  CirclePair circles;
  bool circles_available = false;  // false when u'(c) < 0
};

// Solve for the configured profile (quadrature, IVP or shooting) and build the
// comparison circles when possible.
SolveOutcome run_solve(const RunConfig& cfg);

// Header r,u,du,sin_psi,kappa,y,w,margin_upper,margin_lower; one row per node;
// shortest round-trip number format. Circle columns are empty when the end
// slope is degenerate.
void write_solution_csv(std::ostream& os, const SolveOutcome& outcome);

// Reads the columns r,u,du,sin_psi,kappa back into a grid (u0 = u[0],
// c_eff = last r). Throws Error{Config} on malformed input.
SolutionGrid read_solution_csv(std::istream& is);

// Standalone SVG 1.1: u solid, y and w dashed, legend, endpoint markers.
std::string render_svg(const SolveOutcome& outcome, const std::string& title);

struct SweepRow {
  double value = 0.0;
  std::string status;  // "ok", "degenerate", "vertical", "no_circles" or "error:<kind>"
  double gamma = 0.0;
  double radius = 0.0;
  double u_end = 0.0;
  double volume_y = 0.0;
  double volume_u = 0.0;
  double volume_w = 0.0;
  double min_margin_upper = 0.0;
  double min_margin_lower = 0.0;
};

// One row per sweep value in ascending order; rows run concurrently.
std::vector<SweepRow> run_sweep(const RunConfig& cfg);
void write_sweep_csv(std::ostream& os, const std::string& parameter, const std::vector<SweepRow>& rows);

// Full command-line entry point (subcommands solve, check, plot, sweep, presets).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pmc::cli
