#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pmc/cli.hpp"
#include "pmc/error.hpp"
#include "pmc/numfmt.hpp"

namespace pmc::cli {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::string g12(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Config: return kExitConfig;
    case ErrorKind::DegenerateSlope: return kExitDegenerate;
    default: return kExitSolver;
  }
}

}  // namespace

SolveOutcome run_solve(const RunConfig& cfg) {
  SolveOutcome out;
  if (cfg.gamma) {
    ShootResult shot = shoot_for_gamma(cfg.profile, cfg.c, *cfg.gamma, cfg.bracket, cfg.tol);
    out.grid = std::move(shot.grid);
    out.shot_u0 = shot.u0;
    out.shoot_iterations = shot.iterations;
  } else {
    const bool quad = cfg.method == MethodChoice::Quadrature ||
                      (cfg.method == MethodChoice::Auto && cfg.profile.radial_only());
    out.grid = quad ? solve_radial_quadrature(cfg.profile, cfg.c, *cfg.u0, cfg.intervals)
                    : solve_ivp(cfg.profile, cfg.c, *cfg.u0, cfg.tol);
  }
  try {
    out.circles = comparison_circles(out.grid);
    out.circles_available = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateSlope) throw;
  }
  return out;
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
  if (!cfg.sweep) throw Error(ErrorKind::Config, "config key 'sweep_param': no sweep configured");
  const SweepSpec& sw = *cfg.sweep;
  std::vector<SweepRow> rows(static_cast<std::size_t>(sw.steps));
  for (int i = 0; i < sw.steps; ++i)
    rows[i].value = i + 1 == sw.steps ? sw.to
                                      : sw.from + (sw.to - sw.from) * i / static_cast<double>(sw.steps - 1);

  auto one = [&](SweepRow& row) {
    RunConfig local = cfg;
    local.sweep.reset();
    try {
      if (sw.parameter == "u0") local.u0 = row.value;
      else local.profile = cfg.profile.with_parameter(sw.parameter, row.value);
      const SolveOutcome o = run_solve(local);
      const SolutionGrid& g = o.grid;
      row.gamma = g.gamma;
      row.u_end = g.u_end();
      row.volume_u = volume_of_revolution(g, 0.0, g.c_eff);
      if (!o.circles_available) {
        row.status = "no_circles";
        return;
      }
      row.radius = o.circles.upper.radius;
      row.volume_y = volume_of_revolution(o.circles.upper, 0.0, g.c_eff);
      row.volume_w = volume_of_revolution(o.circles.lower, 0.0, g.c_eff);
      const BoundsReport b =
          verify_sandwich(g, o.circles.upper, o.circles.lower, default_tolerance(g));
      row.min_margin_upper = b.min_margin_upper_interior;
      row.min_margin_lower = b.min_margin_lower_interior;
      row.status = o.circles.degenerate ? "degenerate" : g.truncated_vertical ? "vertical" : "ok";
    } catch (const Error& e) {
      row.status = std::string("error:") + to_string(e.kind());
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, rows.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) one(rows[i]);
    });
  for (auto& th : pool) th.join();
  return rows;
}

namespace {

struct Options {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  bool strict_flag = false;
  CLI::Option* strict_opt = nullptr;
};

void add_run_options(CLI::App* app, Options& o) {
  app->add_option("--config", o.config_path, "key = value config file; flags override it");
  for (const auto& key : known_keys()) {
    if (key == "strict") continue;
    std::string names = "--" + key;
    if (key.find('_') != std::string::npos) {
      std::string dashed = key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      names = "--" + dashed + ",--" + key;
    }
    o.opts[key] = app->add_option(names, o.values[key]);
  }
  o.strict_opt = app->add_flag("--strict", o.strict_flag, "exit 5 unless every verification passes");
}

RunConfig load_config(const Options& o) {
  KeyValues kv;
  if (!o.config_path.empty()) kv = read_config_file(o.config_path);
  for (const auto& [key, opt] : o.opts)
    if (opt->count()) kv[key] = o.values.at(key);
  if (o.strict_opt->count()) kv["strict"] = "true";
  return build_run_config(kv);
}

// Writes to the named file, or to fallback when the path is empty.
template <class F>
void emit(const std::string& path, const char* key, std::ostream& fallback, F&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Config, std::string("config key '") + key + "': cannot write '" + path + "'");
  write(f);
  if (!f) throw Error(ErrorKind::Config, std::string("config key '") + key + "': write failed for '" + path + "'");
}

void print_summary(std::ostream& os, const RunConfig& cfg, const SolveOutcome& o) {
  const SolutionGrid& g = o.grid;
  os << "profile    " << cfg.profile.describe() << '\n';
  os << "method     " << to_string(g.method) << " (" << g.size() << " nodes)\n";
  os << "c          " << g12(g.c_requested);
  if (g.c_eff != g.c_requested) os << " (solution ends at " << g12(g.c_eff) << ")";
  os << '\n';
  if (o.shot_u0)
    os << "u0         " << g12(*o.shot_u0) << " (recovered by shooting, " << o.shoot_iterations
       << " iterations)\n";
  else
    os << "u0         " << g12(g.u0) << '\n';
  os << "u(c)       " << g12(g.u_end()) << '\n';
  os << "gamma      " << g12(g.gamma) << " rad = " << g12(g.gamma * kRadToDeg) << " deg\n";
  if (!o.circles_available)
    os << "R          unavailable (u'(c) < 0)\n";
  else if (o.circles.degenerate)
    os << "R          inf (u'(c) = 0; y and w are horizontal lines)\n";
  else
    os << "R          " << g12(o.circles.upper.radius) << '\n';
  os << "truncated  " << (g.truncated_vertical ? "yes (vertical tangent)" : "no") << '\n';
}

int circle_status(const SolveOutcome& o, std::ostream& err) {
  if (o.circles_available && !o.circles.degenerate) return kExitOk;
  err << (o.circles_available ? "degenerate end slope: comparison circles are horizontal lines\n"
                              : "negative end slope: comparison circles unavailable\n");
  return kExitDegenerate;
}

bool certificate_passes(const Certificate& cert) {
  if (!cert.bounds) return false;
  const BoundsReport& b = *cert.bounds;
  return cert.efe.ok && cert.monotone.ok && b.sandwich_ok && (!b.strict_required || b.strict_ok);
}

int cmd_solve(const Options& opts, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_config(opts);
  const SolveOutcome o = run_solve(cfg);
  std::ostream& summary = cfg.out.empty() ? err : out;
  emit(cfg.out, "out", out, [&](std::ostream& os) { write_solution_csv(os, o); });
  print_summary(summary, cfg, o);
  if (!cfg.svg.empty())
    emit(cfg.svg, "svg", out, [&](std::ostream& os) { os << render_svg(o, cfg.profile.describe()); });
  if (cfg.strict) {
    const Certificate cert = certify(o.grid, cfg.profile);
    if (!certificate_passes(cert)) {
      err << "strict: verification failed\n";
      return kExitVerification;
    }
  }
  return circle_status(o, err);
}

int cmd_plot(const Options& opts, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_config(opts);
  const SolveOutcome o = run_solve(cfg);
  emit(cfg.svg, "svg", out, [&](std::ostream& os) { os << render_svg(o, cfg.profile.describe()); });
  if (!cfg.out.empty()) emit(cfg.out, "out", out, [&](std::ostream& os) { write_solution_csv(os, o); });
  print_summary(err, cfg, o);
  return circle_status(o, err);
}

std::string witness_text(const ClauseVerdict& v) {
  if (v.ok) return "pass";
  return v.witness ? "FAIL (first violation near r = " + g12(*v.witness) + ")" : "FAIL";
}

int cmd_check(const Options& opts, std::ostream& out, std::ostream&) {
  const RunConfig cfg = load_config(opts);
  const SolveOutcome o = run_solve(cfg);
  const SolutionGrid& g = o.grid;
  const Certificate cert = certify(g, cfg.profile);
  const AssumptionReport& a = cert.assumption;
  const bool supported = a.all_ok();

  std::optional<CounterexampleReport> cx;
  if (cfg.profile.kind() == ProfileKind::Sine) cx = counterexample_scan(std::min(g.c_eff, std::numbers::pi));

  const bool sandwich = cert.bounds && cert.bounds->sandwich_ok &&
                        (!cert.bounds->strict_required || cert.bounds->strict_ok);
  bool pass;
  if (supported) pass = certificate_passes(cert);
  else pass = sandwich && cert.monotone.ok;

  print_summary(out, cfg, o);
  out << '\n';
  out << "assumption" << (cert.assumption_along_solution ? " (sampled along the solution)" : "") << '\n';
  out << "  f(0) >= 0     " << (a.f0_nonnegative ? "pass" : "FAIL") << " (f(0) = " << g12(a.f0) << ")\n";
  out << "  nondecreasing " << witness_text(a.monotone) << '\n';
  out << "  convex        " << witness_text(a.convex) << '\n';
  if (!supported)
    out << "  outside the theorem's hypotheses; results below are observations, not guarantees\n";
  out << "efe bounds      " << (cert.efe.ok ? "pass" : "FAIL") << (cert.efe.strict ? " (strict)" : "")
      << ", worst slack " << g12(cert.efe.worst_slack) << " at r = " << g12(cert.efe.worst_r) << '\n';
  out << "kappa monotone  " << (cert.monotone.ok ? "pass" : "FAIL") << ", worst drop "
      << g12(cert.monotone.worst_drop) << '\n';
  if (cert.bounds) {
    const BoundsReport& b = *cert.bounds;
    out << "sandwich        " << (sandwich ? "pass" : "FAIL") << (b.strict_required ? " (strict)" : "")
        << ", min y-u " << g12(b.min_margin_upper_interior) << ", min u-w "
        << g12(b.min_margin_lower_interior) << ", tol " << g12(b.tolerance) << '\n';
  } else {
    out << "sandwich        not asserted (u'(c) < 0: no comparison circles)\n";
  }
  if (cx) {
    out << "sine counterexample on (0, " << g12(cx->c_max) << "]\n"
        << "  kappa' > 0 at every sample: " << (cx->kappa_increasing_everywhere ? "yes" : "no") << '\n'
        << "  int_0^r t f''(t) dt < 0:    " << (cx->integral_negative ? "yes" : "no")
        << " (value at r = 1: " << g12(cx->integral_at_one) << ")\n"
        << "  solver kappa' max error:    " << g12(cx->max_kappa_prime_error) << '\n';
  }

  out << "\n[check]\n";
  out << "profile=" << to_string(cfg.profile.kind()) << '\n';
  out << "c=" << format_double(g.c_requested) << '\n';
  out << "c_eff=" << format_double(g.c_eff) << '\n';
  out << "u0=" << format_double(g.u0) << '\n';
  out << "gamma=" << format_double(g.gamma) << '\n';
  out << "truncated_vertical=" << (g.truncated_vertical ? "true" : "false") << '\n';
  out << "assumption_f0_nonnegative=" << (a.f0_nonnegative ? "true" : "false") << '\n';
  out << "assumption_monotone=" << (a.monotone.ok ? "true" : "false") << '\n';
  out << "assumption_convex=" << (a.convex.ok ? "true" : "false") << '\n';
  out << "assumption=" << verdict(supported) << '\n';
  out << "regime=" << (supported ? "supported" : "unsupported") << '\n';
  out << "efe=" << verdict(cert.efe.ok) << '\n';
  out << "curvature_monotone=" << verdict(cert.monotone.ok) << '\n';
  out << "sandwich=" << (cert.bounds ? verdict(sandwich) : "not_asserted") << '\n';
  if (cert.bounds) {
    out << "min_margin_upper=" << format_double(cert.bounds->min_margin_upper_interior) << '\n';
    out << "min_margin_lower=" << format_double(cert.bounds->min_margin_lower_interior) << '\n';
  }
  if (cx) {
    out << "counterexample_kappa_increasing=" << (cx->kappa_increasing_everywhere ? "true" : "false") << '\n';
    out << "counterexample_integral_negative=" << (cx->integral_negative ? "true" : "false") << '\n';
    out << "counterexample_integral_at_one=" << format_double(cx->integral_at_one) << '\n';
  }
  out << "result=" << verdict(pass) << '\n';
  return pass ? kExitOk : kExitVerification;
}

int cmd_sweep(const Options& opts, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_config(opts);
  if (!cfg.sweep) throw Error(ErrorKind::Config, "config key 'sweep_param': required for sweep");
  const auto rows = run_sweep(cfg);
  emit(cfg.out, "out", out, [&](std::ostream& os) { write_sweep_csv(os, cfg.sweep->parameter, rows); });
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) {
    return r.status.rfind("error:", 0) == 0;
  });
  err << rows.size() << " rows, " << failed << " failed\n";
  return kExitOk;
}

void cmd_presets(std::ostream& out) {
  struct Row {
    const char *family, *f, *params, *assumption;
  };
  static const Row rows[] = {
      {"family", "f", "parameters", "assumption (f(0)>=0, f'>=0, f''>=0)"},
      {"constant", "k", "k", "k >= 0"},
      {"linear", "a r + b", "a, b", "a >= 0, b >= 0"},
      {"quadratic", "a r^2 + b", "a, b", "a >= 0, b >= 0"},
      {"exponential", "a e^r", "a", "a >= 0"},
      {"sine", "sin r", "-", "fails convexity; comparison still holds for c < sqrt(2)"},
      {"capillary", "B u", "B", "B > 0, u0 >= 0 (checked along the solution)"},
      {"compressible", "-a/sqrt(1+u'^2) + b e^(a u) + c3", "a, b, c3", "checked along the solution"},
      {"custom", "table file of r,f rows", "table", "checked by finite differences"},
  };
  for (const Row& r : rows)
    out << std::left << std::setw(14) << r.family << std::setw(36) << r.f << std::setw(12) << r.params
        << r.assumption << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radial prescribed mean curvature solver with comparison-circle bounds", "pmc"};
  app.require_subcommand(1);
  std::map<std::string, Options> opts;  // one per subcommand; node storage keeps bindings stable
  CLI::App* solve = app.add_subcommand("solve", "solve and write the solution CSV");
  CLI::App* check = app.add_subcommand("check", "verify hypotheses and bounds");
  CLI::App* plot = app.add_subcommand("plot", "write an SVG of u, y and w");
  CLI::App* sweep = app.add_subcommand("sweep", "sweep one parameter and tabulate volumes");
  CLI::App* presets = app.add_subcommand("presets", "list profile families");
  for (CLI::App* sub : {solve, check, plot, sweep}) add_run_options(sub, opts[sub->get_name()]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (presets->parsed()) {
      cmd_presets(out);
      return kExitOk;
    }
    if (solve->parsed()) return cmd_solve(opts.at("solve"), out, err);
    if (check->parsed()) return cmd_check(opts.at("check"), out, err);
    if (plot->parsed()) return cmd_plot(opts.at("plot"), out, err);
    if (sweep->parsed()) return cmd_sweep(opts.at("sweep"), out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitConfig;
}

}  // namespace pmc::cli
