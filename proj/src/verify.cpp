#include "pmc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pmc/error.hpp"
#include "pmc/kernels.hpp"

namespace pmc {

double default_tolerance(const SolutionGrid& grid) {
  return 1e-9 * (1.0 + std::abs(grid.u.empty() ? 0.0 : grid.u.back()));
}

BoundsReport verify_sandwich(const SolutionGrid& grid, const ComparisonCircle& upper,
                             const ComparisonCircle& lower, double tol, bool strict) {
  if (upper.kind != CircleKind::Upper || lower.kind != CircleKind::Lower)
    throw Error(ErrorKind::InvalidArgument, "verify_sandwich expects (upper, lower) circles");
  if (grid.size() < 3) throw Error(ErrorKind::InvalidArgument, "grid needs at least 3 nodes");
  check_circle_matches(upper, grid);
  check_circle_matches(lower, grid);

  const std::size_t n = grid.size();
  const std::vector<double> y = circle_heights(upper, grid.r);
  const std::vector<double> w = circle_heights(lower, grid.r);

  BoundsReport rep;
  rep.tolerance = tol;
  rep.strict_required = strict;
  rep.margin_upper.resize(n);
  rep.margin_lower.resize(n);
  kernels::difference(y, grid.u, rep.margin_upper);
  kernels::difference(grid.u, w, rep.margin_lower);

  const auto interior_upper = std::span<const double>(rep.margin_upper).subspan(1, n - 2);
  const auto interior_lower = std::span<const double>(rep.margin_lower).subspan(1, n - 2);
  rep.min_margin_upper_interior = kernels::min_value(interior_upper);
  rep.min_margin_lower_interior = kernels::min_value(interior_lower);
  rep.residual_upper_at_zero = std::abs(rep.margin_upper.front());
  rep.residual_lower_at_c = std::abs(rep.margin_lower.back());

  rep.sandwich_ok = rep.min_margin_upper_interior > -tol && rep.min_margin_lower_interior > -tol &&
                    rep.residual_upper_at_zero <= tol && rep.residual_lower_at_c <= tol;
  rep.strict_ok = rep.sandwich_ok && rep.min_margin_upper_interior > 0.0 &&
                  rep.min_margin_lower_interior > 0.0;
  return rep;
}

std::vector<double> profile_along(const SolutionGrid& grid, const Profile& p) {
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = p(grid.r[i], grid.u[i], grid.du[i]);
  return f;
}

bool strictly_increasing(const std::vector<double>& f) {
  for (std::size_t i = 1; i < f.size(); ++i)
    if (!(f[i] > f[i - 1])) return false;
  return f.size() >= 2;
}

EfeReport verify_efe(const SolutionGrid& grid, const Profile& p, double tol) {
  const std::vector<double> f = profile_along(grid, p);
  EfeReport rep;
  rep.strict = strictly_increasing(f) && !grid.bends_down;
  rep.worst_slack = std::numeric_limits<double>::infinity();
  rep.worst_lower_slack = rep.worst_slack;
  rep.worst_upper_slack = rep.worst_slack;
  bool ok = true;
  const double f0 = f.front();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double r = grid.r[i];
    const double s = grid.sin_psi[i];
    const double lower = s - 0.5 * r * f0;
    const double upper = 0.5 * r * f[i] - s;
    const double band = tol * (1.0 + std::abs(0.5 * r * f[i]));
    const double slack = std::min(lower, upper);
    if (rep.strict ? !(slack > 0.0) : !(slack >= -band)) ok = false;
    rep.worst_lower_slack = std::min(rep.worst_lower_slack, lower);
    rep.worst_upper_slack = std::min(rep.worst_upper_slack, upper);
    if (slack < rep.worst_slack) {
      rep.worst_slack = slack;
      rep.worst_r = r;
    }
  }
  rep.ok = ok;
  return rep;
}

MonotoneReport verify_curvature_monotone(const SolutionGrid& grid, double tol) {
  if (grid.kappa.size() < 3) throw Error(ErrorKind::InvalidArgument, "grid needs at least 3 nodes");
  MonotoneReport rep;
  rep.ok = true;
  for (std::size_t i = 0; i + 1 < grid.kappa.size(); ++i) {
    const double drop = grid.kappa[i] - grid.kappa[i + 1];
    rep.worst_drop = std::max(rep.worst_drop, drop);
    if (rep.ok && grid.kappa[i + 1] < grid.kappa[i] - tol) {
      rep.ok = false;
      rep.first_violation = i;
    }
  }
  return rep;
}

double sine_sin_psi(double r) {
  if (r < 1e-3) {
    const double r2 = r * r;
    return r2 / 3.0 * (1.0 - r2 / 10.0 * (1.0 - r2 / 28.0));
  }
  return std::sin(r) / r - std::cos(r);
}

double sine_kappa_prime(double r) {
  const double r2 = r * r;
  if (r < 1e-2) {
    // r cos r - sin r = -r^3/3 + r^5/30 - r^7/840 + ...
    return (r2 - 2.0) * (-1.0 / 3.0 + r2 / 30.0 - r2 * r2 / 840.0);
  }
  return (r2 - 2.0) / (r2 * r) * (r * std::cos(r) - std::sin(r));
}

CounterexampleReport counterexample_scan(double c_max, std::size_t samples) {
  if (!(c_max > 0.0 && c_max <= std::numbers::pi))
    throw Error(ErrorKind::InvalidArgument, "c_max must lie in (0, pi]");
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 samples");
  CounterexampleReport rep;
  rep.c_max = c_max;
  rep.samples = samples;

  const double sqrt2 = std::numbers::sqrt2;
  const double integral_limit = std::min(c_max, sqrt2);
  bool all_pos = true;
  bool in_run = true;
  bool integral_neg = true;
  rep.increasing_from = c_max / static_cast<double>(samples);
  rep.increasing_to = 0.0;
  for (std::size_t k = 1; k <= samples; ++k) {
    const double r = c_max * static_cast<double>(k) / static_cast<double>(samples);
    const bool pos = sine_kappa_prime(r) > 0.0;
    all_pos = all_pos && pos;
    if (in_run && pos) rep.increasing_to = r;
    if (!pos) in_run = false;
    if (r < integral_limit) {
      // int_0^r t (-sin t) dt = r cos r - sin r
      const double integral = r * std::cos(r) - std::sin(r);
      if (!(integral < 0.0)) integral_neg = false;
    }
  }
  if (rep.increasing_to == 0.0) rep.increasing_from = 0.0;
  rep.kappa_increasing_everywhere = all_pos;
  rep.integral_negative = integral_neg;
  rep.integral_at_one = std::cos(1.0) - std::sin(1.0);

  const SolutionGrid grid = solve_radial_quadrature(Profile::sine(), c_max, 0.0, 2000);
  rep.solver_c = grid.c_eff;
  const double h = grid.r[1] - grid.r[0];
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const auto& s = grid.sin_psi;
    const double second = (s[i + 1] - 2.0 * s[i] + s[i - 1]) / (h * h);
    worst = std::max(worst, std::abs(second - sine_kappa_prime(grid.r[i])));
  }
  rep.max_kappa_prime_error = worst;
  return rep;
}

Certificate certify(const SolutionGrid& grid, const Profile& p, std::size_t assumption_samples) {
  Certificate cert;
  const std::vector<double> f = profile_along(grid, p);
  if (p.radial_only()) {
    cert.assumption = check_assumptions(p, grid.c_eff, assumption_samples);
  } else {
    cert.assumption = check_assumptions_sampled(grid.r, f);
    cert.assumption_along_solution = true;
  }
  const double tol = default_tolerance(grid);
  cert.efe = verify_efe(grid, p);
  cert.monotone = verify_curvature_monotone(grid, tol);
  try {
    cert.circles = comparison_circles(grid);
    cert.circles_available = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateSlope) throw;
  }
  if (cert.circles_available) {
    const bool strict = !cert.circles.degenerate && strictly_increasing(f) && !grid.bends_down;
    BoundsReport rep = verify_sandwich(grid, cert.circles.upper, cert.circles.lower, tol, strict);
    rep.efe_ok = cert.efe.ok;
    rep.curvature_monotone_ok = cert.monotone.ok;
    cert.bounds = std::move(rep);
  }
  return cert;
}

}  // namespace pmc
