#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pmc/geometry.hpp"
#include "pmc/profiles.hpp"
#include "pmc/solver.hpp"

namespace pmc {

// Equality tolerance used by the sandwich checks: 1e-9 (1 + |u(c)|).
double default_tolerance(const SolutionGrid& grid);

struct BoundsReport {
  std::vector<double> margin_upper;  // y(r_i) - u(r_i)
  std::vector<double> margin_lower;  // u(r_i) - w(r_i)
  double min_margin_upper_interior = 0.0;
  double min_margin_lower_interior = 0.0;
  double residual_upper_at_zero = 0.0;  // |y(0) - u(0)|
  double residual_lower_at_c = 0.0;     // |w(c) - u(c)|
  std::optional<bool> efe_ok;
  std::optional<bool> curvature_monotone_ok;
  bool sandwich_ok = false;
  // interior margins strictly positive; only demanded when f is strictly increasing
  bool strict_ok = false;
  bool strict_required = false;
  double tolerance = 0.0;
};

// Margins at every node. sandwich_ok holds iff both interior minima exceed
// -tol and both endpoint residuals are within tol. When `strict` is set the
// caller also expects strict_ok (interior margins > 0).
// Throws Error{Consistency} if the circles were not built from `grid`.
BoundsReport verify_sandwich(const SolutionGrid& grid, const ComparisonCircle& upper,
                             const ComparisonCircle& lower, double tol, bool strict = false);

// f evaluated along the grid: f(r_i, u_i, u'_i).
std::vector<double> profile_along(const SolutionGrid& grid, const Profile& p);

// True when the sampled f strictly increases from node to node.
bool strictly_increasing(const std::vector<double>& f);

struct EfeReport {
  bool ok = false;
  bool strict = false;
  double worst_slack = 0.0;  // min over interior nodes of both slacks
  double worst_r = 0.0;
  double worst_lower_slack = 0.0;  // min of sin psi - r f(0)/2
  double worst_upper_slack = 0.0;  // min of r f(r)/2 - sin psi
};

// r f(0)/2 <= sin psi(r) <= r f(r)/2 at interior nodes; strict when the
// sampled f is strictly increasing.
EfeReport verify_efe(const SolutionGrid& grid, const Profile& p, double tol = 1e-10);

struct MonotoneReport {
  bool ok = false;
  std::optional<std::size_t> first_violation;  // index i with kappa[i+1] < kappa[i] - tol
  double worst_drop = 0.0;
};

MonotoneReport verify_curvature_monotone(const SolutionGrid& grid, double tol);

struct CounterexampleReport {
  double c_max = 0.0;
  std::size_t samples = 0;
  bool kappa_increasing_everywhere = false;  // closed-form kappa' > 0 at every sample
  double increasing_from = 0.0;              // longest run of kappa' > 0 starting near 0
  double increasing_to = 0.0;
  bool integral_negative = false;  // int_0^r t f''(t) dt < 0 at every sample r < min(c_max, sqrt 2)
  double integral_at_one = 0.0;    // int_0^1 t f''(t) dt (closed form)
  double solver_c = 0.0;           // endpoint of the cross-check solve
  double max_kappa_prime_error = 0.0;  // second differences of solver sin psi vs closed form
};

// f(r) = sin r has f'' < 0, yet kappa' = ((r^2-2)/r^3)(r cos r - sin r) > 0 on
// (0, sqrt 2). Samples the closed form on (0, c_max] and cross-checks it
// against a solved grid. Requires 0 < c_max <= pi.
CounterexampleReport counterexample_scan(double c_max, std::size_t samples = 10000);

// Closed-form pieces of the sine example (also used by tests).
double sine_sin_psi(double r);     // sin r / r - cos r
double sine_kappa_prime(double r);  // ((r^2-2)/r^3)(r cos r - sin r)

struct Certificate {
  AssumptionReport assumption;
  bool assumption_along_solution = false;  // f sampled along u instead of f(r)
  EfeReport efe;
  MonotoneReport monotone;
  std::optional<BoundsReport> bounds;  // missing when circles cannot be built
  CirclePair circles;
  bool circles_available = false;
};

// Runs every check on a solved grid. For height/slope-dependent profiles the
// assumption is checked on r -> f(r, u(r), u'(r)).
Certificate certify(const SolutionGrid& grid, const Profile& p, std::size_t assumption_samples = 2001);

}  // namespace pmc
