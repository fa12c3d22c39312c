#include "pmc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pmc/error.hpp"
#include "pmc/kernels.hpp"
#include "pmc/numfmt.hpp"

namespace pmc {

namespace {

constexpr double kPi = std::numbers::pi;

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * (1.0 + std::max(std::abs(a), std::abs(b)));
}

void require_grid(const SolutionGrid& grid) {
  if (grid.size() < 2 || grid.u.size() != grid.size() || grid.du.size() != grid.size() ||
      grid.sin_psi.size() != grid.size())
    throw Error(ErrorKind::InvalidArgument, "malformed solution grid");
}

double range_slack(double r_max) { return 1e-12 * (1.0 + std::abs(r_max)); }

}  // namespace

bool ComparisonCircle::is_line() const noexcept { return std::isinf(radius); }

ComparisonCircle ComparisonCircle::horizontal(double level, double r_max, CircleKind kind) {
  return {std::numeric_limits<double>::infinity(), level, r_max, kind};
}

ComparisonCircle upper_circle(const SolutionGrid& grid) {
  require_grid(grid);
  const double slope = grid.du.back();
  if (!(slope > kDegenerateSlope))
    throw Error(ErrorKind::DegenerateSlope,
                "u'(c) = " + format_double(slope) +
                    ": comparison radius is infinite (or negative); y is the horizontal line u0");
  const double c = grid.c_eff;
  // c sqrt(1+p^2)/p written as c / sin psi for accuracy
  const double s = slope / std::sqrt(1.0 + slope * slope);
  const double radius = c / s;
  return {radius, radius + grid.u0, c, CircleKind::Upper};
}

void check_circle_matches(const ComparisonCircle& circle, const SolutionGrid& grid) {
  require_grid(grid);
  if (!close_rel(circle.r_max, grid.c_eff, 1e-12))
    throw Error(ErrorKind::Consistency, "circle endpoint does not match the grid's c");
  const double slope = grid.du.back();
  if (circle.is_line()) {
    if (std::abs(slope) > kDegenerateSlope)
      throw Error(ErrorKind::Consistency, "horizontal line supplied for a grid with nonzero end slope");
  } else {
    if (!(slope > kDegenerateSlope))
      throw Error(ErrorKind::Consistency, "circle supplied for a grid with zero end slope");
    const double s = slope / std::sqrt(1.0 + slope * slope);
    if (!close_rel(circle.radius, grid.c_eff / s, 1e-12))
      throw Error(ErrorKind::Consistency, "circle radius does not match the grid's end slope");
  }
  const double expected_level = circle.kind == CircleKind::Upper ? grid.u0 : grid.u.back();
  const double at = circle.kind == CircleKind::Upper ? 0.0 : circle.r_max;
  const double z = eval_circle(circle, at).height;
  if (!close_rel(z, expected_level, 1e-12))
    throw Error(ErrorKind::Consistency, "circle does not pass through the grid's anchor point");
}

ComparisonCircle lower_circle(const ComparisonCircle& upper, const SolutionGrid& grid) {
  if (upper.kind != CircleKind::Upper)
    throw Error(ErrorKind::InvalidArgument, "lower_circle expects the upper circle");
  check_circle_matches(upper, grid);
  const double shift = grid.u.back() - eval_circle(upper, upper.r_max).height;
  ComparisonCircle w = upper;
  w.center_height = upper.center_height + shift;
  w.kind = CircleKind::Lower;
  return w;
}

CirclePair comparison_circles(const SolutionGrid& grid) {
  require_grid(grid);
  if (std::abs(grid.du.back()) <= kDegenerateSlope) {
    return {ComparisonCircle::horizontal(grid.u0, grid.c_eff, CircleKind::Upper),
            ComparisonCircle::horizontal(grid.u.back(), grid.c_eff, CircleKind::Lower), true};
  }
  const ComparisonCircle y = upper_circle(grid);
  return {y, lower_circle(y, grid), false};
}

CirclePoint eval_circle(const ComparisonCircle& circle, double r) {
  if (r < 0.0 || r > circle.r_max + range_slack(circle.r_max) || std::isnan(r))
    throw Error(ErrorKind::Range, "r = " + format_double(r) + " outside [0, " +
                                      format_double(circle.r_max) + "]");
  if (circle.is_line()) return {circle.center_height, 0.0, 0.0};
  const double root = std::sqrt(circle.radius * circle.radius - r * r);
  return {circle.center_height - root, r / root, r / circle.radius};
}

std::vector<double> circle_heights(const ComparisonCircle& circle, std::span<const double> r) {
  for (double v : r)
    if (v < 0.0 || v > circle.r_max + range_slack(circle.r_max) || std::isnan(v))
      throw Error(ErrorKind::Range, "r = " + format_double(v) + " outside circle range");
  std::vector<double> z(r.size(), circle.center_height);
  if (!circle.is_line()) kernels::circle_heights(circle.radius, circle.center_height, r, z);
  return z;
}

double volume_of_revolution(const SolutionGrid& grid, double r_lo, double r_hi) {
  require_grid(grid);
  const double slack = range_slack(grid.c_eff);
  if (!(r_lo >= 0.0 && r_lo < r_hi && r_hi <= grid.r.back() + slack))
    throw Error(ErrorKind::Range, "volume bounds must satisfy 0 <= r_lo < r_hi <= c_eff");
  r_hi = std::min(r_hi, grid.r.back());
  auto integrand = [&](double r) { return 2.0 * kPi * r * grid.height_at(r); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = std::max(grid.r[i], r_lo);
    const double b = std::min(grid.r[i + 1], r_hi);
    if (!(b > a)) continue;
    total += (b - a) / 6.0 * (integrand(a) + 4.0 * integrand(0.5 * (a + b)) + integrand(b));
  }
  return total;
}

double volume_of_revolution(const ComparisonCircle& circle, double r_lo, double r_hi) {
  const double slack = range_slack(circle.r_max);
  if (!(r_lo >= 0.0 && r_lo < r_hi && r_hi <= circle.r_max + slack))
    throw Error(ErrorKind::Range, "volume bounds must satisfy 0 <= r_lo < r_hi <= r_max");
  r_hi = std::min(r_hi, circle.r_max);
  const double cyl = kPi * (r_hi * r_hi - r_lo * r_lo) * circle.center_height;
  if (circle.is_line()) return cyl;
  const double r2 = circle.radius * circle.radius;
  auto cap = [&](double r) { return std::pow(r2 - r * r, 1.5); };
  return cyl + (2.0 * kPi / 3.0) * (cap(r_hi) - cap(r_lo));
}

}  // namespace pmc
