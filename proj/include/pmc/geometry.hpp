#pragma once

#include "pmc/solver.hpp"

namespace pmc {

enum class CircleKind { Upper, Lower };

// Lower half-circle arc z(r) = center_height - sqrt(R^2 - r^2), the graph of
// a constant-f solution. An infinite radius encodes the degenerate horizontal
// line z = center_height (a solution with zero slope at the wall).
struct ComparisonCircle {
  double radius = 0.0;
  double center_height = 0.0;
  double r_max = 0.0;
  CircleKind kind = CircleKind::Upper;

  bool is_line() const noexcept;
  static ComparisonCircle horizontal(double level, double r_max, CircleKind kind);
};

struct CirclePoint {
  double height = 0.0;
  double slope = 0.0;
  double sin_psi = 0.0;
};

// Slopes at or below this are treated as zero when building circles.
inline constexpr double kDegenerateSlope = 1e-12;

// Circle through (0, u0) with zero slope there and the same slope as u at
// c_eff: R = c sqrt(1 + u'(c)^2) / u'(c). Throws Error{DegenerateSlope} when
// u'(c_eff) <= kDegenerateSlope.
ComparisonCircle upper_circle(const SolutionGrid& grid);

// The upper circle translated vertically so it meets u at c_eff.
// Throws Error{Consistency} if `upper` was not built from `grid`.
ComparisonCircle lower_circle(const ComparisonCircle& upper, const SolutionGrid& grid);

struct CirclePair {
  ComparisonCircle upper;
  ComparisonCircle lower;
  bool degenerate = false;  // both are the horizontal line z = u0
};

// upper_circle + lower_circle, falling back to the horizontal-line pair in the
// degenerate-slope case instead of throwing.
CirclePair comparison_circles(const SolutionGrid& grid);

// Throws Error{Consistency} unless the circle's construction data match grid.
void check_circle_matches(const ComparisonCircle& circle, const SolutionGrid& grid);

// Throws Error{Range} for r outside [0, r_max].
CirclePoint eval_circle(const ComparisonCircle& circle, double r);

// Heights at many radii (vectorized); all r must lie in [0, r_max].
std::vector<double> circle_heights(const ComparisonCircle& circle, std::span<const double> r);

// Signed volume between the graph and the plane z = 0 swept about the axis,
//   V = int_{r_lo}^{r_hi} 2 pi r z(r) dr.
// For grids: composite Simpson on each grid cell clipped to [r_lo, r_hi], with
// cell midpoints from the cubic Hermite interpolant. For circles: closed form.
double volume_of_revolution(const SolutionGrid& grid, double r_lo, double r_hi);
double volume_of_revolution(const ComparisonCircle& circle, double r_lo, double r_hi);

}  // namespace pmc
