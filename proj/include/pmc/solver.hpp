#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pmc/profiles.hpp"

namespace pmc {

enum class SolveMethod { Quadrature, Ivp };

const char* to_string(SolveMethod m);

// Discretized radial solution u(r) on [0, c_eff].
struct SolutionGrid {
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> du;
  std::vector<double> sin_psi;
  std::vector<double> kappa;  // planar curvature of (r, u(r)), equals (sin psi)'

  double u0 = 0.0;
  double c_requested = 0.0;
  double c_eff = 0.0;
  double gamma = 0.0;  // contact angle atan(u'(c_eff)); pi/2 when truncated vertically
  bool truncated_vertical = false;
  bool bends_down = false;  // some sin psi < 0: f was negative somewhere
  SolveMethod method = SolveMethod::Quadrature;

  std::size_t size() const noexcept { return r.size(); }
  double u_end() const { return u.back(); }
  double du_end() const { return du.back(); }

  // Piecewise cubic Hermite interpolation of u using (u, du) at the nodes.
  double height_at(double radius) const;
};

// 1 - sin psi guard for the vertical-tangent limit.
inline constexpr double kVerticalGuard = 1e-9;

// Double quadrature of the first integral sin psi(r) = (1/r) int_0^r t f(t) dt
// on a uniform grid of `intervals` intervals (rounded up to even), then
// u = u0 + int tan psi. The grid has intervals + 1 nodes unless truncated at
// the vertical tangent.
SolutionGrid solve_radial_quadrature(const Profile& p, double c, double u0,
                                     std::size_t intervals = 2000);

struct IvpOptions {
  double tol = 1e-10;
  // Largest step as a fraction of c; keeps the output grid dense enough for
  // curvature checks and plotting.
  double max_step_fraction = 1.0 / 256.0;
  // Stop where sin psi first reaches this value (c_eff is then that radius).
  std::optional<double> stop_at_sin_psi;
};

// Adaptive Dormand-Prince 5(4) integration of
//   u' = s / sqrt(1 - s^2),   s' = f(r, u, u') - s / r
// from a series start at r = 1e-4 c. Works for every dependence kind.
SolutionGrid solve_ivp(const Profile& p, double c, double u0, const IvpOptions& opts = {});
inline SolutionGrid solve_ivp(const Profile& p, double c, double u0, double tol) {
  IvpOptions o;
  o.tol = tol;
  return solve_ivp(p, c, u0, o);
}

struct ShootResult {
  SolutionGrid grid;
  double u0 = 0.0;
  int iterations = 0;
};

// Bracketed root finding on u0 so that atan(u'(c)) = gamma. Only meaningful
// for profiles that depend on u; radial-only profiles fix gamma themselves.
ShootResult shoot_for_gamma(const Profile& p, double c, double gamma,
                            std::pair<double, double> u0_bracket, double tol = 1e-10);

}  // namespace pmc
