#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "pmc/solver.hpp"
#include "support.hpp"

using namespace pmc;

namespace {

void check_grid_invariants(const SolutionGrid& g, const Profile& p) {
  REQUIRE(g.size() >= 3);
  CHECK(g.r[0] == 0.0);
  CHECK(g.du[0] == 0.0);
  CHECK(g.sin_psi[0] == 0.0);
  CHECK(g.u[0] == g.u0);
  CHECK(g.kappa[0] == doctest::Approx(p(0.0, g.u0, 0.0) / 2.0).epsilon(1e-8));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double p_i = g.du[i];
    CHECK(std::abs(g.sin_psi[i] - p_i / std::sqrt(1.0 + p_i * p_i)) <= 1e-12);
    if (i) {
      CHECK(g.r[i] > g.r[i - 1]);
      CHECK(g.u[i] >= g.u[i - 1]);
      CHECK(g.sin_psi[i] > 0.0);
      CHECK(g.sin_psi[i] < 1.0);
    }
  }
}

double max_abs_diff_u(const SolutionGrid& coarse, const SolutionGrid& dense) {
  double worst = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i)
    worst = std::max(worst, std::abs(coarse.u[i] - dense.height_at(coarse.r[i])));
  return worst;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("constant curvature gives the circular arc") {
  const auto p = Profile::constant(1.0);
  const auto g = solve_radial_quadrature(p, 1.0, 0.0, 2000);
  REQUIRE(g.size() == 2001);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(g.u[i] - (2.0 - std::sqrt(4.0 - g.r[i] * g.r[i]))));
  CHECK(worst <= 1e-8);
  CHECK(std::abs(g.gamma - std::numbers::pi / 6.0) <= 1e-9);
  CHECK_FALSE(g.truncated_vertical);
  CHECK(g.method == SolveMethod::Quadrature);
  check_grid_invariants(g, p);
  for (double k : g.kappa) CHECK(k == doctest::Approx(0.5).epsilon(1e-12));

  const auto gi = solve_ivp(p, 1.0, 0.0, 1e-10);
  worst = 0.0;
  for (std::size_t i = 0; i < gi.size(); ++i)
    worst = std::max(worst, std::abs(gi.u[i] - (2.0 - std::sqrt(4.0 - gi.r[i] * gi.r[i]))));
  CHECK(worst <= 1e-8);
  CHECK(gi.method == SolveMethod::Ivp);
  CHECK(gi.r.back() == 1.0);
}

TEST_CASE("linear profile closed forms") {
  const auto p = Profile::linear(1.0, 0.0);
  const auto g = solve_radial_quadrature(p, 1.0, 0.0);
  CHECK(std::abs(g.sin_psi.back() - 1.0 / 3.0) <= 1e-10);
  CHECK(std::abs(g.u.back() - oracle::linear_u1()) <= 1e-6);
  CHECK(std::abs(g.u.back() - oracle::linear_u1()) <= 1e-11);  // far tighter in practice
  check_grid_invariants(g, p);
  // sin psi = r^2/3 exactly for Simpson
  for (std::size_t i = 0; i < g.size(); i += 97) CHECK(g.sin_psi[i] == doctest::Approx(g.r[i] * g.r[i] / 3.0));
}

TEST_CASE("sine profile matches the closed-form first integral") {
  const auto g = solve_radial_quadrature(Profile::sine(), 1.2, 0.0, 2400);
  double worst = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double r = g.r[i];
    worst = std::max(worst, std::abs(g.sin_psi[i] - (std::sin(r) / r - std::cos(r))));
  }
  CHECK(worst <= 1e-8);
  REQUIRE(g.r[2000] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(g.sin_psi[2000] - 0.301169) <= 1e-6);
}

TEST_CASE("first-integral residual against an independent Gauss-Legendre oracle") {
  for (const Profile& p : {Profile::linear(1.3, 0.2), Profile::quadratic(2.0, 0.5), Profile::exponential(0.7),
                           Profile::sine(), Profile::constant(0.9)}) {
    const double c = 1.1;
    const auto g = solve_radial_quadrature(p, c, 0.25, 2000);
    double worst = 0.0;
    for (std::size_t i = 1; i < g.size(); i += 3) {
      const double r = g.r[i];
      const double q = oracle::integrate([&](double t) { return t * p(t); }, 0.0, r, 2) / r;
      worst = std::max(worst, std::abs(g.sin_psi[i] - q));
    }
    INFO(p.describe());
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("curvature identity: centered differences of sin psi converge at second order") {
  const auto p = Profile::exponential(1.0);
  const double c = 1.0;
  auto err_at = [&](std::size_t n) {
    const auto g = solve_radial_quadrature(p, c, 0.0, n);
    const double h = g.r[1] - g.r[0];
    double worst = 0.0;
    for (double frac : {0.25, 0.5, 0.75}) {
      const auto i = static_cast<std::size_t>(std::llround(frac * static_cast<double>(n)));
      const double diff = (g.sin_psi[i + 1] - g.sin_psi[i - 1]) / (2.0 * h);
      worst = std::max(worst, std::abs(diff - g.kappa[i]));
    }
    return worst;
  };
  const double e1 = err_at(64), e2 = err_at(128), e3 = err_at(256);
  const double o1 = std::log2(e1 / e2), o2 = std::log2(e2 / e3);
  MESSAGE("observed orders ", o1, " ", o2);
  CHECK(o1 >= 1.9);
  CHECK(o2 >= 1.9);
}

TEST_CASE("quadrature and IVP agree on radial profiles") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> par(0.0, 1.5), pc(0.2, 1.0), pu(0.0, 1.0);
  for (int i = 0; i < 12; ++i) {
    Profile p = Profile::exponential(par(rng));
    if (i % 3 == 0) p = Profile::linear(par(rng), par(rng));
    if (i % 3 == 1) p = Profile::quadratic(par(rng), par(rng));
    const double c = pc(rng), u0 = pu(rng);
    const auto q = solve_radial_quadrature(p, c, u0, 4000);
    for (double tol : {1e-10, 1e-8}) {
      const auto v = solve_ivp(p, c, u0, tol);
      INFO(p.describe(), " c=", c, " tol=", tol);
      REQUIRE_FALSE(q.truncated_vertical);
      CHECK(max_abs_diff_u(v, q) <= 10.0 * tol);
      CHECK(std::abs(v.gamma - q.gamma) <= 1e-7);
    }
  }
}

TEST_CASE("vertical tangent truncation") {
  const auto p = Profile::constant(2.5);  // R = 0.8 < c
  const auto q = solve_radial_quadrature(p, 1.0, 0.0, 2000);
  CHECK(q.truncated_vertical);
  CHECK(q.gamma == std::numbers::pi / 2.0);
  CHECK(q.c_eff < 0.8);
  CHECK(q.c_eff > 0.79);
  CHECK(q.c_requested == 1.0);
  const auto v = solve_ivp(p, 1.0, 0.0, 1e-10);
  CHECK(v.truncated_vertical);
  CHECK(v.c_eff == doctest::Approx(0.8).epsilon(1e-6));
  CHECK(v.sin_psi.back() >= 1.0 - 2.0 * kVerticalGuard);
}

TEST_CASE("immediate truncation and argument errors") {
  CHECK(kind_of([] { (void)solve_radial_quadrature(Profile::constant(1e4), 1.0, 0.0, 16); }) ==
        ErrorKind::ImmediateTruncation);
  CHECK(kind_of([] { (void)solve_radial_quadrature(Profile::capillary(1.0), 1.0, 0.0); }) ==
        ErrorKind::UnsupportedDependence);
  CHECK(kind_of([] { (void)solve_radial_quadrature(Profile::linear(1, 0), 0.0, 0.0); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { (void)solve_ivp(Profile::linear(1, 0), 1.0, 0.0, 1e-3); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { (void)solve_ivp(Profile::linear(1, 0), 1.0, 0.0, 1e-13); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("odd interval counts are rounded up to even") {
  const auto g = solve_radial_quadrature(Profile::linear(1, 0), 1.0, 0.0, 101);
  CHECK(g.size() == 103);
}

TEST_CASE("negative f bends the profile down without error") {
  const auto g = solve_radial_quadrature(Profile::linear(-1.0, 0.0), 1.0, 0.0);
  CHECK(g.bends_down);
  CHECK(g.du.back() < 0.0);
  CHECK(g.gamma < 0.0);
}

TEST_CASE("capillary: curvature exceeds B u0 / 2 up to sin psi = 1/2") {
  IvpOptions o;
  o.tol = 1e-10;
  o.stop_at_sin_psi = 0.5;
  const auto g = solve_ivp(Profile::capillary(1.0), 10.0, 0.5, o);
  CHECK(std::abs(g.sin_psi.back() - 0.5) <= 1e-12);
  CHECK(g.c_eff < 10.0);
  // kappa(0) = f(0)/2 = B u0 / 2 exactly; the strict bound holds for r > 0
  CHECK(g.kappa[0] == doctest::Approx(0.25).epsilon(1e-14));
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.kappa[i] > 0.25);
  check_grid_invariants(g, Profile::capillary(1.0));
}

TEST_CASE("shooting recovers the forward u0") {
  const auto p = Profile::capillary(1.0);
  const auto fwd = solve_ivp(p, 0.5, 0.5, 1e-10);
  const auto shot = shoot_for_gamma(p, 0.5, fwd.gamma, {0.25, 1.0});
  CHECK(std::abs(shot.u0 - 0.5) <= 1e-6);
  CHECK(std::abs(shot.grid.gamma - fwd.gamma) <= 1e-10);
  CHECK(shot.iterations > 0);
  CHECK(shot.iterations <= 200);
}

TEST_CASE("shooting for a flat contact angle gives the flat solution") {
  const auto shot = shoot_for_gamma(Profile::capillary(1.0), 0.5, 0.0, {0.0, 1.0});
  CHECK(std::abs(shot.u0) <= 1e-6);
  CHECK(std::abs(shot.grid.gamma) <= 1e-10);
}

TEST_CASE("shooting error paths") {
  const auto cap = Profile::capillary(1.0);
  CHECK(kind_of([] { (void)shoot_for_gamma(Profile::linear(1, 0), 1.0, 0.2, {0.0, 1.0}); }) ==
        ErrorKind::DegreesOfFreedom);
  CHECK(kind_of([&] { (void)shoot_for_gamma(cap, 0.5, std::numbers::pi / 2.0, {0.0, 1.0}); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { (void)shoot_for_gamma(cap, 0.5, -0.1, {0.0, 1.0}); }) == ErrorKind::InvalidArgument);
  // gamma(u0) on [2, 3] stays well above 0.1
  CHECK(kind_of([&] { (void)shoot_for_gamma(cap, 0.5, 0.1, {2.0, 3.0}); }) == ErrorKind::Bracket);
}

TEST_CASE("solves are deterministic") {
  const auto p = Profile::quadratic(1.0, 1.0);
  const auto a = solve_radial_quadrature(p, 0.8, 0.1), b = solve_radial_quadrature(p, 0.8, 0.1);
  CHECK(std::memcmp(a.u.data(), b.u.data(), a.u.size() * sizeof(double)) == 0);
  const auto c = solve_ivp(Profile::capillary(2.0), 0.5, 0.3), d = solve_ivp(Profile::capillary(2.0), 0.5, 0.3);
  REQUIRE(c.size() == d.size());
  CHECK(std::memcmp(c.u.data(), d.u.data(), c.u.size() * sizeof(double)) == 0);
}

TEST_CASE("Hermite interpolation of the grid") {
  const auto g = solve_radial_quadrature(Profile::constant(1.0), 1.0, 0.0, 200);
  for (double r : {0.0, 0.0123, 0.5, 0.77777, 1.0})
    CHECK(std::abs(g.height_at(r) - (2.0 - std::sqrt(4.0 - r * r))) <= 1e-10);
  CHECK(kind_of([&] { (void)g.height_at(1.5); }) == ErrorKind::Range);
}

}  // TEST_SUITE
