#include <doctest.h>

#include <cmath>
#include <random>

#include "pmc/error.hpp"
#include "pmc/profiles.hpp"
#include "support.hpp"

using namespace pmc;

TEST_SUITE("profiles") {

TEST_CASE("evaluation of the presets") {
  CHECK(eval_profile(Profile::linear(1.0, 0.0), 0.5, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(eval_profile(Profile::sine(), 1.0, 0.0, 0.0) == doctest::Approx(0.8414709848078965).epsilon(1e-15));
  CHECK(eval_profile(Profile::compressible(1.0, 1.0, 0.0), 0.7, 0.0, 0.0) == doctest::Approx(0.0));
  CHECK(eval_profile(Profile::constant(3.0), 10.0, 0.0, 0.0) == 3.0);
  CHECK(eval_profile(Profile::quadratic(2.0, 1.0), 3.0, 0.0, 0.0) == 19.0);
  CHECK(eval_profile(Profile::exponential(2.0), 1.0, 0.0, 0.0) == doctest::Approx(2.0 * std::exp(1.0)));
  CHECK(eval_profile(Profile::capillary(2.0), 0.3, 0.25, 9.0) == 0.5);
  // radial profiles ignore u and du
  CHECK(eval_profile(Profile::linear(1.0, 2.0), 0.5, 7.0, -3.0) == 2.5);
  // compressible with slope: -a/sqrt(1+p^2) + b e^{a u} + c3
  const double v = eval_profile(Profile::compressible(2.0, 0.5, -1.0), 0.0, 0.1, 0.75);
  CHECK(v == doctest::Approx(-2.0 / 1.25 + 0.5 * std::exp(0.2) - 1.0));
}

TEST_CASE("negative radius and table range are range errors") {
  CHECK(kind_of([] { (void)eval_profile(Profile::linear(1, 0), -0.1, 0.0, 0.0); }) == ErrorKind::Range);
  const auto tab = Profile::custom_radial({0.0, 0.5, 1.0}, {1.0, 1.5, 2.5});
  CHECK(kind_of([&] { (void)tab(1.01); }) == ErrorKind::Range);
  CHECK(tab(0.5) == doctest::Approx(1.5));
  CHECK(tab(1.0) == doctest::Approx(2.5));
}

TEST_CASE("custom tables are validated") {
  CHECK(kind_of([] { (void)Profile::custom_radial({0.0}, {1.0}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { (void)Profile::custom_radial({0.0, 0.5, 0.5}, {1, 2, 3}); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { (void)Profile::custom_radial({0.0, 1.0}, {1.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("spline reproduces a linear table exactly") {
  std::vector<double> r, f;
  for (int i = 0; i <= 10; ++i) {
    r.push_back(0.1 * i);
    f.push_back(2.0 * r.back() + 1.0);
  }
  const auto p = Profile::custom_radial(r, f);
  for (double x : {0.0, 0.033, 0.47, 0.999, 1.0}) CHECK(p(x) == doctest::Approx(2.0 * x + 1.0).epsilon(1e-13));
}

TEST_CASE("analytic derivatives") {
  auto d = profile_derivatives(Profile::quadratic(2.0, 1.0), 3.0);
  CHECK(d.first == 12.0);
  CHECK(d.second == 4.0);
  d = profile_derivatives(Profile::sine(), 1.0);
  CHECK(d.first == doctest::Approx(0.5403023058681398));
  CHECK(d.second == doctest::Approx(-0.8414709848078965));
  for (double r : {0.0, 0.3, 17.0}) {
    d = profile_derivatives(Profile::linear(5.0, 7.0), r);
    CHECK(d.first == 5.0);
    CHECK(d.second == 0.0);
  }
  CHECK(kind_of([] { (void)profile_derivatives(Profile::capillary(1.0), 0.2); }) ==
        ErrorKind::UnsupportedDependence);
  CHECK(kind_of([] { (void)profile_derivatives(Profile::compressible(1, 1, 0), 0.2); }) ==
        ErrorKind::UnsupportedDependence);
}

TEST_CASE("analytic derivatives agree with centered differences at random radii") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> pr(0.0, 2.0), pc(0.2, 1.5);
  for (int family = 0; family < 5; ++family) {
    for (int trial = 0; trial < 4; ++trial) {
      Profile p = Profile::constant(pr(rng));
      switch (family) {
        case 1: p = Profile::linear(pr(rng), pr(rng)); break;
        case 2: p = Profile::quadratic(pr(rng), pr(rng)); break;
        case 3: p = Profile::exponential(pr(rng)); break;
        case 4: p = Profile::sine(); break;
        default: break;
      }
      const double c = pc(rng);
      std::uniform_real_distribution<double> rr(0.0, c);
      for (int i = 0; i < 100; ++i) {
        const double r = rr(rng);
        const auto d = profile_derivatives(p, r);
        const double h1 = std::min(1e-5, r), h2 = 1e-3;
        const double fd1 = (p(r + h1) - p(r - h1)) / (2.0 * h1);
        const double fd2 = (p(r + 2 * h2) - 2.0 * p(r + h2) + p(r)) / (h2 * h2);
        // the forward second difference sits at r + h2; compare there
        const auto d2 = profile_derivatives(p, r + h2);
        INFO(p.describe(), " r=", r);
        CHECK(std::abs(fd1 - d.first) <= 1e-6 * std::max(1.0, std::abs(d.first)));
        CHECK(std::abs(fd2 - d2.second) <= 1e-6 * std::max(1.0, std::abs(d2.second)));
      }
    }
  }
}

TEST_CASE("finite-difference derivatives for tables") {
  std::vector<double> r, f;
  for (int i = 0; i <= 200; ++i) {
    r.push_back(0.01 * i);
    f.push_back(std::exp(r.back()));
  }
  const auto p = Profile::custom_radial(r, f);
  for (double x : {0.0, 0.5, 1.0, 1.7, 2.0}) {
    const auto d = profile_derivatives(p, x);
    // natural spline: f'' forced to 0 at the ends, so only the interior is tight
    if (x > 0.1 && x < 1.9) {
      CHECK(d.first == doctest::Approx(std::exp(x)).epsilon(1e-5));
      CHECK(d.second == doctest::Approx(std::exp(x)).epsilon(1e-3));
    }
  }
}

TEST_CASE("assumption checks: paper examples") {
  auto rep = check_assumptions(Profile::linear(1.0, 0.0), 1.0, 1001);
  CHECK(rep.f0_nonnegative);
  CHECK(rep.monotone.ok);
  CHECK(rep.convex.ok);
  CHECK(rep.all_ok());

  rep = check_assumptions(Profile::sine(), 1.2, 1001);
  CHECK(rep.f0_nonnegative);
  CHECK(rep.monotone.ok);
  CHECK_FALSE(rep.convex.ok);
  REQUIRE(rep.convex.witness);
  CHECK(*rep.convex.witness > 0.0);
  CHECK(*rep.convex.witness <= 1.2);

  rep = check_assumptions(Profile::quadratic(1.0, -1.0), 1.0, 1001);
  CHECK_FALSE(rep.f0_nonnegative);
  CHECK(rep.f0 == -1.0);
  CHECK_FALSE(rep.all_ok());

  rep = check_assumptions(Profile::linear(-1.0, 2.0), 1.0, 101);
  CHECK_FALSE(rep.monotone.ok);
  REQUIRE(rep.monotone.witness);
  CHECK(*rep.monotone.witness > 0.0);

  CHECK(kind_of([] { (void)check_assumptions(Profile::capillary(1.0), 1.0, 101); }) ==
        ErrorKind::UnsupportedDependence);
  CHECK(kind_of([] { (void)check_assumptions(Profile::linear(1, 0), 1.0, 2); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { (void)check_assumptions(Profile::linear(1, 0), 0.0, 11); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("nonnegative preset families satisfy the assumption") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> par(0.0, 3.0), pc(0.1, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double c = pc(rng);
    for (const Profile& p : {Profile::constant(par(rng)), Profile::linear(par(rng), par(rng)),
                             Profile::quadratic(par(rng), par(rng)), Profile::exponential(par(rng))}) {
      INFO(p.describe(), " c=", c);
      CHECK(check_assumptions(p, c, 257).all_ok());
    }
  }
}

TEST_CASE("assumption verdict is monotone in c at fixed sampling density") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> par(-1.0, 2.0), pc(0.2, 3.0), frac(0.05, 1.0);
  const double density = 400.0;  // samples per unit length
  int passes = 0;
  for (int i = 0; i < 300; ++i) {
    Profile p = Profile::sine();
    switch (i % 4) {
      case 0: p = Profile::linear(par(rng), par(rng)); break;
      case 1: p = Profile::quadratic(par(rng), par(rng)); break;
      case 2: p = Profile::exponential(par(rng)); break;
      default: break;
    }
    const double c = pc(rng);
    const auto n_for = [&](double len) { return static_cast<std::size_t>(std::ceil(len * density)) + 1; };
    if (!check_assumptions(p, c, n_for(c)).all_ok()) continue;
    ++passes;
    const double c2 = c * frac(rng);
    INFO(p.describe(), " c=", c, " c'=", c2);
    CHECK(check_assumptions(p, c2, n_for(c2)).all_ok());
  }
  CHECK(passes > 30);
}

TEST_CASE("sampled assumption check on nonuniform data") {
  std::vector<double> r, f;
  for (int i = 0; i <= 50; ++i) {
    const double x = std::pow(i / 50.0, 1.5);
    r.push_back(x);
    f.push_back(1.0 + x * x);
  }
  auto rep = check_assumptions_sampled(r, f);
  CHECK(rep.all_ok());
  for (auto& v : f) v = std::sqrt(v);  // sqrt(1 + r^2): still increasing and convex
  CHECK(check_assumptions_sampled(r, f).all_ok());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(2.0 * r[i]);
  rep = check_assumptions_sampled(r, f);
  CHECK_FALSE(rep.convex.ok);
}

TEST_CASE("names and parameters") {
  for (auto k : {ProfileKind::Constant, ProfileKind::Linear, ProfileKind::Quadratic, ProfileKind::Exponential,
                 ProfileKind::Sine, ProfileKind::Capillary, ProfileKind::Compressible,
                 ProfileKind::CustomRadial}) {
    const auto back = parse_profile_kind(to_string(k));
    REQUIRE(back);
    CHECK(*back == k);
  }
  CHECK_FALSE(parse_profile_kind("cubic"));
  CHECK(Profile::linear(1, 0).describe() == "linear(a=1, b=0)");
  const auto q = Profile::capillary(1.0).with_parameter("B", 2.5);
  CHECK(q.bond() == 2.5);
  CHECK(Profile::linear(1, 0).with_parameter("b", 4).b() == 4.0);
  CHECK(kind_of([] { (void)Profile::linear(1, 0).with_parameter("k", 1); }) == ErrorKind::Config);
  CHECK(Profile::capillary(1.0).dependence() == Dependence::HeightDependent);
  CHECK(Profile::compressible(1, 1, 0).dependence() == Dependence::SlopeHeightDependent);
  CHECK(Profile::sine().radial_only());
}

}  // TEST_SUITE
