#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <vector>

#include "pmc/kernels.hpp"

using namespace pmc::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference values") {
  const KernelTable& s = scalar_table();
  CHECK(s.isa == Isa::Scalar);
  const double sin_in[] = {0.0, 0.6, -0.6};
  double p[3];
  s.slope_from_sine(sin_in, p, 3);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == doctest::Approx(0.75));
  CHECK(p[2] == doctest::Approx(-0.75));

  const double r[] = {1.0, 2.0};
  double z[2];
  s.circle_heights(2.0, 2.0, r, z, 2);
  CHECK(z[0] == doctest::Approx(2.0 - std::sqrt(3.0)));
  CHECK(z[1] == 2.0);

  // Simpson pieces of g = x^3 on [0, 3] with h = 1
  const double g[] = {0.0, 1.0, 8.0, 27.0};
  double full[1], half[1];
  s.simpson_panels(g, 1.0, full, half, 1);
  CHECK(full[0] == doctest::Approx(4.0));  // int_0^2 x^3
  // m = 1 has no half slot; m = 2 does
  const double g2[] = {0.0, 1.0, 8.0, 27.0, 64.0};
  double full2[2], half2[1];
  s.simpson_panels(g2, 1.0, full2, half2, 2);
  CHECK(half2[0] == doctest::Approx(0.25));  // int_0^1 x^3
  CHECK(full2[1] == doctest::Approx(60.0));  // int_2^4 x^3

  const double x[] = {3.0, -1.0, 2.0, -7.5, 4.0};
  CHECK(s.min_value(x, 5) == -7.5);
}

TEST_CASE("AVX2 variants are bit-identical to the scalar reference") {
  const KernelTable* v = avx2_table();
  if (!v) {
    MESSAGE("AVX2 not available on this CPU/build; equivalence not exercised");
    return;
  }
  const KernelTable& s = scalar_table();
  CHECK(v->isa == Isa::Avx2);
  std::mt19937_64 rng(1234);
  for (std::size_t n = 0; n <= 67; ++n) {
    INFO("n = ", n);
    const auto sine = uniform(rng, n, -0.999, 0.999);
    const auto r = uniform(rng, n, 1e-6, 2.0);
    const auto f = uniform(rng, n, -3.0, 5.0);
    const auto a = uniform(rng, n, -1e3, 1e3);
    std::vector<double> o1(n), o2(n);

    s.slope_from_sine(sine.data(), o1.data(), n);
    v->slope_from_sine(sine.data(), o2.data(), n);
    CHECK(same_bits(o1, o2));

    s.curvature_from_sine(r.data(), f.data(), sine.data(), o1.data(), n);
    v->curvature_from_sine(r.data(), f.data(), sine.data(), o2.data(), n);
    CHECK(same_bits(o1, o2));

    s.circle_heights(2.5, 3.1, r.data(), o1.data(), n);
    v->circle_heights(2.5, 3.1, r.data(), o2.data(), n);
    CHECK(same_bits(o1, o2));

    s.difference(a.data(), f.data(), o1.data(), n);
    v->difference(a.data(), f.data(), o2.data(), n);
    CHECK(same_bits(o1, o2));

    s.multiply(a.data(), r.data(), o1.data(), n);
    v->multiply(a.data(), r.data(), o2.data(), n);
    CHECK(same_bits(o1, o2));

    if (n >= 1) {
      const double m1 = s.min_value(a.data(), n);
      const double m2 = v->min_value(a.data(), n);
      CHECK(std::memcmp(&m1, &m2, sizeof m1) == 0);
    }
  }
  for (std::size_t m = 1; m <= 40; ++m) {
    INFO("panels = ", m);
    const auto g = uniform(rng, 2 * m + 1, -2.0, 2.0);
    std::vector<double> f1(m), f2(m), h1(m - 1), h2(m - 1);
    s.simpson_panels(g.data(), 0.013, f1.data(), h1.data(), m);
    v->simpson_panels(g.data(), 0.013, f2.data(), h2.data(), m);
    CHECK(same_bits(f1, f2));
    CHECK(same_bits(h1, h2));
  }
}

TEST_CASE("min_value finds the minimum in any lane position") {
  for (const KernelTable* t : {&scalar_table(), avx2_table()}) {
    if (!t) continue;
    for (std::size_t n = 1; n <= 19; ++n)
      for (std::size_t at = 0; at < n; ++at) {
        std::vector<double> x(n, 1.0);
        x[at] = -2.0;
        CHECK(t->min_value(x.data(), n) == -2.0);
      }
  }
}

TEST_CASE("dispatch honours forcing") {
  force_isa(Isa::Scalar);
  CHECK(active().isa == Isa::Scalar);
  if (avx2_table()) {
    force_isa(Isa::Avx2);
    CHECK(active().isa == Isa::Avx2);
  }
  clear_forced_isa();
  CHECK(std::string(to_string(active().isa)).size() > 0);
}

TEST_CASE("span wrappers check sizes") {
  std::vector<double> a(5, 1.0), b(4, 1.0), out(5);
  CHECK_THROWS_AS(difference(a, b, out), std::invalid_argument);
  CHECK_THROWS_AS(min_value(std::span<const double>()), std::invalid_argument);
  std::vector<double> g(9), full(4), half(2);
  CHECK_THROWS_AS(simpson_panels(g, 0.1, full, half), std::invalid_argument);
  half.resize(3);
  CHECK_NOTHROW(simpson_panels(g, 0.1, full, half));
}

}  // TEST_SUITE
