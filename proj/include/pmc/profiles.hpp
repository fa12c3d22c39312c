#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmc {

enum class ProfileKind {
  Constant,
  Linear,
  Quadratic,
  Exponential,
  Sine,
  Capillary,
  Compressible,
  CustomRadial,
};

enum class Dependence { RadialOnly, HeightDependent, SlopeHeightDependent };

std::string_view to_string(ProfileKind kind);
std::optional<ProfileKind> parse_profile_kind(std::string_view name);

// Prescribed mean-curvature function f(r, u, u') for the radial equation
//   (1/r) (r u' / sqrt(1 + u'^2))' = f.
// Immutable once built; construct through the named factories.
class Profile {
public:
  static Profile constant(double k);
  static Profile linear(double a, double b);       // a r + b
  static Profile quadratic(double a, double b);    // a r^2 + b
  static Profile exponential(double a);            // a e^r
  static Profile sine();                           // sin r
  static Profile capillary(double bond);           // B u
  static Profile compressible(double a, double b, double c3);  // -a/sqrt(1+u'^2) + b e^{a u} + c3
  // Tabulated f(r); interpolated by a natural cubic spline. Abscissae must be
  // strictly increasing and there must be at least two points.
  static Profile custom_radial(std::vector<double> r, std::vector<double> f);

  ProfileKind kind() const noexcept { return kind_; }
  Dependence dependence() const noexcept;
  bool radial_only() const noexcept { return dependence() == Dependence::RadialOnly; }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double k() const noexcept { return k_; }
  double bond() const noexcept { return bond_; }
  double c3() const noexcept { return c3_; }
  std::span<const double> table_r() const noexcept { return table_r_; }
  std::span<const double> table_f() const noexcept { return table_f_; }

  // Throws Error{Range} for negative r or r outside a custom table.
  double operator()(double r, double u = 0.0, double du = 0.0) const;

  // Human-readable parameter summary, e.g. "linear(a=1, b=0)".
  std::string describe() const;

  // Copy with one named scalar parameter replaced ("k", "a", "b", "B", "c3").
  // Throws Error{Config} if the name does not belong to this kind.
  Profile with_parameter(std::string_view name, double value) const;

private:
  Profile() = default;

  double spline_eval(double r) const;

  ProfileKind kind_ = ProfileKind::Constant;
  double a_ = 0.0;
  double b_ = 0.0;
  double k_ = 0.0;
  double bond_ = 0.0;
  double c3_ = 0.0;
  std::vector<double> table_r_;
  std::vector<double> table_f_;
  std::vector<double> table_m_;  // spline second derivatives
};

inline double eval_profile(const Profile& p, double r, double u, double du) {
  return p(r, u, du);
}

struct ProfileDerivatives {
  double first = 0.0;
  double second = 0.0;
};

// Analytic f', f'' for the closed-form presets; centered finite differences
// with h = max(1e-6, local spacing / 8) for tabulated profiles.
// Throws Error{UnsupportedDependence} for height- or slope-dependent profiles.
ProfileDerivatives profile_derivatives(const Profile& p, double r);

enum class CheckMethod { Analytic, FiniteDifference };

struct ClauseVerdict {
  bool ok = true;
  std::optional<double> witness;  // first violating r, always in (0, c]
};

struct AssumptionReport {
  bool f0_nonnegative = true;
  double f0 = 0.0;
  ClauseVerdict monotone;
  ClauseVerdict convex;
  double c = 0.0;
  std::size_t samples = 0;
  CheckMethod method = CheckMethod::Analytic;

  bool all_ok() const noexcept { return f0_nonnegative && monotone.ok && convex.ok; }
};

// Samples n equispaced nodes on [0, c]. A clause passes when its quantity is
// >= -1e-12 (1 + |scale|); finite-difference checks widen this by the
// rounding floor of the difference quotient.
AssumptionReport check_assumptions(const Profile& p, double c, std::size_t n);

// Same clauses on arbitrary (possibly nonuniform) samples r_i, f_i with
// r_0 = 0. Used for profiles whose f depends on the solution.
AssumptionReport check_assumptions_sampled(std::span<const double> r,
                                           std::span<const double> f);

}  // namespace pmc
