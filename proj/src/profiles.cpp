#include "pmc/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pmc/error.hpp"
#include "pmc/numfmt.hpp"

namespace pmc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Range: return "range";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::UnsupportedDependence: return "unsupported-dependence";
    case ErrorKind::ImmediateTruncation: return "immediate-truncation";
    case ErrorKind::Stiffness: return "stiffness";
    case ErrorKind::DegreesOfFreedom: return "degrees-of-freedom";
    case ErrorKind::Bracket: return "bracket";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::DegenerateSlope: return "degenerate-slope";
    case ErrorKind::Consistency: return "consistency";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

namespace {

constexpr double kAssumptionTol = 1e-12;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct KindName {
  ProfileKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ProfileKind::Constant, "constant"},       {ProfileKind::Linear, "linear"},
    {ProfileKind::Quadratic, "quadratic"},     {ProfileKind::Exponential, "exponential"},
    {ProfileKind::Sine, "sine"},               {ProfileKind::Capillary, "capillary"},
    {ProfileKind::Compressible, "compressible"}, {ProfileKind::CustomRadial, "custom"},
};

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw Error(ErrorKind::InvalidArgument, std::string("profile parameter ") + name + " is not finite");
}

// Natural cubic spline second derivatives (tridiagonal solve).
std::vector<double> spline_moments(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> m(n, 0.0);
  if (n < 3) return m;
  std::vector<double> diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x[i] - x[i - 1];
    const double h1 = x[i + 1] - x[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
  }
  // forward elimination; row i has lower coefficient h_{i-1}
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double lower = (i == 1) ? 0.0 : x[i] - x[i - 1];
    if (i > 1) {
      const double w = lower / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
    if (i == 1) break;
  }
  return m;
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "unknown";
}

std::optional<ProfileKind> parse_profile_kind(std::string_view name) {
  for (const auto& kn : kKindNames)
    if (kn.name == name) return kn.kind;
  if (name == "custom_radial" || name == "customradial") return ProfileKind::CustomRadial;
  return std::nullopt;
}

Profile Profile::constant(double k) {
  require_finite(k, "k");
  Profile p;
  p.kind_ = ProfileKind::Constant;
  p.k_ = k;
  return p;
}

Profile Profile::linear(double a, double b) {
  require_finite(a, "a");
  require_finite(b, "b");
  Profile p;
  p.kind_ = ProfileKind::Linear;
  p.a_ = a;
  p.b_ = b;
  return p;
}

Profile Profile::quadratic(double a, double b) {
  require_finite(a, "a");
  require_finite(b, "b");
  Profile p;
  p.kind_ = ProfileKind::Quadratic;
  p.a_ = a;
  p.b_ = b;
  return p;
}

Profile Profile::exponential(double a) {
  require_finite(a, "a");
  Profile p;
  p.kind_ = ProfileKind::Exponential;
  p.a_ = a;
  return p;
}

Profile Profile::sine() {
  Profile p;
  p.kind_ = ProfileKind::Sine;
  return p;
}

Profile Profile::capillary(double bond) {
  require_finite(bond, "B");
  Profile p;
  p.kind_ = ProfileKind::Capillary;
  p.bond_ = bond;
  return p;
}

Profile Profile::compressible(double a, double b, double c3) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(c3, "c3");
  Profile p;
  p.kind_ = ProfileKind::Compressible;
  p.a_ = a;
  p.b_ = b;
  p.c3_ = c3;
  return p;
}

Profile Profile::custom_radial(std::vector<double> r, std::vector<double> f) {
  if (r.size() != f.size())
    throw Error(ErrorKind::InvalidArgument, "custom profile: r and f tables differ in length");
  if (r.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "custom profile: need at least two points");
  for (std::size_t i = 0; i < r.size(); ++i) {
    require_finite(r[i], "r");
    require_finite(f[i], "f");
    if (i > 0 && !(r[i] > r[i - 1]))
      throw Error(ErrorKind::InvalidArgument, "custom profile: abscissae must be strictly increasing");
  }
  Profile p;
  p.kind_ = ProfileKind::CustomRadial;
  p.table_m_ = spline_moments(r, f);
  p.table_r_ = std::move(r);
  p.table_f_ = std::move(f);
  return p;
}

Dependence Profile::dependence() const noexcept {
  switch (kind_) {
    case ProfileKind::Capillary: return Dependence::HeightDependent;
    case ProfileKind::Compressible: return Dependence::SlopeHeightDependent;
    default: return Dependence::RadialOnly;
  }
}

double Profile::spline_eval(double r) const {
  const auto& x = table_r_;
  const double lo = x.front(), hi = x.back();
  const double slack = 1e-12 * (1.0 + std::abs(hi));
  if (r < lo - slack || r > hi + slack) {
    std::ostringstream os;
    os << "custom profile evaluated at r=" << format_double(r) << " outside table range ["
       << format_double(lo) << ", " << format_double(hi) << "]";
    throw Error(ErrorKind::Range, os.str());
  }
  r = std::clamp(r, lo, hi);
  auto it = std::upper_bound(x.begin(), x.end(), r);
  std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
  if (i + 1 >= x.size()) i = x.size() - 2;
  const double h = x[i + 1] - x[i];
  const double t1 = (x[i + 1] - r) / h;
  const double t2 = (r - x[i]) / h;
  return t1 * table_f_[i] + t2 * table_f_[i + 1] +
         ((t1 * t1 * t1 - t1) * table_m_[i] + (t2 * t2 * t2 - t2) * table_m_[i + 1]) * h * h / 6.0;
}

double Profile::operator()(double r, double u, double du) const {
  if (r < 0.0 || std::isnan(r))
    throw Error(ErrorKind::Range, "profile evaluated at negative radius");
  switch (kind_) {
    case ProfileKind::Constant: return k_;
    case ProfileKind::Linear: return a_ * r + b_;
    case ProfileKind::Quadratic: return a_ * r * r + b_;
    case ProfileKind::Exponential: return a_ * std::exp(r);
    case ProfileKind::Sine: return std::sin(r);
    case ProfileKind::Capillary: return bond_ * u;
    case ProfileKind::Compressible:
      return -a_ / std::sqrt(1.0 + du * du) + b_ * std::exp(a_ * u) + c3_;
    case ProfileKind::CustomRadial: return spline_eval(r);
  }
  return 0.0;
}

std::string Profile::describe() const {
  std::ostringstream os;
  os << to_string(kind_) << "(";
  switch (kind_) {
    case ProfileKind::Constant: os << "k=" << format_double(k_); break;
    case ProfileKind::Linear:
    case ProfileKind::Quadratic:
      os << "a=" << format_double(a_) << ", b=" << format_double(b_);
      break;
    case ProfileKind::Exponential: os << "a=" << format_double(a_); break;
    case ProfileKind::Sine: break;
    case ProfileKind::Capillary: os << "B=" << format_double(bond_); break;
    case ProfileKind::Compressible:
      os << "a=" << format_double(a_) << ", b=" << format_double(b_) << ", c3=" << format_double(c3_);
      break;
    case ProfileKind::CustomRadial: os << table_r_.size() << " points"; break;
  }
  os << ")";
  return os.str();
}

Profile Profile::with_parameter(std::string_view name, double value) const {
  Profile p = *this;
  bool ok = false;
  switch (kind_) {
    case ProfileKind::Constant:
      if (name == "k") { p.k_ = value; ok = true; }
      break;
    case ProfileKind::Linear:
    case ProfileKind::Quadratic:
      if (name == "a") { p.a_ = value; ok = true; }
      if (name == "b") { p.b_ = value; ok = true; }
      break;
    case ProfileKind::Exponential:
      if (name == "a") { p.a_ = value; ok = true; }
      break;
    case ProfileKind::Capillary:
      if (name == "B") { p.bond_ = value; ok = true; }
      break;
    case ProfileKind::Compressible:
      if (name == "a") { p.a_ = value; ok = true; }
      if (name == "b") { p.b_ = value; ok = true; }
      if (name == "c3") { p.c3_ = value; ok = true; }
      break;
    case ProfileKind::Sine:
    case ProfileKind::CustomRadial: break;
  }
  if (!ok)
    throw Error(ErrorKind::Config, std::string("profile ") + std::string(to_string(kind_)) +
                                       " has no scalar parameter '" + std::string(name) + "'");
  require_finite(value, "value");
  return p;
}

ProfileDerivatives profile_derivatives(const Profile& p, double r) {
  if (!p.radial_only())
    throw Error(ErrorKind::UnsupportedDependence,
                "derivatives in r are only defined for radial-only profiles");
  if (r < 0.0) throw Error(ErrorKind::Range, "negative radius");
  switch (p.kind()) {
    case ProfileKind::Constant: return {0.0, 0.0};
    case ProfileKind::Linear: return {p.a(), 0.0};
    case ProfileKind::Quadratic: return {2.0 * p.a() * r, 2.0 * p.a()};
    case ProfileKind::Exponential: {
      const double e = p.a() * std::exp(r);
      return {e, e};
    }
    case ProfileKind::Sine: return {std::cos(r), -std::sin(r)};
    case ProfileKind::CustomRadial: {
      auto x = p.table_r();
      const double lo = x.front(), hi = x.back();
      if (r < lo || r > hi) throw Error(ErrorKind::Range, "radius outside custom table range");
      auto it = std::upper_bound(x.begin(), x.end(), r);
      std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
      if (i + 1 >= x.size()) i = x.size() - 2;
      const double h = std::max(1e-6, (x[i + 1] - x[i]) / 8.0);
      // shift the stencil inward at the table ends
      const double center = (hi - lo > 2.0 * h) ? std::clamp(r, lo + h, hi - h) : 0.5 * (lo + hi);
      const double fm = p(center - h), f0 = p(center), fp = p(center + h);
      return {(fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
    }
    case ProfileKind::Capillary:
    case ProfileKind::Compressible: break;
  }
  return {0.0, 0.0};
}

namespace {

double clause_tol(double scale) { return kAssumptionTol * (1.0 + std::abs(scale)); }

}  // namespace

AssumptionReport check_assumptions(const Profile& p, double c, std::size_t n) {
  if (!p.radial_only())
    throw Error(ErrorKind::UnsupportedDependence,
                "the assumption is stated for f(r); solve first and check along the solution");
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "c must be positive");
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "need at least 3 sample nodes");

  AssumptionReport rep;
  rep.c = c;
  rep.samples = n;
  rep.method = p.kind() == ProfileKind::CustomRadial ? CheckMethod::FiniteDifference
                                                     : CheckMethod::Analytic;
  rep.f0 = p(0.0);
  rep.f0_nonnegative = rep.f0 >= -clause_tol(rep.f0);

  auto node = [&](std::size_t i) { return c * static_cast<double>(i) / static_cast<double>(n - 1); };
  // right end of the sampling cell that contains node i, so witnesses lie in (0, c]
  auto witness = [&](std::size_t i) { return node(std::max<std::size_t>(i, 1)); };

  for (std::size_t i = 0; i < n; ++i) {
    const double r = node(i);
    const double f = p(r);
    const auto d = profile_derivatives(p, r);
    double tol1 = clause_tol(std::abs(f) + std::abs(d.first) + std::abs(d.second));
    double tol2 = tol1;
    if (rep.method == CheckMethod::FiniteDifference) {
      auto x = p.table_r();
      auto it = std::upper_bound(x.begin(), x.end(), r);
      std::size_t j = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
      if (j + 1 >= x.size()) j = x.size() - 2;
      const double h = std::max(1e-6, (x[j + 1] - x[j]) / 8.0);
      tol1 += 4.0 * kEps * (1.0 + std::abs(f)) / h;
      tol2 += 16.0 * kEps * (1.0 + std::abs(f)) / (h * h);
    }
    if (rep.monotone.ok && d.first < -tol1) rep.monotone = {false, witness(i)};
    if (rep.convex.ok && d.second < -tol2) rep.convex = {false, witness(i)};
  }
  return rep;
}

AssumptionReport check_assumptions_sampled(std::span<const double> r, std::span<const double> f) {
  if (r.size() != f.size() || r.size() < 3)
    throw Error(ErrorKind::InvalidArgument, "need at least 3 matching samples");
  AssumptionReport rep;
  rep.c = r.back();
  rep.samples = r.size();
  rep.method = CheckMethod::FiniteDifference;
  rep.f0 = f[0];
  rep.f0_nonnegative = rep.f0 >= -clause_tol(rep.f0);

  double fmax = 0.0;
  double hmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.size(); ++i) {
    fmax = std::max(fmax, std::abs(f[i]));
    if (i > 0) hmin = std::min(hmin, r[i] - r[i - 1]);
  }
  for (std::size_t i = 1; i < r.size(); ++i) {
    const double tol = clause_tol(fmax) + 4.0 * kEps * fmax;
    if (rep.monotone.ok && f[i] - f[i - 1] < -tol) rep.monotone = {false, r[i]};
  }
  const double tol2 = clause_tol(fmax) + 16.0 * kEps * (1.0 + fmax) / (hmin * hmin);
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    const double h0 = r[i] - r[i - 1];
    const double h1 = r[i + 1] - r[i];
    const double dd2 = 2.0 * ((f[i + 1] - f[i]) / h1 - (f[i] - f[i - 1]) / h0) / (h0 + h1);
    if (rep.convex.ok && dd2 < -tol2) rep.convex = {false, r[i]};
  }
  return rep;
}

}  // namespace pmc
