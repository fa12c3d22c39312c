#include "pmc/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pmc/error.hpp"
#include "pmc/kernels.hpp"
#include "pmc/numfmt.hpp"
#include "pmc/quadrature.hpp"

namespace pmc {

const char* to_string(SolveMethod m) {
  return m == SolveMethod::Quadrature ? "quadrature" : "ivp";
}

double SolutionGrid::height_at(double radius) const {
  if (r.empty()) throw Error(ErrorKind::Range, "empty grid");
  const double slack = 1e-12 * (1.0 + std::abs(c_eff));
  if (radius < -slack || radius > r.back() + slack)
    throw Error(ErrorKind::Range, "radius " + format_double(radius) + " outside grid");
  radius = std::clamp(radius, 0.0, r.back());
  auto it = std::upper_bound(r.begin(), r.end(), radius);
  std::size_t i = (it == r.begin()) ? 0 : static_cast<std::size_t>(it - r.begin()) - 1;
  if (i + 1 >= r.size()) return u.back();
  const double h = r[i + 1] - r[i];
  const double t = (radius - r[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * u[i] + h10 * h * du[i] + h01 * u[i + 1] + h11 * h * du[i + 1];
}

namespace {

void require_endpoint(double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw Error(ErrorKind::InvalidArgument, "endpoint c must be positive and finite");
}

bool past_vertical(double s) { return std::abs(s) >= 1.0 - kVerticalGuard; }

}  // namespace

namespace {

// Near a vertical tangent tan psi blows up like (r* - r)^(-1/2) and Simpson
// on it loses several digits. Where sin psi is large and rising we integrate
// du = d(-cos psi) / kappa instead: 1/kappa is smooth in -cos psi (and
// constant on a circle), so a local cubic in that variable is accurate.
void redo_steep_tail(const std::vector<double>& s, const std::vector<double>& kappa, std::vector<double>& u) {
  constexpr double kSteep = 0.9;
  const std::size_t m = s.size();
  std::size_t j0 = m;
  while (j0 > 1 && s[j0 - 1] >= kSteep && kappa[j0 - 1] > 0.0) --j0;
  if (m - j0 < 2) return;
  std::vector<double> phi(m);
  for (std::size_t i = j0; i < m; ++i) phi[i] = -std::sqrt((1.0 - s[i]) * (1.0 + s[i]));
  for (std::size_t i = j0 + 1; i < m; ++i)
    if (!(phi[i] > phi[i - 1])) return;

  // 3-point Gauss-Legendre on [-1, 1]; exact for the cubic interpolant
  const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const std::size_t width = std::min<std::size_t>(4, m - j0);
  for (std::size_t i = j0; i + 1 < m; ++i) {
    std::size_t a = i > j0 ? i - 1 : j0;
    if (a + width > m) a = m - width;
    const double lo = phi[i], hi = phi[i + 1];
    double sum = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[q];
      double val = 0.0;
      for (std::size_t k = a; k < a + width; ++k) {
        double basis = 1.0;
        for (std::size_t l = a; l < a + width; ++l)
          if (l != k) basis *= (x - phi[l]) / (phi[k] - phi[l]);
        val += basis / kappa[k];
      }
      sum += gw[q] * val;
    }
    u[i + 1] = u[i] + 0.5 * (hi - lo) * sum;
  }
}

}  // namespace

SolutionGrid solve_radial_quadrature(const Profile& p, double c, double u0, std::size_t intervals) {
  require_endpoint(c);
  if (!p.radial_only())
    throw Error(ErrorKind::UnsupportedDependence,
                "quadrature needs f = f(r); use solve_ivp for " + std::string(to_string(p.kind())));
  if (intervals < 16) throw Error(ErrorKind::InvalidArgument, "need at least 16 intervals");
  if (!std::isfinite(u0)) throw Error(ErrorKind::InvalidArgument, "u0 must be finite");
  const std::size_t n = intervals + (intervals % 2);
  const double h = c / static_cast<double>(n);

  std::vector<double> r(n + 1), f(n + 1), g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    r[i] = c * static_cast<double>(i) / static_cast<double>(n);
    f[i] = p(r[i]);
  }
  kernels::multiply(r, f, g);
  const std::vector<double> moment = cumulative_simpson(g, h);

  std::vector<double> s(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) s[i] = moment[i] / r[i];

  std::size_t keep = n + 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (past_vertical(s[i])) {
      keep = i;
      break;
    }
  }
  SolutionGrid grid;
  grid.method = SolveMethod::Quadrature;
  grid.u0 = u0;
  grid.c_requested = c;
  if (keep < n + 1) {
    if (keep < 4)
      throw Error(ErrorKind::ImmediateTruncation,
                  "sin psi reaches 1 at the first interior nodes; f too large for a graph on this grid");
    grid.truncated_vertical = true;
    r.resize(keep);
    f.resize(keep);
    s.resize(keep);
  }
  const std::size_t m = r.size();

  std::vector<double> slope(m);
  kernels::slope_from_sine(s, slope);
  std::vector<double> rise = cumulative_simpson(slope, h);
  for (double& v : rise) v += u0;

  std::vector<double> kappa(m);
  kappa[0] = 0.5 * f[0];
  kernels::curvature_from_sine(std::span<const double>(r).subspan(1),
                               std::span<const double>(f).subspan(1),
                               std::span<const double>(s).subspan(1),
                               std::span<double>(kappa).subspan(1));
  redo_steep_tail(s, kappa, rise);

  grid.bends_down = std::any_of(s.begin(), s.end(), [](double v) { return v < 0.0; });
  grid.c_eff = r.back();
  grid.r = std::move(r);
  grid.u = std::move(rise);
  grid.du = std::move(slope);
  grid.sin_psi = std::move(s);
  grid.kappa = std::move(kappa);
  if (grid.truncated_vertical)
    grid.gamma = std::copysign(std::numbers::pi / 2.0, grid.sin_psi.back());
  else
    grid.gamma = std::atan(grid.du.back());
  return grid;
}

// ---------------------------------------------------------------------------
// Adaptive integrator

namespace {

using State = std::array<double, 2>;  // (u, s)

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct RadialSystem {
  const Profile& profile;

  State operator()(double r, const State& y) const {
    const double s = y[1];
    if (!(std::abs(s) < 1.0)) return {std::numeric_limits<double>::quiet_NaN(),
                                      std::numeric_limits<double>::quiet_NaN()};
    const double slope = s / std::sqrt(1.0 - s * s);
    return {slope, profile(r, y[0], slope) - s / r};
  }
};

struct Trial {
  State y{};
  double err = 0.0;  // scaled max-norm, NaN/inf if a stage was undefined
  bool valid = false;
};

Trial dp45_step(const RadialSystem& sys, double r, const State& y, const State& k1, double h,
                double tol) {
  auto axpy = [](const State& base, std::initializer_list<std::pair<double, const State*>> terms,
                 double hh) {
    State out = base;
    for (const auto& [w, k] : terms)
      for (int i = 0; i < 2; ++i) out[i] += hh * w * (*k)[i];
    return out;
  };
  Trial t;
  const State k2 = sys(r + c2 * h, axpy(y, {{a21, &k1}}, h));
  const State k3 = sys(r + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
  const State k4 = sys(r + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
  const State k5 = sys(r + c5 * h, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
  const State k6 =
      sys(r + h, axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
  t.y = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
  const State k7 = sys(r + h, t.y);
  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double scale = tol + tol * std::max(std::abs(y[i]), std::abs(t.y[i]));
    err = std::max(err, std::abs(e) / scale);
  }
  t.err = err;
  t.valid = std::isfinite(err) && std::isfinite(t.y[0]) && std::isfinite(t.y[1]) &&
            std::abs(t.y[1]) < 1.0;
  if (!t.valid) t.err = std::numeric_limits<double>::infinity();
  return t;
}

double grow_factor(double err) {
  if (err == 0.0) return 5.0;
  return std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
}

// Which terminal condition a trial step runs into.
enum class Event { None, Vertical, Stop };

}  // namespace

SolutionGrid solve_ivp(const Profile& p, double c, double u0, const IvpOptions& opts) {
  require_endpoint(c);
  if (!(opts.tol >= 1e-12 && opts.tol <= 1e-4))
    throw Error(ErrorKind::InvalidArgument, "tol must lie in [1e-12, 1e-4]");
  if (!std::isfinite(u0)) throw Error(ErrorKind::InvalidArgument, "u0 must be finite");
  if (opts.stop_at_sin_psi && !(std::abs(*opts.stop_at_sin_psi) < 1.0 - kVerticalGuard))
    throw Error(ErrorKind::InvalidArgument, "stop_at_sin_psi must lie strictly inside (-1, 1)");

  const RadialSystem sys{p};
  const double tol = opts.tol;
  const double h_max = c * opts.max_step_fraction;
  const double h_min = 1e-14 * c;

  SolutionGrid grid;
  grid.method = SolveMethod::Ivp;
  grid.u0 = u0;
  grid.c_requested = c;

  auto push = [&](double r, const State& y) {
    const double s = y[1];
    const double slope = s / std::sqrt(1.0 - s * s);
    grid.r.push_back(r);
    grid.u.push_back(y[0]);
    grid.du.push_back(slope);
    grid.sin_psi.push_back(s);
    grid.kappa.push_back(p(r, y[0], slope) - s / r);
  };

  // r = 0: u' = 0, and kappa -> f(0)/2 as the limit of f - (1/r^2) int t f.
  const double f0 = p(0.0, u0, 0.0);
  grid.r.push_back(0.0);
  grid.u.push_back(u0);
  grid.du.push_back(0.0);
  grid.sin_psi.push_back(0.0);
  grid.kappa.push_back(0.5 * f0);

  // Series start: s = f0 r/2 + f1 r^2/3, u = u0 + f0 r^2/4 + f1 r^3/9, with f1
  // the slope of f along the series estimated by one extra evaluation.
  double r = 1e-4 * c;
  State y{u0 + f0 * r * r / 4.0, f0 * r / 2.0};
  {
    const double slope0 = y[1] / std::sqrt(1.0 - y[1] * y[1]);
    const double f1 = (p(r, y[0], slope0) - f0) / r;
    y[0] += f1 * r * r * r / 9.0;
    y[1] += f1 * r * r / 3.0;
  }
  if (past_vertical(y[1]))
    throw Error(ErrorKind::ImmediateTruncation, "sin psi reaches 1 immediately; f too large");
  push(r, y);

  const bool has_stop = opts.stop_at_sin_psi.has_value();
  const double stop = has_stop ? *opts.stop_at_sin_psi : 0.0;

  auto classify = [&](const State& from, const Trial& t) -> Event {
    if (!t.valid || past_vertical(t.y[1])) return Event::Vertical;
    if (has_stop) {
      const double before = from[1] - stop, after = t.y[1] - stop;
      if (after == 0.0 || (before != 0.0 && (before < 0.0) != (after < 0.0))) return Event::Stop;
    }
    return Event::None;
  };

  double h = std::min(h_max, 1e-3 * c);
  bool done = false;
  Event finished_by = Event::None;
  std::size_t steps = 0;
  while (!done) {
    if (++steps > 5'000'000) throw Error(ErrorKind::Stiffness, "step budget exhausted");
    const double remaining = c - r;
    if (remaining <= 1e-15 * c) break;
    h = std::min({h, h_max, remaining});
    if (remaining - h < 1e-12 * c) h = remaining;

    const State k1 = sys(r, y);
    Trial t = dp45_step(sys, r, y, k1, h, tol);
    const Event ev = classify(y, t);

    if (ev != Event::None) {
      // Shrink the step onto the event: lo never crosses, hi does.
      double lo = 0.0, hi = h;
      Trial best{};
      bool have_best = false;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        Trial tm = dp45_step(sys, r, y, k1, mid, tol);
        const Event em = classify(y, tm);
        if (em == Event::None) {
          lo = mid;
          best = tm;
          have_best = true;
          const bool close = (ev == Event::Vertical)
                                 ? std::abs(tm.y[1]) >= 1.0 - 2.0 * kVerticalGuard
                                 : std::abs(tm.y[1] - stop) <= 1e-13;
          if (close) break;
        } else {
          hi = mid;
          if (em == Event::Stop && tm.valid && std::abs(tm.y[1] - stop) <= 1e-13) {
            lo = mid;
            best = tm;
            have_best = true;
            break;
          }
        }
        if (hi - lo <= 1e-15 * c) break;
      }
      if (!have_best) {
        // the event sits within rounding distance of r
        finished_by = ev;
        break;
      }
      if (best.err <= 1.0) {
        r += lo;
        y = best.y;
        push(r, y);
        finished_by = ev;
        done = true;
      } else {
        h = lo * std::max(0.2, 0.9 * std::pow(best.err, -0.2));
        if (h < h_min) {
          if (ev == Event::Vertical && std::abs(y[1]) > 1.0 - 1e-6) {
            finished_by = Event::Vertical;
            break;
          }
          throw Error(ErrorKind::Stiffness, "step size underflow near r=" + format_double(r));
        }
      }
      continue;
    }

    if (t.err <= 1.0) {
      r = (h == remaining) ? c : r + h;
      y = t.y;
      push(r, y);
      h *= grow_factor(t.err);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(t.err, -0.2));
      if (h < h_min) {
        if (std::abs(y[1]) > 1.0 - 1e-6) {
          finished_by = Event::Vertical;
          break;
        }
        throw Error(ErrorKind::Stiffness, "step size underflow near r=" + format_double(r));
      }
    }
  }

  grid.c_eff = grid.r.back();
  grid.truncated_vertical = finished_by == Event::Vertical;
  grid.bends_down = std::any_of(grid.sin_psi.begin(), grid.sin_psi.end(),
                                [](double v) { return v < 0.0; });
  if (grid.truncated_vertical)
    grid.gamma = std::copysign(std::numbers::pi / 2.0, grid.sin_psi.back());
  else
    grid.gamma = std::atan(grid.du.back());
  return grid;
}

// ---------------------------------------------------------------------------
// Shooting

ShootResult shoot_for_gamma(const Profile& p, double c, double gamma,
                            std::pair<double, double> u0_bracket, double tol) {
  if (p.radial_only())
    throw Error(ErrorKind::DegreesOfFreedom,
                "gamma is determined by f for radial-only profiles; it cannot be prescribed");
  if (!(gamma >= 0.0 && gamma < std::numbers::pi / 2.0))
    throw Error(ErrorKind::InvalidArgument, "gamma must lie in [0, pi/2)");
  auto [lo, hi] = u0_bracket;
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw Error(ErrorKind::Bracket, "bracket must satisfy low < high");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");

  IvpOptions opts;
  opts.tol = std::clamp(tol, 1e-12, 1e-4);

  ShootResult res;
  auto evaluate = [&](double u0, SolutionGrid& out) {
    out = solve_ivp(p, c, u0, opts);
    return out.gamma - gamma;
  };

  SolutionGrid g_lo, g_hi;
  double f_lo = evaluate(lo, g_lo);
  if (std::abs(f_lo) <= tol) return {std::move(g_lo), lo, 0};
  double f_hi = evaluate(hi, g_hi);
  if (std::abs(f_hi) <= tol) return {std::move(g_hi), hi, 0};
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    std::ostringstream os;
    os << "bracket (" << format_double(lo) << ", " << format_double(hi)
       << ") does not straddle the target contact angle (residuals " << format_double(f_lo) << ", "
       << format_double(f_hi) << ")";
    throw Error(ErrorKind::Bracket, os.str());
  }

  bool force_bisect = false;
  for (int it = 1; it <= 200; ++it) {
    const double width = hi - lo;
    double x = hi - f_hi * (hi - lo) / (f_hi - f_lo);
    const double margin = 1e-3 * width;
    if (force_bisect || !std::isfinite(x) || x <= lo + margin || x >= hi - margin)
      x = 0.5 * (lo + hi);

    SolutionGrid gx;
    const double fx = evaluate(x, gx);
    if (std::abs(fx) <= tol) return {std::move(gx), x, it};
    if ((fx < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = fx;
    } else {
      hi = x;
      f_hi = fx;
    }
    // bisect next time if the bracket did not at least halve
    force_bisect = (hi - lo) > 0.5 * width;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi)))
      break;
  }
  throw Error(ErrorKind::Convergence, "shooting did not converge in 200 iterations");
}

}  // namespace pmc
