#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "kernels_impl.hpp"
#include "pmc/kernels.hpp"

namespace pmc::kernels {

namespace {

constexpr KernelTable kScalar{
    Isa::Scalar,           scalar::slope_from_sine, scalar::curvature_from_sine,
    scalar::circle_heights, scalar::difference,     scalar::min_value,
    scalar::simpson_panels, scalar::multiply,
};

#if defined(PMC_HAVE_AVX2)
constexpr KernelTable kAvx2{
    Isa::Avx2,           avx2::slope_from_sine, avx2::curvature_from_sine,
    avx2::circle_heights, avx2::difference,     avx2::min_value,
    avx2::simpson_panels, avx2::multiply,
};
#endif

bool cpu_has_avx2() {
#if defined(PMC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& detect() {
  const char* env = std::getenv("PMC_FORCE_SCALAR");
  if (env != nullptr && env[0] != '\0' && env[0] != '0') return kScalar;
  if (const KernelTable* t = avx2_table()) return *t;
  return kScalar;
}

// -1: none forced, otherwise static_cast<int>(Isa)
std::atomic<int> g_forced{-1};

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel span sizes differ");
}

}  // namespace

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(PMC_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced == static_cast<int>(Isa::Scalar)) return kScalar;
  if (forced == static_cast<int>(Isa::Avx2)) {
    if (const KernelTable* t = avx2_table()) return *t;
    return kScalar;
  }
  static const KernelTable& best = detect();
  return best;
}

void force_isa(Isa isa) { g_forced.store(static_cast<int>(isa), std::memory_order_relaxed); }
void clear_forced_isa() { g_forced.store(-1, std::memory_order_relaxed); }

void slope_from_sine(std::span<const double> s, std::span<double> p) {
  check_sizes(s.size(), p.size());
  active().slope_from_sine(s.data(), p.data(), s.size());
}

void curvature_from_sine(std::span<const double> r, std::span<const double> f,
                         std::span<const double> s, std::span<double> kappa) {
  check_sizes(r.size(), f.size());
  check_sizes(r.size(), s.size());
  check_sizes(r.size(), kappa.size());
  active().curvature_from_sine(r.data(), f.data(), s.data(), kappa.data(), r.size());
}

void circle_heights(double radius, double zc, std::span<const double> r, std::span<double> z) {
  check_sizes(r.size(), z.size());
  active().circle_heights(radius, zc, r.data(), z.data(), r.size());
}

void difference(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  check_sizes(a.size(), b.size());
  check_sizes(a.size(), out.size());
  active().difference(a.data(), b.data(), out.data(), a.size());
}

double min_value(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("min_value of an empty span");
  return active().min_value(x.data(), x.size());
}

void simpson_panels(std::span<const double> g, double h, std::span<double> full,
                    std::span<double> half) {
  if (full.empty() || half.size() + 1 != full.size())
    throw std::invalid_argument("simpson_panels needs m >= 1 panels and m - 1 half slots");
  if (g.size() != 2 * full.size() + 1) throw std::invalid_argument("simpson_panels needs 2m+1 samples");
  active().simpson_panels(g.data(), h, full.data(), half.data(), full.size());
}

void multiply(std::span<const double> x, std::span<const double> w, std::span<double> y) {
  check_sizes(x.size(), w.size());
  check_sizes(x.size(), y.size());
  active().multiply(x.data(), w.data(), y.data(), x.size());
}

}  // namespace pmc::kernels
