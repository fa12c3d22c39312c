#pragma once

#include <cstddef>

namespace pmc::kernels {

#define PMC_KERNEL_DECLS                                                                     \
  void slope_from_sine(const double* s, double* p, std::size_t n);                           \
  void curvature_from_sine(const double* r, const double* f, const double* s, double* kappa, \
                           std::size_t n);                                                   \
  void circle_heights(double radius, double zc, const double* r, double* z, std::size_t n);  \
  void difference(const double* a, const double* b, double* out, std::size_t n);             \
  double min_value(const double* x, std::size_t n);                                         \
  void simpson_panels(const double* g, double h, double* full, double* half, std::size_t m); \
  void multiply(const double* x, const double* w, double* y, std::size_t n);

namespace scalar {
PMC_KERNEL_DECLS
}

#if defined(PMC_HAVE_AVX2)
namespace avx2 {
PMC_KERNEL_DECLS
}
#endif

#undef PMC_KERNEL_DECLS

}  // namespace pmc::kernels
