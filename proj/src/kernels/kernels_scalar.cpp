#include <cmath>

#include "kernels_impl.hpp"

namespace pmc::kernels::scalar {

void slope_from_sine(const double* s, double* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) p[i] = s[i] / std::sqrt(1.0 - s[i] * s[i]);
}

void curvature_from_sine(const double* r, const double* f, const double* s, double* kappa,
                         std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) kappa[i] = f[i] - s[i] / r[i];
}

void circle_heights(double radius, double zc, const double* r, double* z, std::size_t n) {
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < n; ++i) z[i] = zc - std::sqrt(r2 - r[i] * r[i]);
}

void difference(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

double min_value(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i) m = x[i] < m ? x[i] : m;
  return m;
}

void simpson_panels(const double* g, double h, double* full, double* half, std::size_t m) {
  const double w3 = h / 3.0;
  const double w24 = h / 24.0;
  for (std::size_t j = 0; j < m; ++j) full[j] = ((g[2 * j] + 4.0 * g[2 * j + 1]) + g[2 * j + 2]) * w3;
  for (std::size_t j = 0; j + 1 < m; ++j)
    half[j] = (((9.0 * g[2 * j] + 19.0 * g[2 * j + 1]) - 5.0 * g[2 * j + 2]) + g[2 * j + 3]) * w24;
}

void multiply(const double* x, const double* w, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * w[i];
}

}  // namespace pmc::kernels::scalar
