// Compiled with -mavx2 and without FMA so every lane rounds exactly like the
// scalar reference.
#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace pmc::kernels::avx2 {

namespace {
constexpr std::size_t kLanes = 4;
}

void slope_from_sine(const double* s, double* p, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d sv = _mm256_loadu_pd(s + i);
    const __m256d root = _mm256_sqrt_pd(_mm256_sub_pd(one, _mm256_mul_pd(sv, sv)));
    _mm256_storeu_pd(p + i, _mm256_div_pd(sv, root));
  }
  for (; i < n; ++i) p[i] = s[i] / std::sqrt(1.0 - s[i] * s[i]);
}

void curvature_from_sine(const double* r, const double* f, const double* s, double* kappa,
                         std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d q = _mm256_div_pd(_mm256_loadu_pd(s + i), _mm256_loadu_pd(r + i));
    _mm256_storeu_pd(kappa + i, _mm256_sub_pd(_mm256_loadu_pd(f + i), q));
  }
  for (; i < n; ++i) kappa[i] = f[i] - s[i] / r[i];
}

void circle_heights(double radius, double zc, const double* r, double* z, std::size_t n) {
  const double r2s = radius * radius;
  const __m256d r2 = _mm256_set1_pd(r2s);
  const __m256d c = _mm256_set1_pd(zc);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d rv = _mm256_loadu_pd(r + i);
    const __m256d root = _mm256_sqrt_pd(_mm256_sub_pd(r2, _mm256_mul_pd(rv, rv)));
    _mm256_storeu_pd(z + i, _mm256_sub_pd(c, root));
  }
  for (; i < n; ++i) z[i] = zc - std::sqrt(r2s - r[i] * r[i]);
}

void difference(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

double min_value(const double* x, std::size_t n) {
  if (n < kLanes) {
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i) m = x[i] < m ? x[i] : m;
    return m;
  }
  __m256d acc = _mm256_loadu_pd(x);
  std::size_t i = kLanes;
  for (; i + kLanes <= n; i += kLanes) acc = _mm256_min_pd(_mm256_loadu_pd(x + i), acc);
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  double m = lanes[0];
  for (std::size_t k = 1; k < kLanes; ++k) m = lanes[k] < m ? lanes[k] : m;
  for (; i < n; ++i) m = x[i] < m ? x[i] : m;
  return m;
}

void simpson_panels(const double* g, double h, double* full, double* half, std::size_t m) {
  const __m256d w3 = _mm256_set1_pd(h / 3.0);
  const __m256d w24 = _mm256_set1_pd(h / 24.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d five = _mm256_set1_pd(5.0);
  const __m256d nine = _mm256_set1_pd(9.0);
  const __m256d nineteen = _mm256_set1_pd(19.0);

  // Block j..j+3 reads evens e0..e4 = g[2j..2j+8:2] and odds o0..o3; all
  // loads stay within g[0..2m].
  std::size_t j = 0;
  for (; j + kLanes <= m; j += kLanes) {
    const double* base = g + 2 * j;
    const __m256d a = _mm256_loadu_pd(base);      // e0 o0 e1 o1
    const __m256d b = _mm256_loadu_pd(base + 4);  // e2 o2 e3 o3
    const __m256d c = _mm256_loadu_pd(base + 2);  // e1 o1 e2 o2
    const __m256d d = _mm256_loadu_pd(base + 5);  // o2 e3 o3 e4
    const __m256d ev = _mm256_permute4x64_pd(_mm256_unpacklo_pd(a, b), 0xD8);       // e0 e1 e2 e3
    const __m256d od = _mm256_permute4x64_pd(_mm256_unpackhi_pd(a, b), 0xD8);       // o0 o1 o2 o3
    const __m256d en = _mm256_permute4x64_pd(_mm256_blend_pd(c, d, 0b1010), 0xD8);  // e1 e2 e3 e4
    const __m256d f = _mm256_mul_pd(_mm256_add_pd(_mm256_add_pd(ev, _mm256_mul_pd(four, od)), en), w3);
    _mm256_storeu_pd(full + j, f);
  }
  const double s3 = h / 3.0;
  for (; j < m; ++j) full[j] = ((g[2 * j] + 4.0 * g[2 * j + 1]) + g[2 * j + 2]) * s3;

  // Block j..j+3 additionally reads o4 = g[2j+9]; valid while j + 4 <= m - 1.
  const std::size_t halves = m == 0 ? 0 : m - 1;
  j = 0;
  for (; j + kLanes <= halves; j += kLanes) {
    const double* base = g + 2 * j;
    const __m256d a = _mm256_loadu_pd(base);      // e0 o0 e1 o1
    const __m256d b = _mm256_loadu_pd(base + 4);  // e2 o2 e3 o3
    const __m256d c = _mm256_loadu_pd(base + 2);  // e1 o1 e2 o2
    const __m256d d = _mm256_loadu_pd(base + 6);  // e3 o3 e4 o4
    const __m256d ev = _mm256_permute4x64_pd(_mm256_unpacklo_pd(a, b), 0xD8);  // e0 e1 e2 e3
    const __m256d od = _mm256_permute4x64_pd(_mm256_unpackhi_pd(a, b), 0xD8);  // o0 o1 o2 o3
    const __m256d en = _mm256_permute4x64_pd(_mm256_unpacklo_pd(c, d), 0xD8);  // e1 e2 e3 e4
    const __m256d on = _mm256_permute4x64_pd(_mm256_unpackhi_pd(c, d), 0xD8);  // o1 o2 o3 o4
    const __m256d acc = _mm256_add_pd(
        _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(nine, ev), _mm256_mul_pd(nineteen, od)),
                      _mm256_mul_pd(five, en)),
        on);
    _mm256_storeu_pd(half + j, _mm256_mul_pd(acc, w24));
  }
  const double s24 = h / 24.0;
  for (; j < halves; ++j)
    half[j] = (((9.0 * g[2 * j] + 19.0 * g[2 * j + 1]) - 5.0 * g[2 * j + 2]) + g[2 * j + 3]) * s24;
}

void multiply(const double* x, const double* w, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(w + i)));
  for (; i < n; ++i) y[i] = x[i] * w[i];
}

}  // namespace pmc::kernels::avx2
