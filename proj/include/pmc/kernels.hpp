#pragma once

// Data-parallel grid passes used by the solver, geometry and verify modules.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. The AVX2 variants perform the same IEEE
// operations in the same order as the scalar code (no FMA contraction), so the
// two paths are bit-identical; tests/test_kernels.cpp holds them to that.

#include <cstddef>
#include <span>

namespace pmc::kernels {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

struct KernelTable {
  Isa isa;
  // p[i] = s[i] / sqrt(1 - s[i]^2)
  void (*slope_from_sine)(const double* s, double* p, std::size_t n);
  // kappa[i] = f[i] - s[i] / r[i]   (r[i] > 0)
  void (*curvature_from_sine)(const double* r, const double* f, const double* s, double* kappa,
                              std::size_t n);
  // z[i] = zc - sqrt(R^2 - r[i]^2)
  void (*circle_heights)(double radius, double zc, const double* r, double* z, std::size_t n);
  // out[i] = a[i] - b[i]
  void (*difference)(const double* a, const double* b, double* out, std::size_t n);
  // min over n >= 1 values
  double (*min_value)(const double* x, std::size_t n);
  // Over samples g[0..2m] with spacing h, for panels j = 0..m-1:
  //   full[j] = (g[2j] + 4 g[2j+1] + g[2j+2]) * (h / 3)
  // and for j = 0..m-2 the cubic-exact integral over [x_2j, x_2j+1]:
  //   half[j] = (9 g[2j] + 19 g[2j+1] - 5 g[2j+2] + g[2j+3]) * (h / 24)
  void (*simpson_panels)(const double* g, double h, double* full, double* half, std::size_t m);
  // y[i] = x[i] * w[i]
  void (*multiply)(const double* x, const double* w, double* y, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the AVX2 variant is not compiled in or not supported by the CPU.
const KernelTable* avx2_table();

// Best table for this CPU, unless overridden by force_isa() or the
// PMC_FORCE_SCALAR environment variable.
const KernelTable& active();
void force_isa(Isa isa);
void clear_forced_isa();

// Span conveniences over the active table.
void slope_from_sine(std::span<const double> s, std::span<double> p);
void curvature_from_sine(std::span<const double> r, std::span<const double> f,
                         std::span<const double> s, std::span<double> kappa);
void circle_heights(double radius, double zc, std::span<const double> r, std::span<double> z);
void difference(std::span<const double> a, std::span<const double> b, std::span<double> out);
double min_value(std::span<const double> x);
void simpson_panels(std::span<const double> g, double h, std::span<double> full,
                    std::span<double> half);
void multiply(std::span<const double> x, std::span<const double> w, std::span<double> y);

}  // namespace pmc::kernels
