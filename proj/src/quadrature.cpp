#include "pmc/quadrature.hpp"

#include "pmc/error.hpp"
#include "pmc/kernels.hpp"

namespace pmc {

std::vector<double> cumulative_simpson(std::span<const double> g, double h) {
  if (g.size() < 4) throw Error(ErrorKind::InvalidArgument, "cumulative_simpson needs >= 4 samples");
  const std::size_t n = g.size() - 1;
  const std::size_t panels = n / 2;
  std::vector<double> full(panels), half(panels - 1);
  kernels::simpson_panels(g.first(2 * panels + 1), h, full, half);

  std::vector<double> out(g.size(), 0.0);
  for (std::size_t j = 0; j < panels; ++j) out[2 * j + 2] = out[2 * j] + full[j];
  for (std::size_t j = 0; j + 1 < panels; ++j) out[2 * j + 1] = out[2 * j] + half[j];

  // Odd node 2m-1 of the last panel: centered four-point rule over
  // [x_{2m-2}, x_{2m-1}] on x_{2m-3}..x_{2m}; needs m >= 2.
  const std::size_t last = 2 * panels - 1;
  if (panels >= 2) {
    out[last] = out[last - 1] +
                (((-g[last - 2] + 13.0 * g[last - 1]) + 13.0 * g[last]) - g[last + 1]) * (h / 24.0);
  } else {
    // n == 3: forward four-point rule on x_0..x_3
    out[1] = (((9.0 * g[0] + 19.0 * g[1]) - 5.0 * g[2]) + g[3]) * (h / 24.0);
  }
  if (n % 2 == 1) {
    // trailing odd node: backward four-point rule over [x_{n-1}, x_n]
    out[n] = out[n - 1] +
             (((g[n - 3] - 5.0 * g[n - 2]) + 19.0 * g[n - 1]) + 9.0 * g[n]) * (h / 24.0);
  }
  return out;
}

}  // namespace pmc
