#pragma once

#include <span>
#include <vector>

namespace pmc {

// Running integral of uniformly spaced samples g[0..n] with spacing h:
// out[i] ~ integral from x_0 to x_i. Even nodes use composite Simpson; odd
// nodes add a cubic-exact four-point rule over the last half panel, so every
// node is fourth-order accurate. Requires g.size() >= 4.
std::vector<double> cumulative_simpson(std::span<const double> g, double h);

}  // namespace pmc
