#pragma once

#include <functional>

namespace spinvalve::detail {

struct GridMax {
  double t;
  double value;
};

GridMax golden_max(const std::function<double(double)>& f, double lo, double hi, double tol);

// Scan t_i = t_max * i / grid for i = 1..grid, golden-refine every near-top
// local maximum to 1e-6 in t, return the best refined point. Values within
// 1e-9 of each other count as a tie and the earliest time wins, so periodic
// revivals of equal height resolve to the first one.
GridMax maximize_on_grid(const std::function<double(double)>& f, double t_max, int grid);

}  // namespace spinvalve::detail
