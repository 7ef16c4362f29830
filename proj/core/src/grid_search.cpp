#include "grid_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace spinvalve::detail {

GridMax golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double invphi2 = (3.0 - std::sqrt(5.0)) / 2.0;
  double a = lo, b = hi;
  double c = a + invphi2 * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = a + invphi2 * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? GridMax{c, fc} : GridMax{d, fd};
}

GridMax maximize_on_grid(const std::function<double(double)>& f, double t_max, int grid) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be positive");
  if (grid < 2) throw std::invalid_argument("grid must have at least two points");

  std::vector<double> ts(grid), vals(grid);
  for (int i = 0; i < grid; ++i) {
    ts[i] = t_max * (i + 1) / grid;
    vals[i] = f(ts[i]);
  }
  const double vmax = *std::max_element(vals.begin(), vals.end());
  const double vmin = *std::min_element(vals.begin(), vals.end());
  const double slack = 0.01 * (vmax - vmin) + 1e-12;

  constexpr double kTimeTol = 1e-6;
  constexpr double kValueTie = 1e-9;

  bool have_best = false;
  GridMax best{0.0, 0.0};
  for (int i = 0; i < grid; ++i) {
    const bool up = i == 0 || vals[i] >= vals[i - 1];
    const bool down = i == grid - 1 || vals[i] >= vals[i + 1];
    if (!up || !down || vals[i] < vmax - slack) continue;
    const double lo = i == 0 ? 0.0 : ts[i - 1];
    const double hi = i == grid - 1 ? t_max : ts[i + 1];
    GridMax cand = golden_max(f, lo, hi, kTimeTol);
    if (cand.value < vals[i]) cand = {ts[i], vals[i]};
    if (!have_best || cand.value > best.value + kValueTie) {
      best = cand;
      have_best = true;
    }
  }
  return best;
}

}  // namespace spinvalve::detail
