#pragma once

#include <cmath>
#include <utility>

#include "mcmc_certify/errors.hpp"

namespace mcmc_certify {

struct MinResult {
  double x;
  double value;
};

// Golden-section search on [lo, hi]; exact for unimodal objectives.
template <class Fn>
MinResult golden_min(Fn&& fn, double lo, double hi, double tol,
                     int max_iter = 400) {
  if (!(lo < hi)) throw invalid_input_error("golden_min: lo must be < hi");
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = fn(c), fd = fn(d);
  int it = 0;
  while (b - a > tol) {
    if (++it > max_iter)
      throw convergence_error("golden_min: iteration cap exceeded");
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = fn(d);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, fn(xm)};
}

// Coarse grid scan followed by golden-section refinement around the best
// cell; handles objectives that are not globally unimodal.
template <class Fn>
MinResult grid_then_golden(Fn&& fn, double lo, double hi, int grid_points,
                           double tol) {
  if (!(lo < hi)) throw invalid_input_error("grid_then_golden: empty range");
  if (grid_points < 2) grid_points = 2;
  int best = -1;
  double best_val = 0.0;
  const double step = (hi - lo) / (grid_points - 1);
  for (int i = 0; i < grid_points; ++i) {
    const double v = fn(lo + i * step);
    if (std::isfinite(v) && (best < 0 || v < best_val)) {
      best = i;
      best_val = v;
    }
  }
  if (best < 0)
    throw optimization_failed_error(
        "grid_then_golden: objective nonfinite on the whole range");
  const double a = lo + step * (best > 0 ? best - 1 : 0);
  const double b = lo + step * (best < grid_points - 1 ? best + 1 : best);
  if (!(a < b)) return {lo + step * best, best_val};
  MinResult r = golden_min(fn, a, b, tol);
  if (best_val < r.value) return {lo + step * best, best_val};
  return r;
}

}  // namespace mcmc_certify
