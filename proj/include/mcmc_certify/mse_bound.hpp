#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "mcmc_certify/drift.hpp"
#include "mcmc_certify/errors.hpp"
#include "mcmc_certify/golden_min.hpp"

namespace mcmc_certify {

// Root-MSE bound: sigma/sqrt(n) * (1 + C0/n) + C1/n + C2/n.
inline double combine_mse_bound(const BoundComponents& comp, std::int64_t n) {
  validate(comp);
  if (n < 1) throw invalid_input_error("combine_mse_bound: n must be >= 1");
  const double nd = static_cast<double>(n);
  return std::sqrt(comp.sigma_as_sq) / std::sqrt(nd) * (1.0 + comp.c0 / nd) +
         comp.c1 / nd + comp.c2 / nd;
}

// Least n with bound(n)^2 <= epsilon^2 * alpha_conf. Exponential bracketing
// then integer bisection; exact provided bound_fn is nonincreasing past the
// first qualifying n.
inline ConfidencePlan confidence_plan(
    const std::function<double(std::int64_t)>& bound_fn, double epsilon,
    double alpha_conf, std::int64_t ceiling = 1000000000000LL) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw invalid_input_error("confidence_plan: epsilon must be positive");
  if (!(alpha_conf > 0.0) || !(alpha_conf < 1.0))
    throw invalid_input_error("confidence_plan: alpha must be in (0,1)");
  const double target = epsilon * epsilon * alpha_conf;
  auto ok = [&](std::int64_t n) {
    const double b = bound_fn(n);
    return b * b <= target;
  };
  std::int64_t hi = 1;
  while (!ok(hi)) {
    if (hi > ceiling)
      throw infeasible_error("confidence_plan: infeasible within ceiling");
    hi *= 2;
  }
  std::int64_t lo = hi / 2 + 1;
  if (hi == 1) lo = 1;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return ConfidencePlan{epsilon, alpha_conf, lo};
}

// Minimize a bound objective over the small-set width. Grid pre-scan handles
// the non-unimodal tails, golden section sharpens to `tol`.
inline MinResult optimize_small_set(const std::function<double(double)>& objective,
                                    double a_lo, double a_hi,
                                    int grid_points = 400, double tol = 1e-4) {
  return grid_then_golden(objective, a_lo, a_hi, grid_points, tol);
}

}  // namespace mcmc_certify
