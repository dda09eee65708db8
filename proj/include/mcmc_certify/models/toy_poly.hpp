#pragma once

#include <cmath>
#include <cstdint>

#include "mcmc_certify/drift.hpp"
#include "mcmc_certify/errors.hpp"
#include "mcmc_certify/poly_bounds.hpp"
#include "mcmc_certify/rng.hpp"

namespace mcmc_certify::models {

// Synthetic polynomially ergodic chain on [1, oo) with V(x) = x: with weight
// w(x) teleport to Uniform[1,2] (the regeneration atom), otherwise drift
// upward by Uniform[0, 2*delta]. The weight
//   w(x) = min(w_max, (delta + (1-lambda) x^alpha) / (x + delta - 1.5))
// makes PV(x) = x - (1-lambda) x^alpha hold with equality wherever the cap is
// inactive, so the polynomial drift condition is exact by construction.
// J = [1, x_J] where the cap binds; beta = w_max, nu = Uniform[1,2].
class ToyPoly {
 public:
  using State = double;

  explicit ToyPoly(double alpha, double lambda = 0.5, double delta = 0.5,
                   double w_max = 0.7)
      : alpha_(alpha), lambda_(lambda), delta_(delta), w_max_(w_max) {
    if (!(alpha > 2.0 / 3.0) || !(alpha <= 1.0))
      throw invalid_input_error("toy_poly: alpha must be in (2/3, 1]");
    if (!(lambda > 0.0) || !(lambda < 1.0))
      throw invalid_input_error("toy_poly: lambda must be in (0,1)");
    x_J_ = solve_cap_point();
    K_ = w_max_ * 1.5 + (1.0 - w_max_) * (x_J_ + delta_);
    verify_drift_on_grid();
  }

  double alpha() const { return alpha_; }
  double small_set_upper() const { return x_J_; }

  State step(State x, RngStream& rng) const {
    if (rng.uniform() < weight(x)) return rng.uniform(1.0, 2.0);
    return x + rng.uniform(0.0, 2.0 * delta_);
  }

  bool in_small_set(State x) const { return x <= x_J_; }
  double beta() const { return w_max_; }
  double V(State x) const { return x; }
  // f with ||f||_{V^{(3/2)alpha - 1}} = 1.
  double f(State x) const { return std::pow(x, 1.5 * alpha_ - 1.0); }
  double projection(State x) const { return x; }

  double transition_density(State x, State y) const {
    const double w = weight(x);
    double p = 0.0;
    if (y >= 1.0 && y <= 2.0) p += w;
    if (y >= x && y <= x + 2.0 * delta_) p += (1.0 - w) / (2.0 * delta_);
    return p;
  }

  double nu_density(State y) const { return (y >= 1.0 && y <= 2.0) ? 1.0 : 0.0; }

  double weight(State x) const {
    const double denom = x + delta_ - 1.5;
    if (denom <= 0.0) return w_max_;
    return std::min(w_max_,
                    (delta_ + (1.0 - lambda_) * std::pow(x, alpha_)) / denom);
  }

  double PV(State x) const {
    const double w = weight(x);
    return w * 1.5 + (1.0 - w) * (x + delta_);
  }

  PolynomialDriftParams params() const {
    return {lambda_, K_, w_max_, alpha_, "J = [1, x_J]"};
  }

  // Moments for poly_bounds: stationary exponents from the complementary
  // bounds; start at x0 (V = x0, exact powers); fbar from ||f|| = 1.
  MomentInputs bound_moments(double x0 = 1.0) const {
    MomentInputs m;
    m.provenance = MomentProvenance::drift_only;
    m.f_norm = 1.0;
    const double a = alpha_;
    for (double eta : {2.0 * a - 1.0, a, 0.5 * a})
      m.xi_V_eta[eta] = std::pow(x0, eta);
    return poly_complementary_all(params(), m);
  }

 private:
  // Smallest x beyond which the cap w_max is inactive.
  double solve_cap_point() const {
    auto g = [&](double x) {
      return (delta_ + (1.0 - lambda_) * std::pow(x, alpha_)) /
                 (x + delta_ - 1.5) -
             w_max_;
    };
    double lo = 1.5 - delta_ + 1e-9, hi = 4.0;
    while (g(hi) > 0.0) {
      hi *= 2.0;
      if (hi > 1e9)
        throw construction_invalid_error("toy_poly: cap point not found");
    }
    if (lo < 1.0) lo = 1.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  // PV(x) <= V(x) - (1-lambda) V(x)^alpha off J and PV <= K on J, checked on
  // a log-spaced grid before the model is usable.
  void verify_drift_on_grid() const {
    const int npts = 10000;
    const double lo = std::log(1.0), hi = std::log(1e6);
    for (int i = 0; i < npts; ++i) {
      const double x = std::exp(lo + (hi - lo) * i / (npts - 1.0));
      const double pv = PV(x);
      if (x <= x_J_) {
        if (pv > K_ * (1.0 + 1e-12))
          throw construction_invalid_error("toy_poly: PV exceeds K on J");
      } else {
        const double allowed = x - (1.0 - lambda_) * std::pow(x, alpha_);
        if (pv > allowed * (1.0 + 1e-12) + 1e-12)
          throw construction_invalid_error(
              "toy_poly: drift inequality fails off J");
      }
    }
  }

  double alpha_;
  double lambda_;
  double delta_;
  double w_max_;
  double x_J_ = 0.0;
  double K_ = 0.0;
};

}  // namespace mcmc_certify::models
