#pragma once

#include <cmath>
#include <cstdint>

#include "mcmc_certify/drift.hpp"
#include "mcmc_certify/errors.hpp"
#include "mcmc_certify/geo_bounds.hpp"
#include "mcmc_certify/special_functions.hpp"
#include "mcmc_certify/rng.hpp"

namespace mcmc_certify::models {

// AR(1) kernel P(x,.) = N(cx, 1-c^2) with stationary law N(0,1); f(x) = x,
// V(x) = 1 + x^2, small set J = [-d, d].
class ContractingNormals {
 public:
  using State = double;

  ContractingNormals(double c, double d) : c_(c), d_(d) {
    if (!(std::fabs(c) < 1.0))
      throw invalid_input_error("contracting_normals: |c| must be < 1");
    if (!(d > 1.0)) throw invalid_input_error("contracting_normals: d must be > 1");
    s_ = std::sqrt(1.0 - c * c);
    const double ac = std::fabs(c);
    beta_ = 2.0 * (normal_cdf((1.0 + ac) * d / s_) - normal_cdf(ac * d / s_));
  }

  double c() const { return c_; }
  double d() const { return d_; }

  State step(State x, RngStream& rng) const { return c_ * x + s_ * rng.normal(); }

  bool in_small_set(State x) const { return std::fabs(x) <= d_; }
  double beta() const { return beta_; }
  double V(State x) const { return 1.0 + x * x; }
  double f(State x) const { return x; }
  double theta() const { return 0.0; }
  double projection(State x) const { return x; }

  double transition_density(State x, State y) const {
    return normal_pdf((y - c_ * x) / s_) / s_;
  }

  // Minimum over x in J of the transition densities; attained at x = -d
  // (sign-matched). The minorization measure is this envelope restricted to
  // J, normalized by beta, consistent with the closed form for beta above.
  double min_envelope(double y) const {
    return normal_pdf((std::fabs(y) + std::fabs(c_) * d_) / s_) / s_;
  }

  double nu_density(double y) const {
    return std::fabs(y) <= d_ ? min_envelope(y) / beta_ : 0.0;
  }

  // lambda = c^2 + 2(1-c^2)/(1+d^2): the pointwise supremum of PV/V outside
  // J, since PV(x) = c^2 V(x) + 2(1-c^2).
  GeometricDriftParams params() const {
    const double lam = c_ * c_ + 2.0 * (1.0 - c_ * c_) / (1.0 + d_ * d_);
    const double K = 2.0 + c_ * c_ * (d_ * d_ - 1.0);
    return {lam, K, beta_, "J = [-d, d]"};
  }

  double PV(State x) const { return 2.0 - c_ * c_ + c_ * c_ * x * x; }

  // Start at 0 (V = 1); theta known, so ||fbar||_{V^{1/2}} = ||f|| = 1. The
  // drift-only column fills pi(V) from the complementary bound and pi(V^{1/2}) by
  // Jensen on that bound; the known column uses pi(V) = 2.
  MomentInputs bound_moments(MomentProvenance prov) const {
    MomentInputs m;
    m.provenance = prov;
    m.xi_V = 1.0;
    m.xi_sqrtV = 1.0;
    m.fbar_norm = 1.0;
    if (prov == MomentProvenance::known_pi_V)
      m.pi_V = 2.0;
    else
      m.pi_V = geo_pi_V_bound(params());
    return geo_complementary(params(), m);
  }

  // Exact simulation effort for P(|theta_hat_n| < eps) > 1 - alpha under the
  // stationary Gaussian law of the chain: theta_hat_n is zero-mean normal
  // with Var = (1/n^2) sum_{i,j} c^{|i-j|}. Variance is decreasing in n, so
  // bracket and bisect.
  static std::int64_t exact_plan_n_min(double c, double eps, double alpha_conf,
                                       std::int64_t ceiling = 100000000) {
    if (!(std::fabs(c) < 1.0) || !(eps > 0.0) || !(alpha_conf > 0.0) ||
        !(alpha_conf < 1.0))
      throw invalid_input_error("exact_plan: bad arguments");
    auto ok = [&](std::int64_t n) {
      const double v = stationary_mean_variance(c, n);
      return 2.0 * normal_cdf(eps / std::sqrt(v)) - 1.0 > 1.0 - alpha_conf;
    };
    std::int64_t hi = 1;
    while (!ok(hi)) {
      if (hi > ceiling) throw infeasible_error("exact_plan: infeasible within ceiling");
      hi *= 2;
    }
    std::int64_t lo = hi == 1 ? 1 : hi / 2 + 1;
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (ok(mid))
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  // Var((1/n) sum of n consecutive stationary AR(1) values, unit variance).
  static double stationary_mean_variance(double c, std::int64_t n) {
    const double nd = static_cast<double>(n);
    double s = nd;
    double ck = 1.0;
    for (std::int64_t k = 1; k < n; ++k) {
      ck *= c;
      s += 2.0 * (nd - static_cast<double>(k)) * ck;
      if (std::fabs(ck) * nd < 1e-18 * s) break;
    }
    return s / (nd * nd);
  }

 private:
  double c_;
  double d_;
  double s_;
  double beta_;
};

}  // namespace mcmc_certify::models
