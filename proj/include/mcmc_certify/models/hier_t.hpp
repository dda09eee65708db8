#pragma once

#include <cmath>
#include <cstdint>

#include "mcmc_certify/drift.hpp"
#include "mcmc_certify/errors.hpp"
#include "mcmc_certify/geo_bounds.hpp"
#include "mcmc_certify/rng.hpp"
#include "mcmc_certify/special_functions.hpp"

namespace mcmc_certify::models {

// Two-step Gibbs sampler for the normal/Jeffreys hierarchical model, collapsed
// to the mu-chain. One step: mu' = sqrt(1 + mu^2/t) * (Student-t draw, t df).
// Target is the posterior mean, f(mu) = mu, theta = 0; V(mu) = mu^2 + 1,
// small set J = [-a, a].
class HierT {
 public:
  using State = double;

  HierT(int t, double a) : t_(t), a_(a) {
    if (t < 4) throw invalid_input_error("hier_t: t must be >= 4");
    if (!(a > admissibility_threshold(t)))
      throw invalid_input_error(
          "hier_t: inadmissible small set, need a > sqrt(t/(t-3))");
    h_ = half_width_h(t, a);
    beta_ = minorization_beta(t, a);
  }

  static double admissibility_threshold(int t) {
    return std::sqrt(static_cast<double>(t) / (t - 3.0));
  }

  int t() const { return t_; }
  double a() const { return a_; }
  double h() const { return h_; }

  State step(State mu, RngStream& rng) const {
    return std::sqrt(1.0 + mu * mu / t_) * rng.student_t(t_);
  }

  bool in_small_set(State mu) const { return std::fabs(mu) <= a_; }
  double beta() const { return beta_; }
  double V(State mu) const { return mu * mu + 1.0; }
  double f(State mu) const { return mu; }
  double theta() const { return 0.0; }
  double projection(State mu) const { return mu; }

  // Student-t scale family: p(y|x) = f_t(y/s)/s with s = sqrt(1 + x^2/t).
  double transition_density(State x, State y) const {
    const double s = std::sqrt(1.0 + x * x / t_);
    return student_t_pdf(y / s, t_) / s;
  }

  // p_min switches between the widest (from a) and narrowest (from 0)
  // conditionals at |y| = h(a).
  double p_min(double y) const {
    return std::fabs(y) <= h_ ? transition_density(a_, y)
                              : transition_density(0.0, y);
  }

  double nu_density(double y) const { return p_min(y) / beta_; }

  GeometricDriftParams drift_params() const {
    return {drift_lambda(t_, a_), drift_K(t_, a_), beta_, "J = [-a, a]"};
  }

  // Closed forms of the drift constants.
  static double drift_lambda(int t, double a) {
    return (1.0 / (t - 2.0)) * ((2.0 * t - 3.0) / (1.0 + a * a) + 1.0);
  }
  static double drift_K(int t, double a) {
    return 2.0 + (a * a + 2.0) / (t - 2.0);
  }
  static double pi_V_exact(int t) { return (2.0 * t - 3.0) / (t - 3.0); }
  static double sigma_as_exact(int t) {
    return std::sqrt(static_cast<double>(t) / (t - 3.0));
  }

  static double half_width_h(int t, double a) {
    const double td = t;
    const double rad =
        a * a / (std::pow(1.0 + a * a / td, td / (td + 1.0)) - 1.0) - td;
    if (!(rad > 0.0))
      throw invalid_input_error("hier_t: negative radicand in h(a), a inadmissible");
    return std::sqrt(rad);
  }

  static double minorization_beta(int t, double a) {
    const double h = half_width_h(t, a);
    const double scale = std::sqrt(1.0 + a * a / t);
    const double inner = 2.0 * student_t_cdf(h, t) - 1.0;
    const double inner_shrunk = 2.0 * student_t_cdf(h / scale, t) - 1.0;
    return 1.0 - inner + inner_shrunk;
  }

  // Closed form of the MSE of the ergodic average, start delta_{mu0}.
  static double exact_mse(int t, std::int64_t n, double mu0) {
    const double td = t, nd = static_cast<double>(n);
    const double r = 1.0 - std::pow(1.0 / (td - 2.0), static_cast<double>(n));
    return td / (nd * (td - 3.0)) -
           td * (td - 2.0) / (nd * nd * (td - 3.0) * (td - 3.0)) * r +
           (td - 2.0) / (nd * nd * (td - 3.0)) * r * mu0 * mu0;
  }

  // Moment sets for the two provenance modes: known pi(V) uses the exact
  // stationary value and Jensen for pi(V^{1/2}); drift-only replaces both by
  // their complementary bounds. In both cases the
  // chain is started at mu = 0 and ||fbar||_{V^{1/2}} = 1 (theta is known).
  MomentInputs bound_moments(MomentProvenance prov, double mu0 = 0.0) const {
    MomentInputs m;
    m.provenance = prov;
    m.xi_V = V(mu0);
    m.xi_sqrtV = std::sqrt(V(mu0));
    m.fbar_norm = 1.0;
    if (prov == MomentProvenance::known_pi_V) {
      m.pi_V = pi_V_exact(t_);
      return geo_complementary(drift_params(), m);
    }
    return geo_complementary(drift_params(), m);
  }

 private:
  int t_;
  double a_;
  double h_;
  double beta_;
};

}  // namespace mcmc_certify::models
