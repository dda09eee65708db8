#pragma once

#include <cmath>

#include "mcmc_certify/drift.hpp"
#include "mcmc_certify/errors.hpp"

namespace mcmc_certify {

// (K - lambda)/(1 - lambda); pi(V^alpha) <= R and pi(V^eta) <= R^{eta/alpha}.
inline double poly_moment_ratio(const PolynomialDriftParams& p) {
  return (p.K - p.lambda) / (1.0 - p.lambda);
}

inline double poly_pi_V_eta_bound(const PolynomialDriftParams& p, double eta) {
  if (eta > p.alpha + 1e-12)
    throw invalid_input_error("poly: exponent eta must satisfy eta <= alpha");
  return std::pow(poly_moment_ratio(p), eta / p.alpha);
}

// pi(J) >= (1-lambda)/(K-lambda).
inline double poly_pi_J_lower(const PolynomialDriftParams& p) {
  return (1.0 - p.lambda) / (p.K - p.lambda);
}

// E_nu V^eta(X_n) <= beta^{-eta/alpha} R^{2 eta/alpha}, uniformly in n.
inline double poly_nu_pn_V_eta_cap(const PolynomialDriftParams& p, double eta) {
  if (eta > p.alpha + 1e-12)
    throw invalid_input_error("poly: exponent eta must satisfy eta <= alpha");
  return std::pow(p.beta, -eta / p.alpha) *
         std::pow(poly_moment_ratio(p), 2.0 * eta / p.alpha);
}

// Fills pi(V^eta) for one exponent, plus the fbar norm when only ||f|| is
// known (the norm exponent used by the bounds is (3/2)alpha - 1 <= alpha).
inline MomentInputs poly_complementary(const PolynomialDriftParams& p,
                                       double eta, MomentInputs partial) {
  validate(p);
  if (eta > p.alpha + 1e-12)
    throw invalid_input_error("poly_complementary: eta > alpha");
  if (!detail::eta_present(partial.pi_V_eta, eta))
    partial.pi_V_eta[eta] = poly_pi_V_eta_bound(p, eta);
  if (!partial.fbar_norm && partial.f_norm) {
    const double eta_f = 1.5 * p.alpha - 1.0;
    partial.fbar_norm =
        *partial.f_norm * (1.0 + std::pow(poly_moment_ratio(p), eta_f / p.alpha));
  }
  return partial;
}

// Fills every stationary exponent poly_bounds needs.
inline MomentInputs poly_complementary_all(const PolynomialDriftParams& p,
                                           MomentInputs partial) {
  const double a = p.alpha;
  for (double eta : {3.0 * a - 2.0, 2.0 * a - 1.0, 1.5 * a - 1.0, a})
    partial = poly_complementary(p, eta, partial);
  return partial;
}

namespace detail {

// Shared tour-second-moment bound behind C1 and C2, per unit ||fbar||^2;
// the three
// moment arguments are xi(V^{2a-1}), xi(V^a), xi(V^{a/2}) or their caps.
inline double poly_block_second_moment(const PolynomialDriftParams& p,
                                       double m2a1, double ma, double ma2) {
  const double a = p.alpha, lam = p.lambda, K = p.K, b = p.beta;
  const double om = 1.0 - lam;
  const double Ka2 = std::pow(K, 0.5 * a);
  const double g = (2.0 * Ka2 - 2.0 - 2.0 * b) / (a * b * om) + 1.0 / b;
  double s = m2a1 / ((2.0 * a - 1.0) * om);
  s += 4.0 * ma / (a * a * om * om);
  s += ((8.0 * Ka2 - 8.0 - 8.0 * b) / (a * a * b * om * om) +
        (4.0 - 4.0 * b) / (a * b * om)) *
       ma2;
  s += (a * om + 4.0) / (a * b * om);
  s += (std::pow(K, 2.0 * a - 1.0) - 1.0 - b) / ((2.0 * a - 1.0) * b * om);
  s += 4.0 * (std::pow(K, a) - 1.0 - b) / (a * a * b * om * om);
  s += 2.0 * g * g - 2.0 * g;
  return s;
}

}  // namespace detail

// Drift-based bounds for polynomially ergodic chains, alpha > 2/3. C2 is
// self-contained given (lambda, K, beta, alpha): its xi P^n moments are
// covered by the nu-moment caps.
inline BoundComponents poly_bounds(const PolynomialDriftParams& p,
                                   const MomentInputs& m) {
  validate(p);
  const double a = p.alpha, lam = p.lambda, K = p.K, b = p.beta;
  const double om = 1.0 - lam;
  if (!m.fbar_norm)
    throw moment_unavailable_error(
        "poly_bounds: ||fbar||_{V^{(3/2)alpha-1}} needed");
  auto pi = [&](double eta) {
    return detail::eta_lookup(m.pi_V_eta, eta, "pi(V^eta)");
  };
  auto xi = [&](double eta) {
    return detail::eta_lookup(m.xi_V_eta, eta, "xi(V^eta)");
  };
  const double fbar = *m.fbar_norm;

  BoundComponents out;
  out.provenance = m.provenance;

  // (i)
  out.c0 = pi(a) / (a * om) + (std::pow(K, a) - 1.0 - b) / (b * a * om) +
           1.0 / b - 0.5;

  // (ii)
  const double Ka2 = std::pow(K, 0.5 * a);
  const double sig_unit =
      pi(3.0 * a - 2.0) + 4.0 * pi(2.0 * a - 1.0) / (a * om) +
      2.0 * ((2.0 * Ka2 - 2.0 - 2.0 * b) / (a * b * om) + 1.0 / b - 1.0) *
          pi(1.5 * a - 1.0);
  out.sigma_as_sq = fbar * fbar * sig_unit;

  // (iii)
  out.c1 = fbar * std::sqrt(detail::poly_block_second_moment(
                       p, xi(2.0 * a - 1.0), xi(a), xi(0.5 * a)));

  // (iv): nu-moment caps beta^{-eta/alpha} R^{2 eta/alpha}
  out.c2 = fbar * std::sqrt(detail::poly_block_second_moment(
                       p, poly_nu_pn_V_eta_cap(p, 2.0 * a - 1.0),
                       poly_nu_pn_V_eta_cap(p, a),
                       poly_nu_pn_V_eta_cap(p, 0.5 * a)));

  validate(out);
  return out;
}

}  // namespace mcmc_certify
