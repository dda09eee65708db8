#pragma once

#include <cmath>

#include "mcmc_certify/drift.hpp"
#include "mcmc_certify/errors.hpp"

namespace mcmc_certify {

enum class C0Variant { V, sqrtV };

// Complementary bounds on stationary moments from (lambda, K) alone.
inline double geo_pi_V_bound(const GeometricDriftParams& p) {
  return (p.K - p.lambda) / (1.0 - p.lambda);
}

inline double geo_pi_sqrtV_bound(const GeometricDriftParams& p) {
  const double sl = std::sqrt(p.lambda), sK = std::sqrt(p.K);
  return (sK - sl) / (1.0 - sl);
}

// Caps preserved by the kernel: if xi(V) <= K/(1-lambda) then so is xi P^n(V)
// for every n, and likewise on the sqrt scale.
inline double geo_xi_pn_V_cap(const GeometricDriftParams& p) {
  return p.K / (1.0 - p.lambda);
}

inline double geo_xi_pn_sqrtV_cap(const GeometricDriftParams& p) {
  return std::sqrt(p.K) / (1.0 - std::sqrt(p.lambda));
}

// Fills the absent stationary-moment fields of `partial`. pi_sqrtV is filled
// before pi_V: when pi(V) is already supplied we take sqrt(pi(V)) (Jensen),
// otherwise the direct drift bound.
inline MomentInputs geo_complementary(const GeometricDriftParams& p,
                                      MomentInputs partial) {
  validate(p);
  if (!partial.pi_sqrtV) {
    partial.pi_sqrtV = partial.pi_V ? std::sqrt(*partial.pi_V)
                                    : geo_pi_sqrtV_bound(p);
  }
  if (!partial.pi_V) partial.pi_V = geo_pi_V_bound(p);
  if (!partial.fbar_norm && partial.f_norm) {
    const double sl = std::sqrt(p.lambda), sK = std::sqrt(p.K);
    partial.fbar_norm =
        *partial.f_norm *
        (1.0 + (sK - sl) / ((1.0 - sl) * std::sqrt(partial.inf_V)));
  }
  return partial;
}

// Asymptotic-variance bound alone, scaled by ||fbar||^2. May be negative
// or NaN outside
// the useful parameter region; callers that optimize over the small-set width
// should treat nonfinite values as "skip".
inline double geo_sigma_sq_bound(const GeometricDriftParams& p,
                                 const MomentInputs& m) {
  if (!m.pi_V || !m.pi_sqrtV)
    throw moment_unavailable_error(
        "geo_sigma_sq_bound: pi(V) and pi(V^{1/2}) needed for (ii)");
  if (!m.fbar_norm)
    throw moment_unavailable_error("geo_sigma_sq_bound: ||fbar|| needed");
  const double sl = std::sqrt(p.lambda), sK = std::sqrt(p.K);
  const double unit = (1.0 + sl) / (1.0 - sl) * *m.pi_V +
                      2.0 * (sK - sl - p.beta) / (p.beta * (1.0 - sl)) *
                          *m.pi_sqrtV;
  return *m.fbar_norm * *m.fbar_norm * unit;
}

namespace detail {

// Bound on the second moment of a tour's |fbar| sum, per unit ||fbar||^2,
// for initial moments (mV, mSqrtV).
inline double geo_block_second_moment(const GeometricDriftParams& p,
                                      double mV, double mSqrtV) {
  const double sl = std::sqrt(p.lambda), sK = std::sqrt(p.K);
  const double om = 1.0 - sl;
  const double t1 = mV / (om * om);
  const double t2 = 2.0 * (sK - sl - p.beta) / (p.beta * om * om) * mSqrtV;
  const double t3 = (p.beta * (p.K - p.lambda - p.beta) +
                     2.0 * (sK - sl - p.beta) * (sK - sl - p.beta)) /
                    (p.beta * p.beta * om * om);
  return t1 + t2 + t3;
}

}  // namespace detail

// Drift-based bounds for geometrically ergodic chains. All four constants;
// the
// sigma and C1/C2 entries scale with fbar_norm (the V^{1/2}-norm of the
// centered target).
inline BoundComponents geo_bounds(const GeometricDriftParams& p,
                                  const MomentInputs& m,
                                  C0Variant c0_variant = C0Variant::sqrtV) {
  validate(p);
  if (!m.pi_V)
    throw moment_unavailable_error("geo_bounds: pi(V) needed for (i)/(ii)");
  if (!m.pi_sqrtV)
    throw moment_unavailable_error(
        "geo_bounds: pi(V^{1/2}) needed for (i')/(ii)");
  if (!m.xi_V)
    throw moment_unavailable_error("geo_bounds: xi(V) needed for (iii)");
  if (!m.xi_sqrtV)
    throw moment_unavailable_error("geo_bounds: xi(V^{1/2}) needed for (iii)");
  if (!m.fbar_norm)
    throw moment_unavailable_error(
        "geo_bounds: ||fbar||_{V^{1/2}} needed (supply f_norm and call "
        "geo_complementary)");

  const double sl = std::sqrt(p.lambda), sK = std::sqrt(p.K);
  const double fbar = *m.fbar_norm;

  BoundComponents out;
  out.provenance = m.provenance;

  // (ii)
  out.sigma_as_sq = geo_sigma_sq_bound(p, m);

  // (i) or (i')
  if (c0_variant == C0Variant::V) {
    out.c0 = p.lambda / (1.0 - p.lambda) * *m.pi_V +
             (p.K - p.lambda - p.beta) / (p.beta * (1.0 - p.lambda)) + 0.5;
  } else {
    out.c0 = sl / (1.0 - sl) * *m.pi_sqrtV +
             (sK - sl - p.beta) / (p.beta * (1.0 - sl)) + 0.5;
  }

  // (iii)
  out.c1 =
      fbar * std::sqrt(detail::geo_block_second_moment(p, *m.xi_V, *m.xi_sqrtV));

  // C2 needs xi P^n moments. Explicit values win; otherwise the preserved
  // caps apply whenever the initial moments sit below them (deterministic
  // start with V(x0) <= K/(1-lambda) in practice).
  double pnV, pnSqrtV;
  const double capV = geo_xi_pn_V_cap(p);
  const double capSqrtV = geo_xi_pn_sqrtV_cap(p);
  if (m.xi_pn_V && m.xi_pn_sqrtV) {
    pnV = *m.xi_pn_V;
    pnSqrtV = *m.xi_pn_sqrtV;
  } else if (*m.xi_V <= capV * (1.0 + 1e-12) &&
             *m.xi_sqrtV <= capSqrtV * (1.0 + 1e-12)) {
    pnV = capV;
    pnSqrtV = capSqrtV;
  } else {
    throw moment_unavailable_error(
        "geo_bounds: xi P^n moments needed for (iv); initial moments exceed "
        "the K/(1-lambda) caps, supply xi_pn_V and xi_pn_sqrtV");
  }
  out.c2 = fbar * std::sqrt(detail::geo_block_second_moment(p, pnV, pnSqrtV));

  validate(out);
  return out;
}

}  // namespace mcmc_certify
