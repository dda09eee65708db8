#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcmc_certify/errors.hpp"

namespace mcmc_certify {

enum class MomentProvenance { known_pi_V, drift_only, empirical };

inline const char* to_string(MomentProvenance p) {
  switch (p) {
    case MomentProvenance::known_pi_V: return "known_pi_V";
    case MomentProvenance::drift_only: return "drift_only";
    case MomentProvenance::empirical: return "empirical";
  }
  return "?";
}

// Geometric drift: PV <= lambda*V off J, PV <= K on J, P(x,.) >= beta*nu on J.
struct GeometricDriftParams {
  double lambda = 0.0;
  double K = 0.0;
  double beta = 0.0;
  std::string small_set_label;
};

struct PolynomialDriftParams {
  double lambda = 0.0;
  double K = 0.0;
  double beta = 0.0;
  double alpha = 1.0;
  std::string small_set_label;
};

inline void validate(const GeometricDriftParams& p) {
  if (!(p.lambda > 0.0) || !(p.lambda < 1.0))
    throw invalid_input_error("geometric drift: lambda must be in (0,1)");
  if (!(p.K >= 1.0) || !std::isfinite(p.K))
    throw invalid_input_error("geometric drift: K must be finite and >= 1");
  if (!(p.beta > 0.0) || !(p.beta <= 1.0))
    throw invalid_input_error("geometric drift: beta must be in (0,1]");
  if (!(p.K > p.lambda))
    throw invalid_input_error("geometric drift: K must exceed lambda");
}

inline void validate(const PolynomialDriftParams& p) {
  if (!(p.lambda > 0.0) || !(p.lambda < 1.0))
    throw invalid_input_error("polynomial drift: lambda must be in (0,1)");
  if (!(p.K >= 1.0) || !std::isfinite(p.K))
    throw invalid_input_error("polynomial drift: K must be finite and >= 1");
  if (!(p.beta > 0.0) || !(p.beta <= 1.0))
    throw invalid_input_error("polynomial drift: beta must be in (0,1]");
  if (!(p.alpha > 2.0 / 3.0) || !(p.alpha <= 1.0))
    throw unsupported_regime_error(
        "polynomial drift: bounds require 2/3 < alpha <= 1");
}

// K >= lambda + beta is nowhere required, but several bound terms go
// negative without it. Soft check only.
inline std::vector<std::string> plausibility_warnings(
    const GeometricDriftParams& p) {
  std::vector<std::string> w;
  if (p.K - p.lambda - p.beta < 0.0)
    w.push_back("K - lambda - beta < 0: bound terms may go negative");
  if (std::sqrt(p.K) - std::sqrt(p.lambda) - p.beta < 0.0)
    w.push_back("sqrt(K) - sqrt(lambda) - beta < 0: sqrt-scale terms may go negative");
  return w;
}

// Stationary / initial moments a bound formula may need. Absent optionals can
// be filled by geo_complementary / poly_complementary.
struct MomentInputs {
  std::optional<double> pi_V;        // pi(V)
  std::optional<double> pi_sqrtV;    // pi(V^{1/2})
  std::map<double, double> pi_V_eta; // pi(V^eta), polynomial case
  std::optional<double> xi_V;        // xi(V)
  std::optional<double> xi_sqrtV;    // xi(V^{1/2})
  std::map<double, double> xi_V_eta; // xi(V^eta), polynomial case
  std::optional<double> xi_pn_V;     // sup_n xi P^n (V), when caller knows it
  std::optional<double> xi_pn_sqrtV;
  std::optional<double> fbar_norm;   // ||f - pi(f)|| in the relevant V-power norm
  std::optional<double> f_norm;      // ||f|| before centering
  double inf_V = 1.0;                // infimum of V over the state space
  MomentProvenance provenance = MomentProvenance::drift_only;
};

namespace detail {

inline double eta_lookup(const std::map<double, double>& m, double eta,
                         const char* what) {
  for (const auto& [k, v] : m)
    if (std::fabs(k - eta) < 1e-12) return v;
  throw moment_unavailable_error(std::string("moment unavailable: ") + what);
}

inline bool eta_present(const std::map<double, double>& m, double eta) {
  for (const auto& [k, v] : m)
    if (std::fabs(k - eta) < 1e-12) return true;
  return false;
}

}  // namespace detail

// Computed upper bounds for the four constants of the MSE inequality.
struct BoundComponents {
  double sigma_as_sq = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  MomentProvenance provenance = MomentProvenance::drift_only;
};

inline void validate(const BoundComponents& c) {
  if (!std::isfinite(c.sigma_as_sq) || !std::isfinite(c.c0) ||
      !std::isfinite(c.c1) || !std::isfinite(c.c2))
    throw invalid_input_error("bound components must be finite");
  if (c.sigma_as_sq < 0 || c.c0 < 0 || c.c1 < 0 || c.c2 < 0)
    throw invalid_input_error("bound components must be nonnegative");
}

struct ConfidencePlan {
  double epsilon = 0.0;
  double alpha_conf = 0.0;
  std::int64_t n_min = 0;
};

}  // namespace mcmc_certify
