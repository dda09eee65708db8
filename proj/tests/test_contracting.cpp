#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mcmc_certify/estimators.hpp"
#include "mcmc_certify/models/contracting_normals.hpp"
#include "test_support.hpp"

using namespace mcmc_certify;
using models::ContractingNormals;

namespace {

template <class Fn>
double simpson(Fn&& f, double lo, double hi, int n) {
  if (n % 2) ++n;
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("drift and regeneration parameters at the published point") {
  ContractingNormals m(0.5, 1.7875);
  const auto p = m.params();
  CHECK(p.lambda == Catch::Approx(0.6075552162091697).epsilon(1e-14));
  CHECK(p.K == Catch::Approx(2.5487890625).epsilon(1e-14));
  CHECK(p.beta == Catch::Approx(0.300104509977972).epsilon(1e-10));
}

TEST_CASE("c = 0 gives an iid chain") {
  ContractingNormals m(0.0, 1.7875);
  const auto p = m.params();
  // PV = 2 everywhere, so PV/V peaks at 2/(1+d^2) on the boundary
  CHECK(p.lambda == Catch::Approx(2.0 / (1.0 + 1.7875 * 1.7875)).epsilon(1e-14));
  CHECK(p.K == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("d -> infinity limits") {
  ContractingNormals m(0.5, 60.0);
  CHECK(m.params().beta < 1e-10);
  CHECK(m.params().lambda == Catch::Approx(0.25).margin(1e-3));
}

TEST_CASE("drift inequality holds pointwise on a grid") {
  ContractingNormals m(0.5, 1.7875);
  const auto p = m.params();
  for (double x = 1.7876; x < 120.0; x *= 1.01) {
    CHECK(m.PV(x) <= p.lambda * m.V(x) * (1.0 + 1e-12));
    CHECK(m.PV(-x) <= p.lambda * m.V(-x) * (1.0 + 1e-12));
  }
  for (double x = -1.7875; x <= 1.7875; x += 0.01)
    CHECK(m.PV(x) <= p.K * (1.0 + 1e-12));
}

TEST_CASE("minorization envelope integrates to beta over J") {
  ContractingNormals m(0.5, 1.7875);
  const double mass = simpson([&](double y) { return m.min_envelope(y); },
                              -1.7875, 1.7875, 40000);
  CHECK(mass == Catch::Approx(m.beta()).margin(1e-10));
  // and the normalized measure is a probability density on J
  const double numass = simpson([&](double y) { return m.nu_density(y); },
                                -1.7875, 1.7875, 40000);
  CHECK(numass == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("beta * nu never exceeds the transition density from J") {
  ContractingNormals m(0.5, 1.7875);
  RngStream rng(3, 0);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(-1.7875, 1.7875);
    const double y = rng.uniform(-1.7875, 1.7875);
    CHECK(m.beta() * m.nu_density(y) <=
          m.transition_density(x, y) * (1.0 + 1e-12));
  }
}

TEST_CASE("stationary variance of the mean: brute-force cross-check at n = 3") {
  const double c = 0.5;
  double brute = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) brute += std::pow(c, std::abs(i - j));
  brute /= 9.0;
  CHECK(ContractingNormals::stationary_mean_variance(c, 3) ==
        Catch::Approx(brute).epsilon(1e-15));
}

TEST_CASE("exact confidence plan") {
  CHECK(ContractingNormals::exact_plan_n_min(0.5, 0.1, 0.1) == 811);
  // iid case: least n with 2 Phi(eps sqrt(n)) - 1 > 1 - alpha
  const std::int64_t n0 = ContractingNormals::exact_plan_n_min(0.0, 0.1, 0.1);
  CHECK(n0 == 271);
  CHECK(2.0 * normal_cdf(0.1 * std::sqrt(double(n0))) - 1.0 > 0.9);
  CHECK(2.0 * normal_cdf(0.1 * std::sqrt(double(n0 - 1))) - 1.0 <= 0.9);
}

TEST_CASE("moment sets for the two provenances") {
  ContractingNormals m(0.5, 1.7875);
  auto kn = m.bound_moments(MomentProvenance::known_pi_V);
  CHECK(*kn.pi_V == 2.0);
  CHECK(*kn.pi_sqrtV == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));
  auto dr = m.bound_moments(MomentProvenance::drift_only);
  CHECK(*dr.pi_V == Catch::Approx(4.946505).margin(1e-5));
  CHECK(*dr.pi_sqrtV == Catch::Approx(std::sqrt(*dr.pi_V)).epsilon(1e-15));
}

TEST_CASE("regenerative sigma estimate matches the AR(1) asymptotic variance") {
  // sigma_as^2 = (1+c)/(1-c) = 3 for f(x) = x at c = 0.5
  ContractingNormals m(0.5, 1.7875);
  EstimatorOptions opt;
  opt.threads = 4;
  auto s = estimate_sigma_as(m, 0.0, 40000, 23, opt);
  CHECK(std::fabs(s.value - 3.0) <= 3.0 * s.std_error);
}
