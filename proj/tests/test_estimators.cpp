#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mcmc_certify/estimators.hpp"
#include "mcmc_certify/models/hier_t.hpp"
#include "mcmc_certify/special_functions.hpp"
#include "test_support.hpp"

using namespace mcmc_certify;

namespace {

// beta = 1 chain whose f is identically theta.
struct ConstF {
  using State = double;
  State step(State, RngStream& rng) const { return rng.normal(); }
  bool in_small_set(State) const { return true; }
  double beta() const { return 1.0; }
  double V(State x) const { return 1.0 + x * x; }
  double f(State) const { return 2.5; }
  double theta() const { return 2.5; }
  double projection(State x) const { return x; }
  double transition_density(State, State y) const { return normal_pdf(y); }
  double nu_density(State y) const { return normal_pdf(y); }
};

}  // namespace

TEST_CASE("centered f gives exactly zero variance estimates") {
  ConstF m;
  EstimatorOptions opt;
  auto s = estimate_sigma_as(m, 0.0, 2000, 3, opt);
  CHECK(s.value == 0.0);
  auto est = estimate_constants(m, 0.0, 50, 1000, 2000, 3, opt);
  CHECK(est.c1.value == 0.0);
  CHECK(est.c2.value == 0.0);
  // T == 1 always, so C0 = 1 - 1/2 exactly
  CHECK(est.c0.value == Catch::Approx(0.5).margin(1e-15));
  CHECK(est.c0.std_error == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("records-based sigma estimate pools blocks across trajectories") {
  models::HierT m(50, 3.91);
  std::vector<RegenerationRecord<double>> recs;
  for (std::uint64_t s = 0; s < 8; ++s) {
    RngStream rng(400 + s, 0);
    recs.push_back(simulate_split(m, 4000, 0.0, rng, {false, {}, 1e-9}));
  }
  auto est = estimate_sigma_as(recs, 0.0);
  CHECK(std::fabs(est.value - 50.0 / 47.0) <= 4.0 * est.std_error);
  CHECK_THROWS_AS(estimate_sigma_as(std::vector<RegenerationRecord<double>>{},
                                    0.0),
                  insufficient_data_error);
}

TEST_CASE("insufficient data is reported") {
  ConstF m;
  EstimatorOptions opt;
  opt.min_blocks = 1000;
  CHECK_THROWS_AS(estimate_sigma_as(m, 0.0, 200, 3, opt),
                  insufficient_data_error);
  CHECK_THROWS_AS(estimate_constants(m, 0.0, 50, 10, 2000, 3, opt),
                  insufficient_data_error);
}

TEST_CASE("rmse of a constant estimator is zero") {
  ConstF m;
  auto r = estimate_rmse(m, 50, 200, 0.0, 2.5, 5, {});
  CHECK(r.value == 0.0);
}

TEST_CASE("hier-t empirical constants reproduce the published actuals") {
  models::HierT m(50, 3.9146280202572186);
  EstimatorOptions opt;
  opt.threads = 4;
  auto est = estimate_constants(m, 0.0, 100, 6000, 20000, 101, opt);
  // published actual values: C0 = 0.568, C1 = 0.125, C2 = 1.083
  CHECK(std::fabs(est.c0.value - 0.568) <= 4.0 * est.c0.std_error + 1e-3);
  CHECK(std::fabs(est.c1.value - 0.125) <= 4.0 * est.c1.std_error + 1e-3);
  CHECK(std::fabs(est.c2.value - 1.083) <= 4.0 * est.c2.std_error + 5e-3);
  CHECK(std::fabs(est.sigma_as_sq.value - 50.0 / 47.0) <=
        4.0 * est.sigma_as_sq.std_error);
  CHECK(est.n_replicates == 6000);
  CHECK_FALSE(est.theta_plug_in);
}

TEST_CASE("results are bitwise independent of the worker count") {
  models::HierT m(50, 3.91);
  EstimatorOptions one;
  one.threads = 1;
  EstimatorOptions four;
  four.threads = 4;
  auto a = estimate_constants(m, 0.0, 50, 2000, 5000, 77, one);
  auto b = estimate_constants(m, 0.0, 50, 2000, 5000, 77, four);
  CHECK(a.sigma_as_sq.value == b.sigma_as_sq.value);
  CHECK(a.c0.value == b.c0.value);
  CHECK(a.c1.value == b.c1.value);
  CHECK(a.c2.value == b.c2.value);
  auto ra = estimate_rmse(m, 100, 500, 0.0, 0.0, 99, one);
  auto rb = estimate_rmse(m, 100, 500, 0.0, 0.0, 99, four);
  CHECK(ra.value == rb.value);
}

TEST_CASE("plug-in theta path is flagged") {
  // strip the known theta by wrapping
  struct NoTheta {
    using State = double;
    models::HierT inner{50, 3.91};
    State step(State x, RngStream& r) const { return inner.step(x, r); }
    bool in_small_set(State x) const { return inner.in_small_set(x); }
    double beta() const { return inner.beta(); }
    double V(State x) const { return inner.V(x); }
    double f(State x) const { return inner.f(x); }
    double projection(State x) const { return x; }
    double transition_density(State x, State y) const {
      return inner.transition_density(x, y);
    }
    double nu_density(State y) const { return inner.nu_density(y); }
  };
  NoTheta m;
  EstimatorOptions opt;
  opt.threads = 2;
  auto est = estimate_constants(m, 0.0, 50, 1000, 8000, 55, opt);
  CHECK(est.theta_plug_in);
  CHECK(std::fabs(est.sigma_as_sq.value - 50.0 / 47.0) <=
        4.0 * est.sigma_as_sq.std_error + 0.05);
}
