#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mcmc_certify/io.hpp"
#include "mcmc_certify/models/contracting_normals.hpp"
#include "mcmc_certify/models/hier_t.hpp"
#include "mcmc_certify/special_functions.hpp"
#include "mcmc_certify/split_chain.hpp"
#include "test_support.hpp"

using namespace mcmc_certify;
namespace ts = test_support;

namespace {

// beta = 1, J = whole space, nu = P(x, .) independent of x: every epoch
// regenerates.
struct IidNormal {
  using State = double;
  State step(State, RngStream& rng) const { return rng.normal(); }
  bool in_small_set(State) const { return true; }
  double beta() const { return 1.0; }
  double V(State x) const { return 1.0 + x * x; }
  double f(State x) const { return x; }
  double theta() const { return 0.0; }
  double projection(State x) const { return x; }
  double transition_density(State, State y) const { return normal_pdf(y); }
  double nu_density(State y) const { return normal_pdf(y); }
};

// Deliberately overstated beta: the claimed minorization is false.
struct LyingBeta : models::ContractingNormals {
  LyingBeta() : models::ContractingNormals(0.5, 1.7875) {}
  double beta() const { return 0.95; }
};

}  // namespace

TEST_CASE("independent sampling regenerates at every epoch") {
  IidNormal m;
  RngStream rng(1, 0);
  auto rec = simulate_split(m, 50, 0.25, rng);
  REQUIRE(rec.regen_epochs.size() == 51);  // T_1 = 1 ... T_51 = 51 > 50
  for (std::size_t k = 0; k < rec.regen_epochs.size(); ++k)
    CHECK(rec.regen_epochs[k] == static_cast<std::int64_t>(k) + 1);
  CHECK(rec.r_of_n == 51);
  for (const auto& b : rec.blocks) CHECK(b.length() == 1);
  CHECK(rec.overshoot() == 1);
}

TEST_CASE("record invariants on a hierarchical-t run") {
  models::HierT m(50, 3.91);
  RngStream rng(2, 0);
  const std::int64_t n = 2000;
  auto rec = simulate_split(m, n, 0.0, rng);

  // bells <-> epochs: Gamma_{k-1} = 1 iff k is a regeneration epoch
  std::vector<std::int64_t> from_bells;
  for (std::size_t i = 0; i < rec.bells.size(); ++i)
    if (rec.bells[i]) from_bells.push_back(static_cast<std::int64_t>(i) + 1);
  CHECK(from_bells == rec.regen_epochs);

  // R(n) is the first index past n
  REQUIRE(rec.r_of_n >= 1);
  CHECK(rec.regen_epochs[rec.r_of_n - 1] > n);
  if (rec.r_of_n >= 2) CHECK(rec.regen_epochs[rec.r_of_n - 2] <= n);

  // blocks partition [T_1, T_{R(n)})
  REQUIRE(!rec.blocks.empty());
  CHECK(rec.blocks.front().start == rec.regen_epochs.front());
  CHECK(rec.blocks.back().end == rec.regen_epochs.back());
  for (std::size_t k = 0; k + 1 < rec.blocks.size(); ++k)
    CHECK(rec.blocks[k].end == rec.blocks[k + 1].start);

  // block sums match the recorded states
  for (const auto& b : rec.blocks) {
    double s = 0.0;
    for (std::int64_t i = b.start; i < b.end; ++i)
      s += m.f(rec.states[static_cast<std::size_t>(i)]);
    CHECK(b.sum_f == Catch::Approx(s).margin(1e-12));
  }
}

TEST_CASE("regeneration rate equals beta pi(J) (Kac)") {
  models::HierT m(50, 3.91);
  RngStream rng(4, 0);
  const std::int64_t n = 200000;
  auto rec = simulate_split(m, n, 0.0, rng);
  const double steps = static_cast<double>(rec.regen_epochs.back());
  const double rate = static_cast<double>(rec.regen_epochs.size()) / steps;
  double in_j = 0.0;
  for (const auto& x : rec.states) in_j += m.in_small_set(x) ? 1.0 : 0.0;
  const double kac = m.beta() * in_j / static_cast<double>(rec.states.size());
  // batch the bell indicators for a serviceable stderr
  const int B = 50;
  std::vector<double> batch_diff;
  const std::size_t per = rec.bells.size() / B;
  for (int b = 0; b < B; ++b) {
    double r = 0.0, j = 0.0;
    for (std::size_t i = b * per; i < (b + 1) * per; ++i) {
      r += rec.bells[i];
      j += m.in_small_set(rec.states[i]) ? 1.0 : 0.0;
    }
    batch_diff.push_back((r - m.beta() * j) / static_cast<double>(per));
  }
  const double se = ts::sd(batch_diff) / std::sqrt(double(B));
  CHECK(std::fabs(rate - kac) <= 3.0 * se + 1e-4);
}

TEST_CASE("contracting normals: mean tour length is 1/(beta pi(J))") {
  models::ContractingNormals m(0.5, 1.7875);
  RngStream rng(6, 0);
  const std::int64_t n = 200000;
  auto rec = simulate_split(m, n, 0.0, rng);
  double tau_sum = 0.0;
  for (const auto& b : rec.blocks) tau_sum += static_cast<double>(b.length());
  const double mean_tau = tau_sum / static_cast<double>(rec.blocks.size());
  double in_j = 0.0;
  for (const auto& x : rec.states) in_j += m.in_small_set(x) ? 1.0 : 0.0;
  const double pij = in_j / static_cast<double>(rec.states.size());
  std::vector<double> taus;
  for (const auto& b : rec.blocks) taus.push_back(double(b.length()));
  const double se = ts::sd(taus) / std::sqrt(double(taus.size()));
  CHECK(std::fabs(mean_tau - 1.0 / (m.beta() * pij)) <=
        3.0 * se / (m.beta() * pij) + 5e-3);
}

TEST_CASE("split and plain marginals agree (two-sample KS)") {
  models::HierT m(50, 3.91);
  const int reps = 3000;
  const std::int64_t n = 25;
  std::vector<double> split_xn, plain_xn;
  for (int r = 0; r < reps; ++r) {
    RngStream rs(100, static_cast<std::uint64_t>(r));
    auto rec = simulate_split(m, n, 0.0, rs);
    split_xn.push_back(rec.states[n]);
    RngStream rp(200, static_cast<std::uint64_t>(r));
    auto xs = simulate_plain(m, n, 0.0, rp);
    plain_xn.push_back(xs[n]);
  }
  CHECK(ts::ks_two_sample_pvalue(split_xn, plain_xn) > 0.001);
}

TEST_CASE("tours are uncorrelated at lag one") {
  models::HierT m(50, 3.91);
  RngStream rng(8, 0);
  auto rec = simulate_split(m, 60000, 0.0, rng);
  std::vector<double> xi;
  for (const auto& b : rec.blocks) xi.push_back(b.sum_f);
  const double r1 = ts::lag1_autocorr(xi);
  CHECK(std::fabs(r1) <= 3.0 / std::sqrt(double(xi.size())));
}

TEST_CASE("overstated beta is detected") {
  LyingBeta m;
  RngStream rng(9, 0);
  CHECK_THROWS_AS(simulate_split(m, 20000, 0.0, rng),
                  minorization_violation_error);
}

TEST_CASE("trajectory csv marks pre-regeneration states with block -1") {
  models::ContractingNormals m(0.5, 1.7875);
  RngStream rng(12, 0);
  auto rec = simulate_split(m, 50, 0.0, rng);
  std::ostringstream os;
  write_trajectory_csv(os, rec, m);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  REQUIRE(line == "index,state,bell,block_id");
  std::int64_t idx = 0;
  while (std::getline(is, line)) {
    const auto last_comma = line.rfind(',');
    const long long block = std::stoll(line.substr(last_comma + 1));
    if (idx < rec.regen_epochs.front())
      CHECK(block == -1);
    else if (idx < rec.regen_epochs.back())
      CHECK(block >= 0);
    ++idx;
  }
  CHECK(idx == static_cast<std::int64_t>(rec.states.size()));
}

TEST_CASE("theta override feeds the block fbar sums") {
  IidNormal m;
  RngStream rng(10, 0);
  SplitOptions opt;
  opt.theta = 0.5;
  auto rec = simulate_split(m, 100, 0.0, rng, opt);
  CHECK(rec.theta_used == 0.5);
  for (const auto& b : rec.blocks) {
    double s = 0.0;
    for (std::int64_t i = b.start; i < b.end; ++i)
      s += std::fabs(m.f(rec.states[static_cast<std::size_t>(i)]) - 0.5);
    CHECK(b.sum_abs_fbar == Catch::Approx(s).margin(1e-12));
  }
}
