#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mcmc_certify/errors.hpp"
#include "mcmc_certify/pool.hpp"
#include "mcmc_certify/split_chain.hpp"

namespace mcmc_certify {

struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
};

struct EmpiricalConstants {
  EstimateWithError sigma_as_sq;  // hat sigma_as^2
  EstimateWithError c0;
  EstimateWithError c1;
  EstimateWithError c2;
  std::int64_t n_blocks = 0;
  std::int64_t n_replicates = 0;
  bool theta_plug_in = false;
  std::vector<std::string> warnings;
};

struct EstimatorOptions {
  std::int64_t min_blocks = 1000;
  unsigned threads = 1;
  std::int64_t batches = 64;  // fixed work partition, independent of threads
};

namespace detail {

struct BlockLite {
  double sum_f;
  double len;
};

// nu-distributed tours only: everything strictly after the first regeneration.
template <class M>
void collect_nu_blocks(const M& model, typename M::State x0, std::int64_t want,
                       RngStream& rng, std::vector<BlockLite>& out) {
  const double beta = model.beta();
  typename M::State x = x0;
  bool in_block = false;
  double s = 0.0;
  std::int64_t len = 0;
  std::int64_t got = 0;
  while (got < want) {
    typename M::State y = model.step(x, rng);
    bool bell = false;
    if (model.in_small_set(x)) {
      const double nu = model.nu_density(y);
      if (nu > 0.0) {
        const double ratio = beta * nu / model.transition_density(x, y);
        if (!(ratio <= 1.0 + 1e-9))
          throw minorization_violation_error(
              "collect_nu_blocks: beta*nu/p exceeded 1");
        bell = rng.uniform() < ratio;
      }
    }
    if (in_block) {
      s += model.f(x);
      ++len;
    }
    if (bell) {
      if (in_block) {
        out.push_back({s, static_cast<double>(len)});
        ++got;
      }
      in_block = true;
      s = 0.0;
      len = 0;
    }
    x = y;
  }
}

inline double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double sd_of(const std::vector<double>& v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / (static_cast<double>(v.size()) - 1.0));
}

}  // namespace detail

// Ratio estimator of the asymptotic variance: mean of Xi_k(fbar)^2 over
// mean of tau_k,
// nu-blocks only. Standard error by the delta method.
inline EstimateWithError sigma_as_from_blocks(
    const std::vector<detail::BlockLite>& blocks, double theta,
    std::int64_t min_blocks = 1000) {
  const auto m = static_cast<std::int64_t>(blocks.size());
  if (m < min_blocks)
    throw insufficient_data_error("estimate_sigma_as: fewer than min_blocks blocks");
  double sum_a = 0.0, sum_tau = 0.0;
  for (const auto& b : blocks) {
    const double xi = b.sum_f - theta * b.len;
    sum_a += xi * xi;
    sum_tau += b.len;
  }
  const double md = static_cast<double>(m);
  const double abar = sum_a / md, taubar = sum_tau / md;
  const double r = abar / taubar;
  double s2 = 0.0;
  for (const auto& b : blocks) {
    const double xi = b.sum_f - theta * b.len;
    const double d = xi * xi - r * b.len;
    s2 += d * d;
  }
  s2 /= (md - 1.0);
  return {r, std::sqrt(s2 / md) / taubar};
}

// Records-based form: pools the nu-blocks of already-simulated trajectories.
template <class State>
EstimateWithError estimate_sigma_as(
    const std::vector<RegenerationRecord<State>>& records, double theta,
    std::int64_t min_blocks = 1000) {
  std::vector<detail::BlockLite> blocks;
  for (const auto& rec : records)
    for (const auto& b : rec.blocks)
      blocks.push_back({b.sum_f, static_cast<double>(b.length())});
  return sigma_as_from_blocks(blocks, theta, min_blocks);
}

template <class M>
  requires SplitChainModel<M>
EstimateWithError estimate_sigma_as(const M& model, typename M::State x0,
                                    std::int64_t n_blocks, std::uint64_t seed,
                                    EstimatorOptions opt = {}) {
  const std::int64_t nb = std::min<std::int64_t>(opt.batches, n_blocks);
  const std::int64_t per = (n_blocks + nb - 1) / nb;
  auto parts = parallel_map<std::vector<detail::BlockLite>>(
      nb, opt.threads, [&](std::int64_t b) {
        RngStream rng(seed, 0x51000000ULL + static_cast<std::uint64_t>(b));
        std::vector<detail::BlockLite> out;
        out.reserve(static_cast<std::size_t>(per));
        detail::collect_nu_blocks(model, x0, per, rng, out);
        return out;
      });
  std::vector<detail::BlockLite> blocks;
  for (auto& p : parts) blocks.insert(blocks.end(), p.begin(), p.end());

  double theta;
  if constexpr (requires { { model.theta() } -> std::convertible_to<double>; }) {
    theta = model.theta();
  } else {
    // plug-in: grand block ratio (Kac identity)
    double sf = 0.0, st = 0.0;
    for (const auto& b : blocks) {
      sf += b.sum_f;
      st += b.len;
    }
    theta = sf / st;
  }
  return sigma_as_from_blocks(blocks, theta, opt.min_blocks);
}

// The non-leading constants C0, C1, C2 by direct simulation, plus sigma_as^2.
//  - C0: stationary-ish starts from long warm chains (10% burn-in, starts
//    thinned by a couple of mean regeneration cycles), time to first bell.
//  - C1: replicates from xi = delta_{x0}, squared first-tour |fbar| sums.
//  - C2: replicates from xi run to T_{R(n)}, squared overshoot-tour sums.
template <class M>
  requires SplitChainModel<M>
EmpiricalConstants estimate_constants(const M& model, typename M::State x0,
                                      std::int64_t n_for_c2,
                                      std::int64_t replicates,
                                      std::int64_t sigma_blocks,
                                      std::uint64_t seed,
                                      EstimatorOptions opt = {}) {
  if (replicates < 100)
    throw insufficient_data_error("estimate_constants: too few replicates");
  EmpiricalConstants out;
  out.n_replicates = replicates;
  out.n_blocks = sigma_blocks;

  double theta = 0.0;
  bool have_theta = false;
  if constexpr (requires { { model.theta() } -> std::convertible_to<double>; }) {
    theta = model.theta();
    have_theta = true;
  }
  out.theta_plug_in = !have_theta;

  // sigma_as^2 (and the plug-in theta when the model does not know pi(f))
  {
    const std::int64_t nb = std::min<std::int64_t>(opt.batches, sigma_blocks);
    const std::int64_t per = (sigma_blocks + nb - 1) / nb;
    auto parts = parallel_map<std::vector<detail::BlockLite>>(
        nb, opt.threads, [&](std::int64_t b) {
          RngStream rng(seed, 0x51000000ULL + static_cast<std::uint64_t>(b));
          std::vector<detail::BlockLite> blocks;
          blocks.reserve(static_cast<std::size_t>(per));
          detail::collect_nu_blocks(model, x0, per, rng, blocks);
          return blocks;
        });
    std::vector<detail::BlockLite> blocks;
    for (auto& p : parts) blocks.insert(blocks.end(), p.begin(), p.end());
    if (!have_theta) {
      double sf = 0.0, st = 0.0;
      for (const auto& b : blocks) {
        sf += b.sum_f;
        st += b.len;
      }
      theta = sf / st;
    }
    out.sigma_as_sq = sigma_as_from_blocks(blocks, theta,
                                           std::min<std::int64_t>(1000, sigma_blocks));
  }

  const double beta = model.beta();

  // C0: E_pi T - 1/2
  {
    const std::int64_t nb = std::min<std::int64_t>(opt.batches, replicates);
    const std::int64_t per = (replicates + nb - 1) / nb;
    auto parts = parallel_map<std::vector<double>>(
        nb, opt.threads, [&](std::int64_t b) {
          RngStream rng(seed, 0xC0000000ULL + static_cast<std::uint64_t>(b));
          std::vector<double> ts;
          ts.reserve(static_cast<std::size_t>(per));
          // warm chain: burn 10%, then sample T at thinned time points
          RegenerationRecord<typename M::State> rec;
          const std::int64_t probe = 200;
          RngStream warm(seed, 0xAA000000ULL + static_cast<std::uint64_t>(b));
          auto probe_rec = simulate_split(model, probe, x0, warm,
                                          SplitOptions{false, theta, 1e-9});
          const double mean_tau =
              probe_rec.regen_epochs.size() > 1
                  ? static_cast<double>(probe_rec.regen_epochs.back() -
                                        probe_rec.regen_epochs.front()) /
                        (static_cast<double>(probe_rec.regen_epochs.size()) - 1.0)
                  : 4.0;
          const auto gap = static_cast<std::int64_t>(std::ceil(2.0 * mean_tau)) + 1;
          const std::int64_t horizon = per * gap;
          const std::int64_t burn = horizon / 10 + 1;
          rec = simulate_split(model, burn + horizon + 1, x0, rng,
                               SplitOptions{false, theta, 1e-9});
          const auto& ep = rec.regen_epochs;
          for (std::int64_t j = 0; j < per; ++j) {
            const std::int64_t i = burn + j * gap;
            auto it = std::upper_bound(ep.begin(), ep.end(), i);
            if (it == ep.end()) break;  // cannot happen: last epoch > n
            ts.push_back(static_cast<double>(*it - i));
          }
          return ts;
        });
    std::vector<double> ts;
    std::vector<double> batch_means;
    for (auto& p : parts) {
      if (!p.empty()) batch_means.push_back(detail::mean_of(p));
      ts.insert(ts.end(), p.begin(), p.end());
    }
    const double m = detail::mean_of(ts);
    // thinned in-chain samples are mildly correlated; batches are whole
    // independent chains, so batch means give an honest stderr
    const double se =
        batch_means.size() > 1
            ? detail::sd_of(batch_means, detail::mean_of(batch_means)) /
                  std::sqrt(static_cast<double>(batch_means.size()))
            : 0.0;
    out.c0 = {m - 0.5, se};
    // warm-up diagnostic: first half of the batches vs second half
    const std::size_t half = batch_means.size() / 2;
    if (half >= 2) {
      std::vector<double> h1(batch_means.begin(), batch_means.begin() + half);
      std::vector<double> h2(batch_means.begin() + half, batch_means.end());
      const double m1 = detail::mean_of(h1), m2 = detail::mean_of(h2);
      const double seh = std::sqrt(
          std::pow(detail::sd_of(h1, m1), 2) / static_cast<double>(h1.size()) +
          std::pow(detail::sd_of(h2, m2), 2) / static_cast<double>(h2.size()));
      if (std::fabs(m1 - m2) > 3.0 * seh)
        out.warnings.push_back(
            "C0 warm-up diagnostic: batch halves differ beyond 3 stderr");
    }
  }

  // C1 and C2 from xi = delta_{x0}
  {
    const std::int64_t nb = std::min<std::int64_t>(opt.batches, replicates);
    const std::int64_t per = (replicates + nb - 1) / nb;
    struct Sums {
      std::vector<double> c1sq, c2sq;
    };
    auto parts = parallel_map<Sums>(nb, opt.threads, [&](std::int64_t b) {
      Sums s;
      s.c1sq.reserve(static_cast<std::size_t>(per));
      s.c2sq.reserve(static_cast<std::size_t>(per));
      for (std::int64_t r = 0; r < per; ++r) {
        RngStream rng(seed, 0xC1000000ULL +
                                static_cast<std::uint64_t>(b * per + r));
        typename M::State x = x0;
        double first_tour = 0.0, overshoot_tour = 0.0;
        std::int64_t t1 = -1;
        std::int64_t i = 0;
        for (;;) {
          typename M::State y = model.step(x, rng);
          bool bell = false;
          if (model.in_small_set(x)) {
            const double nu = model.nu_density(y);
            if (nu > 0.0)
              bell = rng.uniform() <
                     beta * nu / model.transition_density(x, y);
          }
          if (t1 < 0) first_tour += std::fabs(model.f(x) - theta);
          if (i >= n_for_c2) overshoot_tour += std::fabs(model.f(x) - theta);
          if (bell) {
            const std::int64_t t = i + 1;
            if (t1 < 0) t1 = t;
            if (t > n_for_c2) break;
          }
          x = y;
          ++i;
        }
        s.c1sq.push_back(first_tour * first_tour);
        s.c2sq.push_back(t1 < n_for_c2 ? overshoot_tour * overshoot_tour : 0.0);
      }
      return s;
    });
    std::vector<double> c1sq, c2sq;
    for (auto& p : parts) {
      c1sq.insert(c1sq.end(), p.c1sq.begin(), p.c1sq.end());
      c2sq.insert(c2sq.end(), p.c2sq.begin(), p.c2sq.end());
    }
    auto to_root = [](const std::vector<double>& v) {
      const double m = detail::mean_of(v);
      const double se = detail::sd_of(v, m) / std::sqrt(static_cast<double>(v.size()));
      const double root = std::sqrt(m);
      return EstimateWithError{root, root > 0 ? se / (2.0 * root) : std::sqrt(se)};
    };
    out.c1 = to_root(c1sq);
    out.c2 = to_root(c2sq);
  }
  return out;
}

// Plain-chain root-MSE of the ergodic average against a known theta.
template <class M>
EstimateWithError estimate_rmse(const M& model, std::int64_t n,
                                std::int64_t replicates, typename M::State x0,
                                double theta, std::uint64_t seed,
                                EstimatorOptions opt = {}) {
  const std::int64_t nb = std::min<std::int64_t>(opt.batches, replicates);
  const std::int64_t per = (replicates + nb - 1) / nb;
  auto parts = parallel_map<std::vector<double>>(
      nb, opt.threads, [&](std::int64_t b) {
        std::vector<double> sq;
        sq.reserve(static_cast<std::size_t>(per));
        for (std::int64_t r = 0; r < per; ++r) {
          RngStream rng(seed, 0x33000000ULL +
                                  static_cast<std::uint64_t>(b * per + r));
          typename M::State x = x0;
          double s = 0.0;
          for (std::int64_t i = 0; i < n; ++i) {
            s += model.f(x);
            x = model.step(x, rng);
          }
          const double err = s / static_cast<double>(n) - theta;
          sq.push_back(err * err);
        }
        return sq;
      });
  std::vector<double> sq;
  for (auto& p : parts) sq.insert(sq.end(), p.begin(), p.end());
  const double mse = detail::mean_of(sq);
  const double se_mse =
      detail::sd_of(sq, mse) / std::sqrt(static_cast<double>(sq.size()));
  const double rmse = std::sqrt(mse);
  return {rmse, rmse > 0 ? se_mse / (2.0 * rmse) : std::sqrt(se_mse)};
}

}  // namespace mcmc_certify
