#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <sstream>
#include <vector>

#include "mcmc_certify/errors.hpp"
#include "mcmc_certify/rng.hpp"

namespace mcmc_certify {

// Behavioral interface a chain must satisfy to be simulated with
// regenerations. Densities are required only by the split simulator; plain
// trajectories need step/V/f alone.
template <class M>
concept SplitChainModel = requires(const M m, const typename M::State& x,
                                   RngStream& rng) {
  typename M::State;
  { m.step(x, rng) } -> std::convertible_to<typename M::State>;
  { m.in_small_set(x) } -> std::convertible_to<bool>;
  { m.beta() } -> std::convertible_to<double>;
  { m.V(x) } -> std::convertible_to<double>;
  { m.f(x) } -> std::convertible_to<double>;
  { m.transition_density(x, x) } -> std::convertible_to<double>;
  { m.nu_density(x) } -> std::convertible_to<double>;
  { m.projection(x) } -> std::convertible_to<double>;
};

// One tour between consecutive regeneration epochs [start, end).
struct Block {
  std::int64_t start = 0;
  std::int64_t end = 0;
  double sum_f = 0.0;       // sum of f over the tour
  double sum_abs_fbar = 0.0;  // sum of |f - theta| (needs theta at record time)
  std::int64_t length() const { return end - start; }
};

template <class State>
struct RegenerationRecord {
  std::vector<State> states;          // X_0 .. X_{T_{R(n)}-1} (optional)
  std::vector<std::uint8_t> bells;    // bells[i] = Gamma_i
  std::vector<std::int64_t> regen_epochs;  // T_1 < T_2 < ... <= T_{R(n)}
  std::int64_t n = 0;
  std::int64_t r_of_n = 0;            // R(n): first index r with T_r > n
  std::vector<Block> blocks;          // partition of [T_1, T_{R(n)})
  double theta_used = 0.0;

  std::int64_t overshoot() const {    // Delta(n) = T_{R(n)} - n, diagnostic
    return regen_epochs.empty() ? 0 : regen_epochs.back() - n;
  }
};

struct SplitOptions {
  bool keep_states = true;
  std::optional<double> theta;  // pi(f); defaults to model.theta() if present
  double ratio_slack = 1e-9;    // tolerance before declaring a violation
};

namespace detail {

template <class M>
double model_theta(const M& m, const SplitOptions& opt) {
  if (opt.theta) return *opt.theta;
  if constexpr (requires { { m.theta() } -> std::convertible_to<double>; })
    return m.theta();
  else
    return 0.0;
}

}  // namespace detail

// Exact split-chain simulation. The trajectory follows the original kernel
// marginally; the bell at step k is drawn retrospectively with probability
// beta * nu(X_{k+1}) / p(X_{k+1} | X_k) whenever X_k is in the small set.
// Runs past n until T_{R(n)} so the overshoot segment exists.
template <class M>
  requires SplitChainModel<M>
RegenerationRecord<typename M::State> simulate_split(
    const M& model, std::int64_t n, typename M::State x0, RngStream& rng,
    SplitOptions opt = {}) {
  if (n < 1) throw invalid_input_error("simulate_split: n must be >= 1");
  const double beta = model.beta();
  const double theta = detail::model_theta(model, opt);

  RegenerationRecord<typename M::State> rec;
  rec.n = n;
  rec.theta_used = theta;

  typename M::State x = x0;
  if (opt.keep_states) rec.states.push_back(x);

  std::int64_t i = 0;  // index of current state x = X_i
  Block cur;
  bool in_block = false;  // inside [T_1, ...)
  for (;;) {
    typename M::State y = model.step(x, rng);
    bool bell = false;
    if (model.in_small_set(x)) {
      const double p = model.transition_density(x, y);
      const double nu = model.nu_density(y);
      if (nu > 0.0) {
        const double ratio = beta * nu / p;
        if (!(ratio <= 1.0 + opt.ratio_slack)) {
          std::ostringstream os;
          os << "model violates minorization: beta*nu/p = " << ratio
             << " at projection(x)=" << model.projection(x)
             << ", projection(y)=" << model.projection(y);
          throw minorization_violation_error(os.str());
        }
        bell = rng.uniform() < ratio;
      }
    }
    rec.bells.push_back(bell ? 1 : 0);

    if (in_block) {
      cur.sum_f += model.f(x);
      cur.sum_abs_fbar += std::fabs(model.f(x) - theta);
    }
    if (bell) {
      // regeneration at moment i+1
      const std::int64_t t = i + 1;
      rec.regen_epochs.push_back(t);
      if (in_block) {
        cur.end = t;
        rec.blocks.push_back(cur);
      }
      cur = Block{};
      cur.start = t;
      in_block = true;
      if (t > n) {
        rec.r_of_n = static_cast<std::int64_t>(rec.regen_epochs.size());
        if (opt.keep_states) rec.states.push_back(y);
        break;
      }
    }
    x = y;
    ++i;
    if (opt.keep_states) rec.states.push_back(x);
  }
  return rec;
}

// Plain-kernel trajectory, same length convention (X_0 .. X_{n}).
template <class M>
std::vector<typename M::State> simulate_plain(const M& model, std::int64_t n,
                                              typename M::State x0,
                                              RngStream& rng) {
  std::vector<typename M::State> xs;
  xs.reserve(static_cast<std::size_t>(n) + 1);
  xs.push_back(x0);
  for (std::int64_t i = 0; i < n; ++i) xs.push_back(model.step(xs.back(), rng));
  return xs;
}

}  // namespace mcmc_certify
