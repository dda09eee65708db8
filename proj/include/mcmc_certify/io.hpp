#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "mcmc_certify/drift.hpp"
#include "mcmc_certify/estimators.hpp"
#include "mcmc_certify/split_chain.hpp"

namespace mcmc_certify {

inline nlohmann::json to_json(const BoundComponents& c) {
  return {{"sigma_as_sq", c.sigma_as_sq},
          {"sigma_as", std::sqrt(c.sigma_as_sq)},
          {"c0", c.c0},
          {"c1", c.c1},
          {"c2", c.c2},
          {"provenance", to_string(c.provenance)}};
}

inline nlohmann::json to_json(const EstimateWithError& e) {
  return {{"value", e.value}, {"std_error", e.std_error}};
}

inline nlohmann::json to_json(const EmpiricalConstants& e) {
  return {{"sigma_as_sq", to_json(e.sigma_as_sq)},
          {"sigma_as", std::sqrt(e.sigma_as_sq.value)},
          {"c0", to_json(e.c0)},
          {"c1", to_json(e.c1)},
          {"c2", to_json(e.c2)},
          {"n_blocks", e.n_blocks},
          {"n_replicates", e.n_replicates},
          {"theta_plug_in", e.theta_plug_in},
          {"warnings", e.warnings}};
}

inline nlohmann::json to_json(const ConfidencePlan& p) {
  return {{"epsilon", p.epsilon},
          {"alpha", p.alpha_conf},
          {"n_min", p.n_min}};
}

inline nlohmann::json to_json(const MomentInputs& m) {
  nlohmann::json j;
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v) j[k] = *v;
  };
  put("pi_V", m.pi_V);
  put("pi_sqrtV", m.pi_sqrtV);
  put("xi_V", m.xi_V);
  put("xi_sqrtV", m.xi_sqrtV);
  put("fbar_norm", m.fbar_norm);
  put("f_norm", m.f_norm);
  j["inf_V"] = m.inf_V;
  j["provenance"] = to_string(m.provenance);
  if (!m.pi_V_eta.empty()) {
    nlohmann::json e;
    for (const auto& [k, v] : m.pi_V_eta) e[std::to_string(k)] = v;
    j["pi_V_eta"] = e;
  }
  if (!m.xi_V_eta.empty()) {
    nlohmann::json e;
    for (const auto& [k, v] : m.xi_V_eta) e[std::to_string(k)] = v;
    j["xi_V_eta"] = e;
  }
  return j;
}

// index, state projection, bell, block id (-1 before the first regeneration).
template <class State, class M>
void write_trajectory_csv(std::ostream& os, const RegenerationRecord<State>& r,
                          const M& model) {
  os << "index,state,bell,block_id\n";
  std::size_t block = 0;
  char buf[128];
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    while (block < r.blocks.size() &&
           static_cast<std::int64_t>(i) >= r.blocks[block].end)
      ++block;
    const bool in_blocks = !r.blocks.empty() &&
                           static_cast<std::int64_t>(i) >= r.blocks.front().start &&
                           block < r.blocks.size();
    const int bell = i < r.bells.size() ? static_cast<int>(r.bells[i]) : 0;
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%d,%lld\n", i,
                  model.projection(r.states[i]), bell,
                  in_blocks ? static_cast<long long>(block) : -1LL);
    os << buf;
  }
}

}  // namespace mcmc_certify
