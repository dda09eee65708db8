#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mcmc_certify/drift.hpp"
#include "mcmc_certify/errors.hpp"
#include "mcmc_certify/geo_bounds.hpp"
#include "mcmc_certify/rng.hpp"

namespace mcmc_certify::models {

struct PumpObservation {
  int pump = 0;
  double failures = 0.0;  // y_i
  double hours = 0.0;     // t_i (thousands of hours)
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Loads the pump failure data set. The file carries provenance comments and a
// "# fnv1a: <hex>" checksum over the canonical payload; absence or mismatch
// is an error so silently wrong numbers cannot slip in.
inline std::vector<PumpObservation> load_pump_data(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw data_file_error("pump data file not found: " + path +
                          " (set MCMC_CERTIFY_DATA to override)");
  std::vector<PumpObservation> rows;
  std::string line;
  std::string checksum_hex;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("fnv1a:");
      if (pos != std::string::npos) {
        std::istringstream ls(line.substr(pos + 6));
        ls >> checksum_hex;
      }
      continue;
    }
    if (!saw_header) {
      if (line != "pump,y,t")
        throw data_file_error("pump data: expected header 'pump,y,t', got '" +
                              line + "'");
      saw_header = true;
      continue;
    }
    PumpObservation o;
    char c1, c2;
    std::istringstream ls(line);
    if (!(ls >> o.pump >> c1 >> o.failures >> c2 >> o.hours) || c1 != ',' ||
        c2 != ',')
      throw data_file_error("pump data: malformed row '" + line + "'");
    rows.push_back(o);
  }
  if (rows.size() != 10)
    throw data_file_error("pump data: expected 10 rows, got " +
                          std::to_string(rows.size()));
  if (checksum_hex.empty())
    throw data_file_error("pump data: missing '# fnv1a:' checksum line");
  std::ostringstream canon;
  for (const auto& o : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d,%.0f,%.3f;", o.pump, o.failures, o.hours);
    canon << buf;
  }
  const std::uint64_t got = detail::fnv1a(canon.str());
  std::uint64_t want = 0;
  {
    std::istringstream hs(checksum_hex);
    hs >> std::hex >> want;
  }
  if (got != want) {
    std::ostringstream os;
    os << "pump data: checksum mismatch (file says " << checksum_hex
       << ", payload hashes to " << std::hex << got << ")";
    throw data_file_error(os.str());
  }
  return rows;
}

inline std::string default_pump_data_path() {
  if (const char* env = std::getenv("MCMC_CERTIFY_DATA")) return env;
#ifdef MCMC_CERTIFY_SOURCE_DIR
  return std::string(MCMC_CERTIFY_SOURCE_DIR) + "/data/pump_failures.csv";
#else
  return "data/pump_failures.csv";
#endif
}

struct PumpState {
  std::array<double, 10> phi{};
  double r = 1.0;
};

// Gibbs sampler for the Poisson-Gamma pump model with Rosenthal's small set
// J = {4 <= sum phi_i <= 9} and drift V = 1 + (sum phi_i - 6.5)^2. Target:
// posterior mean of one component, shifted: f = phi_i - b.
class PoissonGammaPump {
 public:
  using State = PumpState;

  explicit PoissonGammaPump(std::vector<PumpObservation> data, int component = 0,
                            double shift_b = 3.327)
      : data_(std::move(data)), component_(component), b_(shift_b) {
    if (data_.size() != 10)
      throw invalid_input_error("pump model: need the 10-row data set");
    if (component_ < 0 || component_ >= 10)
      throw invalid_input_error("pump model: component index out of range");
  }

  static constexpr double alpha_h = 1.802;
  static constexpr double sigma_h = 0.01;
  static constexpr double gamma_h = 1.0;

  // One full scan: r | phi, then every phi_i | r.
  State step(const State& s, RngStream& rng) const {
    State out = s;
    const double sum_phi =
        std::accumulate(s.phi.begin(), s.phi.end(), 0.0);
    out.r = rng.gamma(10.0 * alpha_h + sigma_h, gamma_h + sum_phi);
    if (!(out.r > 0.0)) throw error("pump model: nonpositive rate draw");
    for (int i = 0; i < 10; ++i)
      out.phi[i] = rng.gamma(data_[i].failures + alpha_h, data_[i].hours + out.r);
    return out;
  }

  double sum_phi(const State& s) const {
    return std::accumulate(s.phi.begin(), s.phi.end(), 0.0);
  }

  bool in_small_set(const State& s) const {
    const double t = sum_phi(s);
    return t >= 4.0 && t <= 9.0;
  }

  double beta() const { return rosenthal().beta; }
  double V(const State& s) const {
    const double t = sum_phi(s) - 6.5;
    return 1.0 + t * t;
  }
  double f(const State& s) const { return s.phi[component_] - b_; }
  double projection(const State& s) const { return sum_phi(s); }

  // Full-scan transition density (product of the gamma conditionals).
  double transition_density(const State& from, const State& to) const {
    const double sp = sum_phi(from);
    double lp = log_gamma_pdf(to.r, 10.0 * alpha_h + sigma_h, gamma_h + sp);
    for (int i = 0; i < 10; ++i)
      lp += log_gamma_pdf(to.phi[i], data_[i].failures + alpha_h,
                          data_[i].hours + to.r);
    return std::exp(lp);
  }

  static GeometricDriftParams rosenthal() {
    return {0.46, 3.3, 0.14, "J = {4 <= sum phi <= 9}"};
  }

  // Start with sum phi = 6.5 so the initial V is exactly 1.
  State v_one_start() const {
    State s;
    s.phi.fill(0.65);
    s.r = 1.0;
    return s;
  }

  // Moment recipe: pi(V) from its drift bound, pi(V^{1/2}) by Jensen on it,
  // ||f||_{V^{1/2}} <= b lifted to the centered norm.
  MomentInputs bound_moments() const {
    MomentInputs m;
    m.provenance = MomentProvenance::drift_only;
    const auto p = rosenthal();
    m.pi_V = geo_pi_V_bound(p);
    m.xi_V = 1.0;
    m.xi_sqrtV = 1.0;
    m.f_norm = b_;
    m.inf_V = 1.0;
    return geo_complementary(p, m);
  }

  const std::vector<PumpObservation>& data() const { return data_; }
  int component() const { return component_; }
  double shift() const { return b_; }

 private:
  static double log_gamma_pdf(double x, double shape, double rate) {
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
    return shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
           std::lgamma(shape);
  }

  std::vector<PumpObservation> data_;
  int component_;
  double b_;
};

}  // namespace mcmc_certify::models
