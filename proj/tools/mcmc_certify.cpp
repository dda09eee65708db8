// Command-line front end: bound reports, split-chain simulation, empirical
// constants, confidence planning, parameter sweeps and the reference tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcmc_certify/mcmc_certify.hpp"

namespace mc = mcmc_certify;
using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  return j;
}

// Unknown fields are rejected with the offending path.
void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k))
      throw ConfigError("unknown field '" + where + k + "'");
}

double need_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError("missing field '" + where + key + "'");
  if (!j[key].is_number()) throw ConfigError("field '" + where + key + "' must be a number");
  return j[key].get<double>();
}

double number_or(const json& j, const std::string& key, double dflt) {
  if (!j.contains(key)) return dflt;
  return j[key].get<double>();
}

std::string fmt_sig(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string fmt_pm(const mc::EstimateWithError& e, int digits = 4) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*g +- %.2g", digits, e.value, e.std_error);
  return buf;
}

// ---------------------------------------------------------------------------
// model wiring

enum class ModelKind { hier_t, contracting_normals, pump, toy_poly };

struct ModelConfig {
  ModelKind kind;
  json params;
};

ModelConfig parse_model(const json& cfg) {
  if (!cfg.contains("model")) throw ConfigError("missing field 'model'");
  const json& m = cfg["model"];
  if (!m.is_object() || !m.contains("name"))
    throw ConfigError("'model' must be an object with a 'name'");
  const std::string name = m["name"].get<std::string>();
  if (name == "hier_t") {
    check_keys(m, {"name", "t", "a"}, "model.");
    return {ModelKind::hier_t, m};
  }
  if (name == "contracting_normals") {
    check_keys(m, {"name", "c", "d"}, "model.");
    return {ModelKind::contracting_normals, m};
  }
  if (name == "pump") {
    check_keys(m, {"name", "component", "shift"}, "model.");
    return {ModelKind::pump, m};
  }
  if (name == "toy_poly") {
    check_keys(m, {"name", "alpha", "lambda", "delta", "w_max"}, "model.");
    return {ModelKind::toy_poly, m};
  }
  throw ConfigError("unknown model '" + name + "'");
}

mc::models::HierT make_hier_t(const json& m) {
  return mc::models::HierT(static_cast<int>(need_number(m, "t", "model.")),
                           need_number(m, "a", "model."));
}

mc::models::ContractingNormals make_cn(const json& m) {
  return mc::models::ContractingNormals(need_number(m, "c", "model."),
                                        need_number(m, "d", "model."));
}

mc::models::PoissonGammaPump make_pump(const json& m) {
  const int comp = m.contains("component") ? m["component"].get<int>() - 1 : 0;
  const double shift = number_or(m, "shift", 3.327);
  return mc::models::PoissonGammaPump(
      mc::models::load_pump_data(mc::models::default_pump_data_path()), comp,
      shift);
}

mc::models::ToyPoly make_toy(const json& m) {
  return mc::models::ToyPoly(need_number(m, "alpha", "model."),
                             number_or(m, "lambda", 0.5),
                             number_or(m, "delta", 0.5),
                             number_or(m, "w_max", 0.7));
}

mc::MomentProvenance parse_provenance(const json& moments) {
  const std::string p = moments.contains("provenance")
                            ? moments["provenance"].get<std::string>()
                            : "drift_only";
  if (p == "drift_only") return mc::MomentProvenance::drift_only;
  if (p == "known_pi_V") return mc::MomentProvenance::known_pi_V;
  throw ConfigError("moments.provenance must be 'drift_only' or 'known_pi_V'");
}

void apply_moment_overrides(mc::MomentInputs& mi, const json& moments) {
  auto set = [&](const char* k, std::optional<double>& slot) {
    if (moments.contains(k)) slot = moments[k].get<double>();
  };
  set("pi_V", mi.pi_V);
  set("pi_sqrtV", mi.pi_sqrtV);
  set("xi_V", mi.xi_V);
  set("xi_sqrtV", mi.xi_sqrtV);
  set("fbar_norm", mi.fbar_norm);
  set("f_norm", mi.f_norm);
  if (moments.contains("inf_V")) mi.inf_V = moments["inf_V"].get<double>();
}

// Bound components for any geometric model in this bundle.
struct GeoSetup {
  mc::GeometricDriftParams params;
  mc::MomentInputs moments;
};

GeoSetup geo_setup(const ModelConfig& mcfg, const json& moments_cfg) {
  const auto prov = parse_provenance(moments_cfg);
  GeoSetup out;
  switch (mcfg.kind) {
    case ModelKind::hier_t: {
      auto model = make_hier_t(mcfg.params);
      out.params = model.drift_params();
      out.moments = model.bound_moments(prov);
      break;
    }
    case ModelKind::contracting_normals: {
      auto model = make_cn(mcfg.params);
      out.params = model.params();
      out.moments = model.bound_moments(prov);
      break;
    }
    case ModelKind::pump: {
      auto model = make_pump(mcfg.params);
      out.params = mc::models::PoissonGammaPump::rosenthal();
      out.moments = model.bound_moments();
      break;
    }
    default:
      throw ConfigError("model is not geometrically ergodic; use poly tasks");
  }
  apply_moment_overrides(out.moments, moments_cfg);
  out.moments = mc::geo_complementary(out.params, out.moments);
  return out;
}

// ---------------------------------------------------------------------------
// subcommands

std::string cmd_bound(const json& cfg) {
  check_keys(cfg, {"model", "moments", "n", "confidence", "c0_variant"}, "");
  const auto mcfg = parse_model(cfg);
  const json moments_cfg = cfg.value("moments", json::object());
  if (moments_cfg.is_object())
    check_keys(moments_cfg,
               {"provenance", "pi_V", "pi_sqrtV", "xi_V", "xi_sqrtV",
                "fbar_norm", "f_norm", "inf_V"},
               "moments.");

  json out;
  out["inputs"] = cfg;
  mc::BoundComponents comp;
  if (mcfg.kind == ModelKind::toy_poly) {
    auto model = make_toy(mcfg.params);
    auto mi = model.bound_moments();
    apply_moment_overrides(mi, moments_cfg);
    comp = mc::poly_bounds(model.params(), mi);
    out["moments"] = mc::to_json(mi);
    const auto p = model.params();
    out["drift"] = {{"lambda", p.lambda}, {"K", p.K}, {"beta", p.beta},
                    {"alpha", p.alpha}};
  } else {
    auto setup = geo_setup(mcfg, moments_cfg);
    mc::C0Variant v = mc::C0Variant::sqrtV;
    if (cfg.contains("c0_variant")) {
      const std::string s = cfg["c0_variant"].get<std::string>();
      if (s == "V")
        v = mc::C0Variant::V;
      else if (s != "sqrtV")
        throw ConfigError("c0_variant must be 'V' or 'sqrtV'");
    }
    for (const auto& w : mc::plausibility_warnings(setup.params))
      std::cerr << "warning: " << w << "\n";
    comp = mc::geo_bounds(setup.params, setup.moments, v);
    out["moments"] = mc::to_json(setup.moments);
    out["drift"] = {{"lambda", setup.params.lambda},
                    {"K", setup.params.K},
                    {"beta", setup.params.beta}};
  }
  out["components"] = mc::to_json(comp);

  if (cfg.contains("n")) {
    json rb = json::object();
    for (const auto& nv : cfg["n"]) {
      const auto n = nv.get<std::int64_t>();
      rb[std::to_string(n)] = mc::combine_mse_bound(comp, n);
    }
    out["rmse_bounds"] = rb;
  }
  if (cfg.contains("confidence")) {
    const json& c = cfg["confidence"];
    check_keys(c, {"epsilon", "alpha"}, "confidence.");
    const double eps = need_number(c, "epsilon", "confidence.");
    const double alpha = need_number(c, "alpha", "confidence.");
    auto plan = mc::confidence_plan(
        [&](std::int64_t n) { return mc::combine_mse_bound(comp, n); }, eps,
        alpha);
    out["confidence"] = mc::to_json(plan);
  }
  return out.dump(2) + "\n";
}

std::string cmd_confidence(const json& cfg) {
  check_keys(cfg, {"model", "moments", "epsilon", "alpha"}, "");
  json sub = cfg;
  sub.erase("epsilon");
  sub.erase("alpha");
  sub["confidence"] = {{"epsilon", need_number(cfg, "epsilon", "")},
                       {"alpha", need_number(cfg, "alpha", "")}};
  return cmd_bound(sub);
}

template <class M>
std::string simulate_to_csv(const M& model, typename M::State x0,
                            std::int64_t n, std::uint64_t seed) {
  mc::RngStream rng(seed, 0);
  auto rec = mc::simulate_split(model, n, x0, rng);
  std::ostringstream os;
  mc::write_trajectory_csv(os, rec, model);
  return os.str();
}

std::string cmd_simulate(const json& cfg, std::uint64_t seed) {
  check_keys(cfg, {"model", "n", "x0"}, "");
  const auto mcfg = parse_model(cfg);
  const auto n = static_cast<std::int64_t>(need_number(cfg, "n", ""));
  const double x0 = number_or(cfg, "x0", 0.0);
  switch (mcfg.kind) {
    case ModelKind::hier_t:
      return simulate_to_csv(make_hier_t(mcfg.params), x0, n, seed);
    case ModelKind::contracting_normals:
      return simulate_to_csv(make_cn(mcfg.params), x0, n, seed);
    case ModelKind::toy_poly:
      return simulate_to_csv(make_toy(mcfg.params), x0 < 1.0 ? 1.5 : x0, n, seed);
    case ModelKind::pump:
      throw ConfigError(
          "pump model has no tractable regeneration measure; 'simulate' "
          "supports hier_t, contracting_normals and toy_poly");
  }
  throw ConfigError("unreachable");
}

template <class M>
json constants_to_json(const M& model, typename M::State x0, const json& cfg,
                       std::uint64_t seed, unsigned threads) {
  const auto reps = static_cast<std::int64_t>(number_or(cfg, "replicates", 10000));
  const auto n_c2 = static_cast<std::int64_t>(number_or(cfg, "n_for_c2", 100));
  const auto blocks = static_cast<std::int64_t>(number_or(cfg, "sigma_blocks", 100000));
  mc::EstimatorOptions opt;
  opt.threads = threads;
  auto est = mc::estimate_constants(model, x0, n_c2, reps, blocks, seed, opt);
  return mc::to_json(est);
}

std::string cmd_constants(const json& cfg, std::uint64_t seed, unsigned threads) {
  check_keys(cfg, {"model", "replicates", "n_for_c2", "sigma_blocks", "x0"}, "");
  const auto mcfg = parse_model(cfg);
  const double x0 = number_or(cfg, "x0", 0.0);
  json out;
  switch (mcfg.kind) {
    case ModelKind::hier_t:
      out = constants_to_json(make_hier_t(mcfg.params), x0, cfg, seed, threads);
      break;
    case ModelKind::contracting_normals:
      out = constants_to_json(make_cn(mcfg.params), x0, cfg, seed, threads);
      break;
    case ModelKind::toy_poly:
      out = constants_to_json(make_toy(mcfg.params), x0 < 1.0 ? 1.5 : x0, cfg,
                              seed, threads);
      break;
    case ModelKind::pump:
      throw ConfigError("'constants' needs regeneration; pump is unsupported");
  }
  return out.dump(2) + "\n";
}

std::string cmd_sweep(const json& cfg, std::string format) {
  check_keys(cfg, {"model", "param", "range", "points", "objective"}, "");
  const auto mcfg = parse_model(cfg);
  const std::string param = cfg.value("param", "a");
  const std::string objective = cfg.value("objective", "sigma_bound_known_piV");
  if (!cfg.contains("range") || !cfg["range"].is_array() ||
      cfg["range"].size() != 2)
    throw ConfigError("sweep needs 'range': [lo, hi]");
  const double lo = cfg["range"][0].get<double>();
  const double hi = cfg["range"][1].get<double>();
  if (!(lo <= hi)) throw ConfigError("sweep range is empty");
  const int points = static_cast<int>(number_or(cfg, "points", 400));

  const bool known = objective == "sigma_bound_known_piV";
  if (!known && objective != "sigma_bound_drift_only")
    throw ConfigError("objective must be sigma_bound_known_piV or sigma_bound_drift_only");
  const auto prov = known ? mc::MomentProvenance::known_pi_V
                          : mc::MomentProvenance::drift_only;

  std::function<double(double)> obj;
  if (mcfg.kind == ModelKind::hier_t) {
    if (param != "a") throw ConfigError("hier_t sweeps over 'a'");
    const int t = static_cast<int>(need_number(mcfg.params, "t", "model."));
    obj = [t, prov](double a) {
      if (a <= mc::models::HierT::admissibility_threshold(t)) return std::nan("");
      try {
        mc::models::HierT m(t, a);
        return std::sqrt(
            mc::geo_sigma_sq_bound(m.drift_params(), m.bound_moments(prov)));
      } catch (const mc::error&) {
        return std::nan("");
      }
    };
  } else if (mcfg.kind == ModelKind::contracting_normals) {
    if (param != "d") throw ConfigError("contracting_normals sweeps over 'd'");
    const double c = need_number(mcfg.params, "c", "model.");
    obj = [c, prov](double d) {
      if (d <= 1.0) return std::nan("");
      try {
        mc::models::ContractingNormals m(c, d);
        return std::sqrt(
            mc::geo_sigma_sq_bound(m.params(), m.bound_moments(prov)));
      } catch (const mc::error&) {
        return std::nan("");
      }
    };
  } else {
    throw ConfigError("sweep supports hier_t and contracting_normals");
  }

  std::ostringstream os;
  os << param << "," << objective << "\n";
  char buf[80];
  for (int i = 0; i < points; ++i) {
    const double x =
        points == 1 ? lo : lo + (hi - lo) * i / static_cast<double>(points - 1);
    const double v = obj(x);
    std::snprintf(buf, sizeof buf, "%.10g,%.10g\n", x, v);
    os << buf;
  }
  if (lo < hi) {
    auto best = mc::optimize_small_set(obj, lo, hi, points);
    std::snprintf(buf, sizeof buf, "# minimum: %s=%.6g value=%.6g\n",
                  param.c_str(), best.x, best.value);
    os << buf;
  }
  (void)format;
  return os.str();
}

// Shared by tables 1-3: sigma bound at the optimal small-set width.
struct HierOptimum {
  double a;
  mc::BoundComponents comp;
};

HierOptimum hier_optimum(int t, mc::MomentProvenance prov) {
  const double lo = mc::models::HierT::admissibility_threshold(t) + 1e-3;
  auto obj = [&](double a) {
    try {
      mc::models::HierT m(t, a);
      return std::sqrt(
          mc::geo_sigma_sq_bound(m.drift_params(), m.bound_moments(prov)));
    } catch (const mc::error&) {
      return std::nan("");
    }
  };
  auto best = mc::optimize_small_set(obj, lo, 50.0);
  mc::models::HierT m(t, best.x);
  return {best.x, mc::geo_bounds(m.drift_params(), m.bound_moments(prov))};
}

std::string render_rows(const std::vector<std::vector<std::string>>& rows,
                        const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i)
        os << r[i] << (i + 1 < r.size() ? "," : "");
      os << "\n";
    }
    return os.str();
  }
  std::vector<std::size_t> w;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (w.size() <= i) w.resize(i + 1, 0);
      w[i] = std::max(w[i], r[i].size());
    }
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << r[i];
      if (i + 1 < r.size())
        os << std::string(w[i] - r[i].size() + 2, ' ');
    }
    os << "\n";
  }
  return os.str();
}

std::string cmd_table(const json& cfg, std::uint64_t seed, unsigned threads,
                      const std::string& format) {
  check_keys(cfg, {"which", "replicates"}, "");
  const int which = static_cast<int>(need_number(cfg, "which", ""));
  const auto reps = static_cast<std::int64_t>(number_or(cfg, "replicates", 0));
  std::vector<std::vector<std::string>> rows;

  if (which == 1) {
    rows.push_back({"t", "sigma_as", "bound_known_piV", "a_known",
                    "bound_drift_only", "a_drift"});
    for (int t : {5, 50, 500}) {
      auto kn = hier_optimum(t, mc::MomentProvenance::known_pi_V);
      auto dr = hier_optimum(t, mc::MomentProvenance::drift_only);
      rows.push_back({std::to_string(t),
                      fmt_sig(mc::models::HierT::sigma_as_exact(t)),
                      fmt_sig(std::sqrt(kn.comp.sigma_as_sq)), fmt_sig(kn.a),
                      fmt_sig(std::sqrt(dr.comp.sigma_as_sq)), fmt_sig(dr.a)});
    }
  } else if (which == 2) {
    // all constants at the drift-only optimal width
    auto dr = hier_optimum(50, mc::MomentProvenance::drift_only);
    mc::models::HierT m(50, dr.a);
    auto kn_comp = mc::geo_bounds(
        m.drift_params(), m.bound_moments(mc::MomentProvenance::known_pi_V));
    rows.push_back({"constant", "actual", "bound_known_piV", "bound_drift_only"});
    std::vector<std::string> actual = {"-", "-", "-", "-"};
    if (reps > 0) {
      mc::EstimatorOptions opt;
      opt.threads = threads;
      auto est = mc::estimate_constants(m, 0.0, 100, reps,
                                        std::max<std::int64_t>(reps, 20000),
                                        seed, opt);
      actual = {fmt_pm({std::sqrt(est.sigma_as_sq.value),
                        est.sigma_as_sq.std_error /
                            (2.0 * std::sqrt(est.sigma_as_sq.value))}),
                fmt_pm(est.c0), fmt_pm(est.c1), fmt_pm(est.c2)};
    }
    rows.push_back({"sigma_as", actual[0], fmt_sig(std::sqrt(kn_comp.sigma_as_sq)),
                    fmt_sig(std::sqrt(dr.comp.sigma_as_sq))});
    rows.push_back({"C0", actual[1], fmt_sig(kn_comp.c0), fmt_sig(dr.comp.c0)});
    rows.push_back({"C1", actual[2], "-", fmt_sig(dr.comp.c1)});
    rows.push_back({"C2", actual[3], "-", fmt_sig(dr.comp.c2)});
  } else if (which == 3) {
    auto kn = hier_optimum(50, mc::MomentProvenance::known_pi_V);
    auto dr = hier_optimum(50, mc::MomentProvenance::drift_only);
    std::optional<mc::EmpiricalConstants> est;
    mc::models::HierT m_dr(50, dr.a);
    if (reps > 0) {
      mc::EstimatorOptions opt;
      opt.threads = threads;
      est = mc::estimate_constants(m_dr, 0.0, 100, reps,
                                   std::max<std::int64_t>(reps, 20000), seed,
                                   opt);
    }
    rows.push_back({"n", "sqrt_n_rmse_exact", "sqrt_n_rmse_mc", "(a)", "(b)", "(c)"});
    for (std::int64_t n : {10, 50, 100, 1000, 5000, 10000, 50000}) {
      const double sn = std::sqrt(static_cast<double>(n));
      const double exact =
          sn * std::sqrt(mc::models::HierT::exact_mse(50, n, 0.0));
      std::string mc_col = "-";
      std::string a_col = "-";
      if (est) {
        mc::BoundComponents actual{est->sigma_as_sq.value, est->c0.value,
                                   est->c1.value, est->c2.value,
                                   mc::MomentProvenance::empirical};
        a_col = fmt_sig(sn * mc::combine_mse_bound(actual, n));
        if (reps > 0) {
          mc::EstimatorOptions opt;
          opt.threads = threads;
          auto r = mc::estimate_rmse(m_dr, n, std::min<std::int64_t>(reps, 4000),
                                     0.0, 0.0, seed + static_cast<std::uint64_t>(n),
                                     opt);
          mc_col = fmt_pm({sn * r.value, sn * r.std_error}, 3);
        }
      }
      rows.push_back({std::to_string(n), fmt_sig(exact), mc_col, a_col,
                      fmt_sig(sn * mc::combine_mse_bound(kn.comp, n)),
                      fmt_sig(sn * mc::combine_mse_bound(dr.comp, n))});
    }
  } else if (which == 4) {
    mc::models::ContractingNormals m(0.5, 1.7875);
    auto dr = mc::geo_bounds(m.params(),
                             m.bound_moments(mc::MomentProvenance::drift_only));
    auto kn = mc::geo_bounds(m.params(),
                             m.bound_moments(mc::MomentProvenance::known_pi_V));
    const double eps = 0.1, alpha = 0.1;
    auto plan = [&](const mc::BoundComponents& c) {
      return mc::confidence_plan(
          [&](std::int64_t n) { return mc::combine_mse_bound(c, n); }, eps, alpha);
    };
    rows.push_back({"method", "n_min"});
    rows.push_back({"bound_drift_only", std::to_string(plan(dr).n_min)});
    rows.push_back({"bound_known_piV", std::to_string(plan(kn).n_min)});
    rows.push_back({"exact_law", std::to_string(
                        mc::models::ContractingNormals::exact_plan_n_min(
                            0.5, eps, alpha))});
  } else {
    throw ConfigError("table 'which' must be 1, 2, 3 or 4");
  }
  return render_rows(rows, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonasymptotic MCMC error bounds, confidence planning and "
               "split-chain validation"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "text";
  std::uint64_t seed = 20240101;
  unsigned threads = mc::default_threads();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--threads", threads, "worker threads");
    sub->add_option("--out", out_path, "output file (default stdout)");
    sub->add_option("--format", format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
  };
  CLI::App* s_bound = app.add_subcommand("bound", "evaluate bound formulas");
  CLI::App* s_sim = app.add_subcommand("simulate", "split-chain trajectory CSV");
  CLI::App* s_const = app.add_subcommand("constants", "empirical constants");
  CLI::App* s_conf = app.add_subcommand("confidence", "plan simulation length");
  CLI::App* s_sweep = app.add_subcommand("sweep", "parameter sweep CSV");
  CLI::App* s_table = app.add_subcommand("table", "reproduce a reference table");
  for (auto* s : {s_bound, s_sim, s_const, s_conf, s_sweep, s_table})
    add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are config errors; --help is not
  }

  std::string output;
  try {
    const json cfg = load_config(config_path);
    if (s_bound->parsed())
      output = cmd_bound(cfg);
    else if (s_sim->parsed())
      output = cmd_simulate(cfg, seed);
    else if (s_const->parsed())
      output = cmd_constants(cfg, seed, threads);
    else if (s_conf->parsed())
      output = cmd_confidence(cfg);
    else if (s_sweep->parsed())
      output = cmd_sweep(cfg, format);
    else if (s_table->parsed())
      output = cmd_table(cfg, seed, threads, format);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mc::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  if (out_path.empty()) {
    std::cout << output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 3;
    }
    out << output;
  }
  return 0;
}
