#include "scenarios.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "haloscan/gkp.hpp"
#include "haloscan/jpa.hpp"
#include "haloscan/network.hpp"
#include "haloscan/radiometry.hpp"
#include "haloscan/rng.hpp"
#include "haloscan/units.hpp"
#include "pool.hpp"

namespace scan_cli {

namespace {

using namespace haloscan;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool positive(double v) { return v > 0.0; }
bool non_negative(double v) { return v >= 0.0; }
bool at_least_one(double v) { return v >= 1.0; }
bool sample_count(double v) { return v >= 1e4 && v <= 1e9 && v == std::floor(v); }

// ---- Shared parameter blocks ----------------------------------------------------

// Reads a nested cavity block and stores its normalized form in the parent.
void cavity_block(Fields& parent, bool with_coupling, double gamma_s_default = 1e-6) {
  Fields f = parent.object("cavity");
  f.number("gamma_ell", 1.0, positive, "must be > 0");
  if (with_coupling) f.number("gamma_m", 2.0, non_negative, "must be >= 0");
  f.number("gamma_s", gamma_s_default, non_negative, "must be >= 0");
  f.number("n_T_bar", 0.0, non_negative, "must be >= 0");
  f.number("n_s", 1.0, non_negative, "must be >= 0");
  f.number("delta_a", 1.0, positive, "must be > 0");
  parent.put("cavity", f.finish());
}

CavityParams cavity_from(const Json& j) {
  CavityParams p;
  p.gamma_ell = j.at("gamma_ell").get<double>();
  p.gamma_m = j.contains("gamma_m") ? j.at("gamma_m").get<double>() : 0.0;
  p.gamma_s = j.at("gamma_s").get<double>();
  p.n_T_bar = j.at("n_T_bar").get<double>();
  p.n_s = j.at("n_s").get<double>();
  p.delta_a = j.at("delta_a").get<double>();
  return p;
}

std::vector<double> doubles(const Json& j) { return j.get<std::vector<double>>(); }

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ScanOptions options_for(const CavityParams& p) {
  ScanOptions o;
  o.initial_scale = p.total_rate();
  return o;
}

double rate_of(const CavityParams& p, double gain, VisibilityKind kind) {
  return scan_rate([&](double w) { return visibility(p, gain, w, kind); }, 1.0, p.delta_a, options_for(p)).rate;
}

// ---- snr-curve -------------------------------------------------------------------

void read_snr_curve(Fields& f) {
  f.choice("curve", "visibility", {"visibility", "susceptibility"});
  cavity_block(f, false);
  f.numbers("gains", {1.0}, at_least_one, "gain must be >= 1");
  f.choice("coupling", "fixed", {"fixed", "optimal"});
  f.numbers("couplings", {2.0}, non_negative, "coupling ratio must be >= 0");
}

ScenarioResult run_snr_curve(const ScenarioConfig& cfg, const RunOptions& opts) {
  const Json& prm = cfg.params;
  const bool susceptibility_curve = prm.at("curve") == "susceptibility";
  const bool optimal = prm.at("coupling") == "optimal";
  const CavityParams base = cavity_from(prm.at("cavity"));
  const auto gains = doubles(prm.at("gains"));
  const auto couplings = doubles(prm.at("couplings"));
  const auto omegas = cfg.axis("omega")->values();

  struct Point {
    double gain, coupling, omega;
  };
  std::vector<Point> points;
  if (susceptibility_curve) {
    for (double x : couplings)
      for (double w : omegas) points.push_back({1.0, x, w});
  } else {
    for (double g : gains) {
      const std::vector<double> xs = optimal ? std::vector<double>{optimal_coupling_squeezed(g)} : couplings;
      for (double x : xs)
        for (double w : omegas) points.push_back({g, x, w});
    }
  }

  ScenarioResult out;
  if (susceptibility_curve) {
    out.table.columns = {
        {"omega", "gamma_ell", "detuning from resonance"},
        {"coupling", "1", "gamma_m / gamma_ell"},
        {"refl_mag_sq", "1", "|chi_mm|^2, reflected power fraction"},
        {"signal_mag_sq", "1", "|chi_ms|^2, signal transfer"},
        {"theta_mm", "rad", "reflection phase, principal value"},
        {"theta_ms", "rad", "signal phase arg(-chi_ms)"},
    };
  } else {
    out.table.columns = {
        {"omega", "gamma_ell", "detuning from resonance"},
        {"gain", "1", "squeezing gain G of the injected state"},
        {"coupling", "1", "gamma_m / gamma_ell"},
        {"alpha_ql", "1", "quantum-limited visibility"},
        {"alpha_sq", "1", "single-mode squeezed visibility"},
        {"alpha_gkp", "1", "GKP readout visibility with an ideal ancilla"},
        {"alpha_jpa", "1", "two-mode squeezed (JPA) visibility"},
    };
  }

  out.table.rows = parallel_map<std::vector<double>>(points.size(), opts.workers, [&](std::size_t i) {
    const Point& pt = points[i];
    CavityParams p = base;
    p.gamma_m = pt.coupling * p.gamma_ell;
    if (susceptibility_curve) {
      const MixingAngles a = mixing_angles(p, pt.omega);
      return std::vector<double>{pt.omega, pt.coupling, reflection_mag_sq(p, pt.omega),
                                 signal_transfer_mag_sq(p, pt.omega), a.theta_mm, a.theta_ms};
    }
    return std::vector<double>{pt.omega,
                               pt.gain,
                               pt.coupling,
                               visibility(p, pt.gain, pt.omega, VisibilityKind::quantum_limited),
                               visibility(p, pt.gain, pt.omega, VisibilityKind::squeezed),
                               visibility(p, pt.gain, pt.omega, VisibilityKind::gkp),
                               visibility(p, pt.gain, pt.omega, VisibilityKind::jpa)};
  });
  out.report["points"] = points.size();
  return out;
}

// ---- scan-rate -------------------------------------------------------------------

void read_scan_rate(Fields& f) {
  f.numbers("gains", {10.0, 20.0}, at_least_one, "gain must be >= 1");
  f.number("gamma_s", 1e-10, positive, "must be > 0");
  f.boolean("quadrature", true);
}

void check_scan_rate(const ScenarioConfig& cfg, Diagnostics& diag) {
  if (cfg.axis("coupling") && !(cfg.axis("coupling")->min > 0.0)) diag.add("sweep", "coupling must stay > 0");
}

ScenarioResult run_scan_rate(const ScenarioConfig& cfg, const RunOptions& opts) {
  const auto gains = doubles(cfg.params.at("gains"));
  const double gamma_s = cfg.params.at("gamma_s").get<double>();
  const bool quadrature = cfg.params.at("quadrature").get<bool>();
  const auto xs = cfg.axis("coupling")->values();

  ScenarioResult out;
  out.table.columns = {
      {"coupling", "1", "gamma_m / gamma_ell"},
      {"gain", "1", "squeezing gain G"},
      {"ratio_sq", "R*_QL", "squeezed scan rate, closed form"},
      {"ratio_gkp", "R*_QL", "GKP scan rate with an ideal ancilla, closed form"},
  };
  if (quadrature) {
    out.table.columns.push_back({"ratio_sq_quadrature", "R*_QL", "squeezed scan rate by numerical integration"});
    out.table.columns.push_back({"ratio_gkp_quadrature", "R*_QL", "GKP scan rate by numerical integration"});
  }

  const std::size_t n = gains.size() * xs.size();
  out.table.rows = parallel_map<std::vector<double>>(n, opts.workers, [&](std::size_t i) {
    const double g = gains[i / xs.size()];
    const double x = xs[i % xs.size()];
    std::vector<double> row{x, g, scan_rate_ratio_squeezed(x, g), scan_rate_ratio_gkp(x, g)};
    if (quadrature) {
      CavityParams p;
      p.gamma_ell = 1.0;
      p.gamma_m = x;
      p.gamma_s = gamma_s;
      p.n_s = 1.0;
      const double ref = scan_rate_ql_optimum(p, 1.0);
      row.push_back(rate_of(p, g, VisibilityKind::squeezed) / ref);
      row.push_back(rate_of(p, g, VisibilityKind::gkp) / ref);
    }
    return row;
  });

  Json optima = Json::array();
  for (double g : gains) {
    const double xs_opt = optimal_coupling_squeezed(g);
    const double xg_opt = optimal_coupling_gkp(g);
    optima.push_back({{"gain", g},
                      {"squeezed_coupling", xs_opt},
                      {"squeezed_ratio", scan_rate_ratio_squeezed(xs_opt, g)},
                      {"gkp_coupling", xg_opt},
                      {"gkp_ratio", scan_rate_ratio_gkp(xg_opt, g)}});
  }
  out.report["optima"] = optima;
  return out;
}

// ---- network-scaling -------------------------------------------------------------

const std::vector<std::string> kPolicies = {"near_optimal", "near_optimal_uncorrected", "uniform",
                                            "uniform_uncorrected", "optimal"};

WeightPolicy policy_from(const std::string& s) {
  if (s == "near_optimal_uncorrected") return WeightPolicy::near_optimal_uncorrected;
  if (s == "uniform") return WeightPolicy::uniform;
  if (s == "uniform_uncorrected") return WeightPolicy::uniform_uncorrected;
  if (s == "optimal") return WeightPolicy::optimal;
  return WeightPolicy::near_optimal;
}

void read_network(Fields& f) {
  f.choice("analysis", "scaling", {"scaling", "two-cavity"});
  f.numbers("gains", {1.0, 4.0}, at_least_one, "gain must be >= 1");
  f.number("linewidth_min", 1.0, positive, "must be > 0");
  f.number("linewidth_max", 3.0, positive, "must be > 0");
  f.number("coupling_factor", 2.0, positive, "must be > 0");
  f.number("gamma_s", 1e-6, positive, "must be > 0");
  f.choice("policy", "near_optimal", kPolicies);
  f.number("gain", 4.0, at_least_one, "must be >= 1");
  f.number("linewidth_ratio", 3.0, positive, "must be > 0");
}

void check_network(const ScenarioConfig& cfg, Diagnostics& diag) {
  const bool scaling = cfg.params.at("analysis") == "scaling";
  const char* needed = scaling ? "cavities" : "omega";
  if (!cfg.axis(needed)) {
    diag.add("sweep", std::string("analysis \"") + cfg.params.at("analysis").get<std::string>() + "\" sweeps \"" +
                          needed + "\"");
    return;
  }
  if (cfg.params.at("linewidth_max").get<double>() < cfg.params.at("linewidth_min").get<double>()) {
    diag.add("params.linewidth_max", "must be >= linewidth_min");
  }
  if (scaling) {
    for (double v : cfg.axis("cavities")->values()) {
      if (std::abs(v - std::round(v)) > 1e-9 || v < 1.0 || v > 1000.0) {
        diag.add("sweep", "cavities must take integer values in [1, 1000]");
        break;
      }
    }
  }
}

// M cavities with loss rates on the midpoints of M equal bins of [lo, hi] and
// gamma_m = factor * G * gamma_ell.
std::vector<CavityParams> spread_network(int m, double gain, double lo, double hi, double factor, double gamma_s) {
  std::vector<CavityParams> out;
  for (int k = 1; k <= m; ++k) {
    CavityParams p;
    p.gamma_ell = lo + (hi - lo) * (k - 0.5) / m;
    p.gamma_m = factor * gain * p.gamma_ell;
    p.gamma_s = gamma_s;
    p.n_s = 1.0;
    out.push_back(p);
  }
  return out;
}

NetworkConfig uniform_config(const std::vector<CavityParams>& cav, double gain) {
  const WeightPair u = uniform_weights_uncorrected(static_cast<int>(cav.size()));
  return {cav, gain, u.combiner, u.divider};
}

ScenarioResult run_network_scaling(const ScenarioConfig& cfg, const RunOptions& opts) {
  const Json& prm = cfg.params;
  const auto gains = doubles(prm.at("gains"));
  const double lo = prm.at("linewidth_min").get<double>();
  const double hi = prm.at("linewidth_max").get<double>();
  const double factor = prm.at("coupling_factor").get<double>();
  const double gamma_s = prm.at("gamma_s").get<double>();
  const WeightPolicy policy = policy_from(prm.at("policy").get<std::string>());
  std::vector<int> ms;
  for (double v : cfg.axis("cavities")->values()) ms.push_back(static_cast<int>(std::lround(v)));

  CavityParams reference;
  reference.gamma_ell = 1.0;
  reference.gamma_s = gamma_s;
  reference.n_s = 1.0;
  const double r_ql = scan_rate_ql_optimum(reference, 1.0);

  ScenarioResult out;
  out.table.columns = {
      {"cavities", "1", "number of cavities M"},
      {"gain", "1", "squeezing gain G"},
      {"rate_coherent", "R*_QL", "network scan rate with the chosen weight policy"},
      {"rate_independent", "R*_QL", "sum of single-cavity squeezed scan rates"},
      {"rate_uniform_uncorrected", "R*_QL", "network scan rate with equal, unphased weights"},
      {"penalty_uniform_uncorrected", "1", "1 - rate_uniform_uncorrected / rate_coherent"},
  };
  const std::size_t n = gains.size() * ms.size();
  out.table.rows = parallel_map<std::vector<double>>(n, opts.workers, [&](std::size_t i) {
    const double g = gains[i / ms.size()];
    const int m = ms[i % ms.size()];
    const NetworkConfig net = uniform_config(spread_network(m, g, lo, hi, factor, gamma_s), g);
    const double coh = network_scan_rate(net, 1.0, NetworkScanMode::coherent, policy).rate / r_ql;
    const double ind = network_scan_rate(net, 1.0, NetworkScanMode::independent).rate / r_ql;
    const double uni =
        network_scan_rate(net, 1.0, NetworkScanMode::coherent, WeightPolicy::uniform_uncorrected).rate / r_ql;
    return std::vector<double>{static_cast<double>(m), g, coh, ind, uni, 1.0 - uni / coh};
  });

  Json slopes = Json::array();
  for (std::size_t gi = 0; gi < gains.size(); ++gi) {
    std::vector<double> x, coh, ind;
    for (std::size_t k = 0; k < ms.size(); ++k) {
      const auto& row = out.table.rows[gi * ms.size() + k];
      x.push_back(row[0]);
      coh.push_back(row[2]);
      ind.push_back(row[3]);
    }
    slopes.push_back(
        {{"gain", gains[gi]}, {"coherent_slope", loglog_slope(x, coh)}, {"independent_slope", loglog_slope(x, ind)}});
  }
  out.report["loglog_slopes"] = slopes;
  return out;
}

ScenarioResult run_two_cavity(const ScenarioConfig& cfg, const RunOptions& opts) {
  const Json& prm = cfg.params;
  const double g = prm.at("gain").get<double>();
  const double ratio = prm.at("linewidth_ratio").get<double>();
  const double factor = prm.at("coupling_factor").get<double>();
  const double gamma_s = prm.at("gamma_s").get<double>();
  std::vector<CavityParams> cav(2);
  for (int k = 0; k < 2; ++k) {
    cav[k].gamma_ell = k == 0 ? 1.0 : ratio;
    cav[k].gamma_m = factor * g * cav[k].gamma_ell;
    cav[k].gamma_s = gamma_s;
    cav[k].n_s = 1.0;
  }
  const auto omegas = cfg.axis("omega")->values();
  const OptimizeResult fixed = optimize_weights(cav, g, WeightMode::frequency_independent, omegas);

  ScenarioResult out;
  out.table.columns = {
      {"omega", "gamma_ell1", "detuning, in units of the first cavity's loss rate"},
      {"snr2_uniform", "1", "SNR^2 for equal weights with the signal phases compensated"},
      {"snr2_uniform_uncorrected", "1", "SNR^2 for equal, unphased weights"},
      {"snr2_near_optimal", "1", "SNR^2 for the near-optimal weights"},
      {"snr2_frequency_independent", "1", "SNR^2 for one weight pair optimized over the whole sweep"},
      {"snr2_optimized", "1", "SNR^2 from a numerical search at this detuning"},
      {"snr2_optimum", "1", "SNR^2 at the exact per-detuning optimum"},
  };
  out.table.rows = parallel_map<std::vector<double>>(omegas.size(), opts.workers, [&](std::size_t i) {
    const double w = omegas[i];
    auto snr2 = [&](const WeightPair& p) {
      const double s = network_output(cav, g, p, w).snr;
      return s * s;
    };
    const OptimizeResult here = optimize_weights(cav, g, WeightMode::per_frequency, {w});
    const double best = optimal_network_snr(cav, g, w);
    return std::vector<double>{w,
                               snr2(uniform_weights(cav, w)),
                               snr2(uniform_weights_uncorrected(2)),
                               snr2(near_optimal_weights(cav, w)),
                               snr2(fixed.weights.front()),
                               here.objective.front(),
                               best * best};
  });
  out.report["frequency_independent_objective"] = fixed.objective.front();
  out.report["frequency_independent_converged"] = fixed.converged;
  return out;
}

ScenarioResult run_network(const ScenarioConfig& cfg, const RunOptions& opts) {
  return cfg.params.at("analysis") == "scaling" ? run_network_scaling(cfg, opts) : run_two_cavity(cfg, opts);
}

// ---- gkp-compare -----------------------------------------------------------------

void read_gkp(Fields& f) { f.number("epsilon", 1e-3, positive, "must be > 0"); }

double gain_from_db(double db) { return std::pow(10.0, db / 10.0); }

ScenarioResult run_gkp(const ScenarioConfig& cfg, const RunOptions& opts) {
  const double eps = cfg.params.at("epsilon").get<double>();
  const SweepAxis& axis = *cfg.axis("s_db");
  const auto dbs = axis.values();

  ScenarioResult out;
  out.table.columns = {
      {"s_db", "dB", "squeezing 10 log10 G"},
      {"gain", "1", "squeezing gain G"},
      {"y", "vacuum", "additive noise at the GKP scan-rate optimum"},
      {"coupling_gkp", "1", "optimal gamma_m / gamma_ell for GKP readout"},
      {"coupling_sq", "1", "optimal gamma_m / gamma_ell for squeezed readout"},
      {"ratio_gaussian", "1", "optimal GKP over optimal squeezed scan rate"},
      {"prefactor", "1", "(modular SNR / Gaussian SNR)^2 at y"},
      {"ratio_revised", "1", "ratio_gaussian times prefactor"},
  };
  out.table.rows = parallel_map<std::vector<double>>(dbs.size(), opts.workers, [&](std::size_t i) {
    const double g = gain_from_db(dbs[i]);
    const double ratio = gkp_to_squeezed_optimum_ratio(g);
    const double pre = error_revised_rate(g, eps);
    return std::vector<double>{dbs[i], g, y_of_G(g), optimal_coupling_gkp(g), optimal_coupling_squeezed(g),
                               ratio,  pre, ratio * pre};
  });

  auto crossing = [&](auto&& f) -> Json {
    const double a = f(axis.min) - 1.0, b = f(axis.max) - 1.0;
    if (!(a * b < 0.0)) return nullptr;
    boost::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve([&](double s) { return f(s) - 1.0; }, axis.min, axis.max, a, b,
                                                     boost::math::tools::eps_tolerance<double>(40), iters);
    return 0.5 * (r.first + r.second);
  };
  out.report["break_even_db_gaussian"] =
      crossing([](double s) { return gkp_to_squeezed_optimum_ratio(gain_from_db(s)); });
  out.report["break_even_db_revised"] = crossing([&](double s) {
    const double g = gain_from_db(s);
    return gkp_to_squeezed_optimum_ratio(g) * error_revised_rate(g, eps);
  });
  double worst = 0.0;
  for (const auto& row : out.table.rows) {
    if (row[0] >= 10.0) worst = std::max(worst, 1.0 - row[6]);
  }
  out.report["max_prefactor_deficit_at_or_above_10db"] = worst;
  return out;
}

// ---- jpa-noise -------------------------------------------------------------------

void read_jpa(Fields& f) {
  cavity_block(f, true, 0.0);
  f.number("r", std::log(10.0) / 2.0, non_negative, "must be >= 0");
  f.number("omega", 0.0);
  f.number("samples", 1e5, sample_count, "must be an integer in [1e4, 1e9]");
}

void check_jpa(const ScenarioConfig& cfg, Diagnostics& diag) {
  if (cfg.axis("sigma_c") && !(cfg.axis("sigma_c")->min >= 0.0)) diag.add("sweep", "sigma_c must stay >= 0");
}

ScenarioResult run_jpa(const ScenarioConfig& cfg, const RunOptions& opts) {
  const Json& prm = cfg.params;
  const CavityParams p = cavity_from(prm.at("cavity"));
  const double r = prm.at("r").get<double>();
  const double omega = prm.at("omega").get<double>();
  const auto samples = static_cast<std::size_t>(prm.at("samples").get<double>());
  const auto sigmas = cfg.axis("sigma_c")->values();

  ScenarioResult out;
  out.table.columns = {
      {"sigma_c", "gamma_ell", "standard deviation of the pump-frequency offset"},
      {"excess", "vacuum", "Monte Carlo mean increase of Var Q over the unperturbed value"},
      {"excess_se", "vacuum", "standard error of excess"},
      {"excess_expansion", "vacuum", "anti-squeezing term of the small-offset expansion at epsilon = sigma_c"},
      {"baseline", "vacuum", "Var Q with no pump offset"},
      {"excess_over_nt", "1", "excess / N_T"},
  };
  out.table.rows = parallel_map<std::vector<double>>(sigmas.size(), opts.workers, [&](std::size_t i) {
    JpaParams j;
    j.r = r;
    j.sigma_c = sigmas[i];
    j.n_T_bar = p.n_T_bar;
    const PumpNoiseEstimate est =
        pump_fluctuation_monte_carlo(p, j, omega, samples, derive_stream_seed(cfg.seed, i));
    return std::vector<double>{sigmas[i],
                               est.mean_excess,
                               est.std_error,
                               pump_excess_small_offset(p, j, omega, sigmas[i]),
                               est.baseline,
                               est.mean_excess / p.noise_factor()};
  });
  out.report["samples_per_row"] = samples;
  out.report["row_seeds"] = "derive_stream_seed(seed, row index)";
  return out;
}

// ---- convert-units ---------------------------------------------------------------

const std::vector<std::string> kPhysicalFields = {"g_a_gamma", "b_field", "eta",  "frequency_hz", "rho_a",
                                                  "volume",    "q_c",     "beta", "temperature",  "q_a"};

void read_units(Fields& f) {
  Fields phys = f.object("physical");
  const PhysicalParams d;
  const double defaults[] = {d.g_a_gamma, d.b_field, d.eta, d.frequency_hz, d.rho_a,
                             d.volume,    d.q_c,     d.beta, d.temperature, d.q_a};
  for (std::size_t i = 0; i < kPhysicalFields.size(); ++i) phys.number(kPhysicalFields[i], defaults[i]);
  f.put("physical", phys.finish());
  f.number("reference_rate_ev", 0.0, non_negative, "must be >= 0 (0 selects gamma_ell)");
  f.number("target_snr", 1.0, positive, "must be > 0");
}

PhysicalParams physical_from(const Json& j, const std::string& axis = {}, double value = kNaN) {
  PhysicalParams p;
  double* slots[] = {&p.g_a_gamma, &p.b_field, &p.eta,  &p.frequency_hz, &p.rho_a,
                     &p.volume,    &p.q_c,     &p.beta, &p.temperature,  &p.q_a};
  for (std::size_t i = 0; i < kPhysicalFields.size(); ++i) {
    *slots[i] = kPhysicalFields[i] == axis ? value : j.at(kPhysicalFields[i]).get<double>();
  }
  return p;
}

void check_units(const ScenarioConfig& cfg, Diagnostics& diag) {
  const Json& phys = cfg.params.at("physical");
  std::vector<std::pair<std::string, double>> probes{{"", kNaN}};
  if (!cfg.sweep.empty()) {
    probes = {{cfg.sweep[0].name, cfg.sweep[0].min}, {cfg.sweep[0].name, cfg.sweep[0].max}};
  }
  for (const auto& [axis, value] : probes) {
    try {
      physical_from(phys, axis, value).validate();
    } catch (const InvalidArgument& e) {
      diag.add(axis.empty() ? "params.physical" : "sweep", e.what());
      return;
    }
  }
}

ScenarioResult run_units(const ScenarioConfig& cfg, const RunOptions& opts) {
  const Json& prm = cfg.params;
  const double ref = prm.at("reference_rate_ev").get<double>();
  const double snr = prm.at("target_snr").get<double>();
  const bool swept = !cfg.sweep.empty();
  const std::string axis = swept ? cfg.sweep[0].name : std::string();
  const std::vector<double> values = swept ? cfg.sweep[0].values() : std::vector<double>{kNaN};

  ScenarioResult out;
  if (swept) out.table.columns.push_back({axis, "input", "swept physical parameter"});
  const std::vector<Column> cols = {
      {"reference_rate", "rad/s", "rate used as the model unit"},
      {"gamma_ell", "reference_rate", "intrinsic loss rate"},
      {"gamma_m", "reference_rate", "measurement coupling"},
      {"gamma_s", "reference_rate", "signal coupling"},
      {"n_T_bar", "1", "thermal occupation"},
      {"n_s", "1", "signal occupation"},
      {"delta_a", "reference_rate", "signal bandwidth"},
      {"power_quantum", "W", "signal power from the rate picture"},
      {"power_classical", "W", "signal power from the classical formula"},
      {"power_exact", "W", "signal power from the full susceptibility"},
      {"power_cavity", "W", "power deposited in the cavity"},
      {"scan_rate", "reference_rate^2", "quantum-limited scan rate at the target SNR"},
      {"scan_rate_hz_per_s", "Hz/s", "same scan rate in lab units"},
  };
  out.table.columns.insert(out.table.columns.end(), cols.begin(), cols.end());

  out.table.rows = parallel_map<std::vector<double>>(values.size(), opts.workers, [&](std::size_t i) {
    const PhysicalParams phys = physical_from(prm.at("physical"), axis, values[i]);
    const ModelParams model = to_model_params(phys, ref);
    const CavityParams& c = model.cavity;
    const double ref_rad_s = units::to_angular_hertz(units::Energy{model.reference_rate});
    const double rate = scan_rate([&](double w) { return visibility(c, 1.0, w, VisibilityKind::quantum_limited); },
                                  snr, c.delta_a, options_for(c))
                            .rate;
    std::vector<double> row;
    if (swept) row.push_back(values[i]);
    const double rest[] = {ref_rad_s,
                           c.gamma_ell,
                           c.gamma_m,
                           c.gamma_s,
                           c.n_T_bar,
                           c.n_s,
                           c.delta_a,
                           signal_power_quantum(phys),
                           signal_power_classical(phys),
                           signal_power_exact(phys),
                           cavity_power(phys),
                           rate,
                           rate * ref_rad_s * ref_rad_s / (2.0 * std::numbers::pi)};
    row.insert(row.end(), std::begin(rest), std::end(rest));
    return row;
  });
  return out;
}

}  // namespace

const std::vector<ScenarioInfo>& scenarios() {
  static const std::vector<ScenarioInfo> all = {
      {"snr-curve", "visibility or susceptibility curves against detuning", {"omega"}, 1, 1, read_snr_curve,
       nullptr, run_snr_curve},
      {"scan-rate", "squeezed and GKP scan-rate ratios against coupling", {"coupling"}, 1, 1, read_scan_rate,
       check_scan_rate, run_scan_rate},
      {"network-scaling", "multi-cavity scan rates or two-cavity weight comparison", {"cavities", "omega"}, 1, 1,
       read_network, check_network, run_network},
      {"gkp-compare", "GKP versus squeezed optimal scan rates against squeezing", {"s_db"}, 1, 1, read_gkp, nullptr,
       run_gkp},
      {"jpa-noise", "pump-frequency noise in two-mode squeezed readout", {"sigma_c"}, 1, 1, read_jpa, check_jpa,
       run_jpa},
      {"convert-units", "laboratory parameters to model parameters, powers and scan rates", kPhysicalFields, 0, 1,
       read_units, check_units, run_units},
  };
  return all;
}

const ScenarioInfo* find_scenario(const std::string& name) {
  for (const auto& s : scenarios()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
  const ScenarioInfo* info = find_scenario(cfg.scenario);
  if (!info) throw ValidationError({"scenario: unknown scenario \"" + cfg.scenario + "\""});
  return info->run(cfg, opts);
}

}  // namespace scan_cli
