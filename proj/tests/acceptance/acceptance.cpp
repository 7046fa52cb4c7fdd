// Acceptance checks: one PASS/FAIL line per criterion. Tolerances are pinned
// here and are not configurable. Exit status is nonzero if any check fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "haloscan/cavity.hpp"
#include "haloscan/gaussian.hpp"
#include "haloscan/gkp.hpp"
#include "haloscan/jpa.hpp"
#include "haloscan/network.hpp"
#include "haloscan/radiometry.hpp"
#include "haloscan/units.hpp"
#include "random_params.hpp"

using namespace haloscan;
using haloscan::testing::log_uniform;
using haloscan::testing::random_cavity;
using haloscan::testing::uniform;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Verdict {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, const std::function<Verdict()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!v.pass) ++failures;
  std::printf("[%s] %2d %s | %s | %.2fs\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

CavityParams cavity(double ell, double m, double s, double ns = 1.0) {
  CavityParams p;
  p.gamma_ell = ell;
  p.gamma_m = m;
  p.gamma_s = s;
  p.n_s = ns;
  return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Least-squares slope of log(y) against log(x).
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

// M cavities with loss rates on the midpoints of M equal bins of [1, 3] and
// the squeezed-optimal coupling gamma_m = 2 G gamma_ell.
std::vector<CavityParams> spread_network(int m, double gain) {
  std::vector<CavityParams> out;
  for (int k = 1; k <= m; ++k) {
    const double ell = 1.0 + 2.0 * (k - 0.5) / m;
    out.push_back(cavity(ell, 2.0 * gain * ell, 1e-6));
  }
  return out;
}

NetworkConfig config_for(const std::vector<CavityParams>& cav, double gain) {
  const WeightPair u = uniform_weights_uncorrected(static_cast<int>(cav.size()));
  return {cav, gain, u.combiner, u.divider};
}

double squeezed_rate(const CavityParams& p, double gain) {
  ScanOptions opts;
  opts.initial_scale = p.total_rate();
  return scan_rate([&](double w) { return visibility(p, gain, w, VisibilityKind::squeezed); }, 1.0, p.delta_a, opts)
      .rate;
}

}  // namespace

int main() {
  run(1, "susceptibility unitarity", [] {
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const CavityParams p = random_cavity(rng);
      const Matrix3c chi = susceptibility(p, uniform(rng, -50.0, 50.0));
      worst = std::max(worst, (chi.adjoint() * chi - Matrix3c::Identity()).cwiseAbs().maxCoeff());
    }
    return Verdict{worst < 1e-12, fmt("max |chi^H chi - I| = %.3e over 1e4 draws (tol 1e-12)", worst)};
  });

  run(2, "channel reduction oracle", [] {
    std::mt19937_64 rng(1002);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const CavityParams p = random_cavity(rng);
      const double w = uniform(rng, -20.0, 20.0);
      const Eigen::Vector2d mu(uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0));
      const GaussianState sys = haloscan::testing::random_state(rng, 1);
      GaussianState signal = GaussianState::thermal(1, p.noise_factor());
      signal.mean = mu;
      const GaussianState loss = GaussianState::thermal(1, p.noise_factor());
      const GaussianState full =
          marginal(apply_symplectic(cavity_symplectic(p, w), tensor_product(sys, tensor_product(signal, loss))), {0});
      const GaussianState direct = apply_channel(cavity_gaussian_channel(p, w, mu), sys);
      const double scale = std::max(1.0, full.cov.cwiseAbs().maxCoeff());
      worst = std::max({worst, (full.mean - direct.mean).cwiseAbs().maxCoeff() / scale,
                        (full.cov - direct.cov).cwiseAbs().maxCoeff() / scale});
    }
    return Verdict{worst < 1e-10, fmt("max moment deviation = %.3e over 1e3 draws (tol 1e-10)", worst)};
  });

  run(3, "quantum-limited optimum", [] {
    const CavityParams base = cavity(1.0, 1.0, 1e-12, 1.0);
    const Maximum m = maximize_scalar(
        [&](double x) {
          CavityParams p = base;
          p.gamma_m = x;
          return scan_rate_ql_closed_form(p, 1.0) * 1e24;
        },
        0.1, 50.0);
    std::mt19937_64 rng(1003);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      CavityParams p = cavity(log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.01, 100.0), log_uniform(rng, 1e-9, 1e-3),
                              log_uniform(rng, 1.0, 100.0));
      p.n_T_bar = uniform(rng, 0.0, 1.0);
      ScanOptions opts;
      opts.initial_scale = p.total_rate();
      const double quad =
          scan_rate([&](double w) { return visibility(p, 1.0, w, VisibilityKind::quantum_limited); }, 2.0, p.delta_a,
                    opts)
              .rate;
      worst = std::max(worst, rel(quad, scan_rate_ql_closed_form(p, 2.0)));
    }
    const bool ok = std::abs(m.argmax - 2.0) < 1e-3 && worst < 1e-6;
    return Verdict{ok, fmt("argmax x = %.9f (tol 1e-3); quadrature vs closed form max rel = %.2e (tol 1e-6)", m.argmax,
                           worst)};
  });

  run(4, "squeezed scan rate", [] {
    const double unity = scan_rate_ratio_squeezed(2.0, 1.0);
    std::string detail = fmt("ratio(x=2,G=1) = %.15f", unity);
    bool ok = std::abs(unity - 1.0) < 1e-9;
    for (double g : {10.0, 100.0}) {
      const Maximum m = maximize_scalar([&](double x) { return scan_rate_ratio_squeezed(x, g); }, 0.5, 20.0 * g);
      // Cross-check the search against the stationary-point root.
      const double root = optimal_coupling_squeezed(g);
      ok = ok && std::abs(m.argmax / (2.0 * g) - 1.0) < 0.05 && rel(m.argmax, root) < 1e-6;
      detail += fmt("; G=%g: x* = %.4f (root %.4f, 2G = %g)", g, m.argmax, root, 2.0 * g);
      if (g == 100.0) {
        const double per_g = m.value / g;
        ok = ok && per_g >= 0.60 && per_g <= 0.72;
        detail += fmt(", ratio*/G = %.4f (band [0.60, 0.72])", per_g);
      }
    }
    return Verdict{ok, detail};
  });

  run(5, "peak SNR invariant under squeezing", [] {
    auto peak = [](double g) {
      return maximize_scalar(
                 [&](double x) {
                   const CavityParams p = cavity(1.0, x, 1e-6, 1.0);
                   return maximize_scalar([&](double w) { return visibility(p, g, w, VisibilityKind::squeezed); },
                                          -5.0, 5.0)
                       .value;
                 },
                 0.05, 50.0)
          .value;
    };
    const double p1 = peak(1.0), p100 = peak(100.0);
    const double exact = 1e-6 / (1.0 + 1e-6);
    const double d = rel(p100, p1);
    return Verdict{d < 1e-9, fmt("peak(G=1) = %.15e, peak(G=100) = %.15e, rel diff %.2e (tol 1e-9); "
                                 "gamma_s/(gamma_ell+gamma_s) = %.15e",
                                 p1, p100, d, exact)};
  });

  run(6, "network identity", [] {
    std::mt19937_64 rng(1006);
    double snr_dev = 0.0;
    for (int i = 0; i < 500; ++i) {
      const CavityParams p = random_cavity(rng);
      const int m = 1 + static_cast<int>(rng() % 10);
      const double g = log_uniform(rng, 1.0, 100.0);
      const double w = uniform(rng, -10.0, 10.0);
      const std::vector<CavityParams> cav(m, p);
      const double net = network_output(cav, g, near_optimal_weights(cav, w), w).snr;
      snr_dev = std::max(snr_dev, rel(net, m * visibility(p, g, w, VisibilityKind::squeezed)));
    }
    double rate_dev = 0.0;
    const CavityParams p = cavity(1.0, 8.0, 1e-6, 10.0);
    const double single = squeezed_rate(p, 4.0);
    for (int m : {1, 2, 4, 8, 16}) {
      const std::vector<CavityParams> cav(m, p);
      const double net = network_scan_rate(config_for(cav, 4.0), 1.0, NetworkScanMode::coherent).rate;
      rate_dev = std::max(rate_dev, rel(net, m * m * single));
    }
    return Verdict{snr_dev < 1e-12 && rate_dev < 1e-9,
                   fmt("SNR vs M x single max rel = %.2e (tol 1e-12); rate vs M^2 R_sq max rel = %.2e (tol 1e-9)",
                       snr_dev, rate_dev)};
  });

  run(7, "heterogeneous network scaling", [] {
    bool ok = true;
    std::string detail;
    for (double g : {1.0, 4.0}) {
      std::vector<double> ms, coh, ind;
      for (int m = 2; m <= 20; ++m) {
        const NetworkConfig cfg = config_for(spread_network(m, g), g);
        ms.push_back(m);
        coh.push_back(network_scan_rate(cfg, 1.0, NetworkScanMode::coherent, WeightPolicy::near_optimal).rate);
        ind.push_back(network_scan_rate(cfg, 1.0, NetworkScanMode::independent).rate);
      }
      const double sc = loglog_slope(ms, coh), si = loglog_slope(ms, ind);
      ok = ok && std::abs(sc - 2.0) <= 0.1 && std::abs(si - 1.0) <= 0.05;
      detail += fmt("%sG=%g: coherent slope %.4f (2 +- 0.1), independent slope %.4f (1 +- 0.05)",
                    detail.empty() ? "" : "; ", g, sc, si);
    }
    return Verdict{ok, detail};
  });

  run(8, "two-cavity weight optimality", [] {
    const double g = 4.0;
    const std::vector<CavityParams> cav{cavity(1.0, 2.0 * g, 1e-6), cavity(3.0, 6.0 * g, 1e-6)};
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(-5.0 + 0.25 * i);
    const OptimizeResult opt = optimize_weights(cav, g, WeightMode::per_frequency, grid);
    double worst_gap = 0.0, worst_at = 0.0, optimizer_vs_closed = 0.0;
    bool uniform_below = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = grid[i];
      const double near = std::pow(network_output(cav, g, near_optimal_weights(cav, w), w).snr, 2);
      const double uni = std::pow(network_output(cav, g, uniform_weights(cav, w), w).snr, 2);
      const double best = opt.objective[i];
      const double closed = std::pow(optimal_network_snr(cav, g, w), 2);
      optimizer_vs_closed = std::max(optimizer_vs_closed, rel(best, closed));
      const double gap = best / near - 1.0;
      if (gap > worst_gap) {
        worst_gap = gap;
        worst_at = w;
      }
      uniform_below = uniform_below && uni < near && uni < best;
    }
    const bool ok = worst_gap < 0.01 && uniform_below;
    return Verdict{ok, fmt("max (optimum/near-optimal - 1) in SNR^2 = %.4f at omega = %+.2f (tol 0.01); "
                           "uniform strictly below: %s; optimizer vs closed-form optimum max rel = %.1e",
                           worst_gap, worst_at, uniform_below ? "yes" : "no", optimizer_vs_closed)};
  });

  run(9, "interference penalty", [] {
    // Primary: uniform weights without phase correction against phase-corrected
    // near-optimal weights. Also reported: near-optimal magnitudes with and
    // without the phase correction.
    double lo = 1.0, hi = 0.0, lo2 = 1.0, hi2 = 0.0;
    for (int m = 2; m <= 20; ++m) {
      const NetworkConfig cfg = config_for(spread_network(m, 1.0), 1.0);
      const double corrected = network_scan_rate(cfg, 1.0, NetworkScanMode::coherent, WeightPolicy::near_optimal).rate;
      const double uni =
          network_scan_rate(cfg, 1.0, NetworkScanMode::coherent, WeightPolicy::uniform_uncorrected).rate;
      const double mag =
          network_scan_rate(cfg, 1.0, NetworkScanMode::coherent, WeightPolicy::near_optimal_uncorrected).rate;
      const double pen = 1.0 - uni / corrected, pen2 = 1.0 - mag / corrected;
      lo = std::min(lo, pen);
      hi = std::max(hi, pen);
      lo2 = std::min(lo2, pen2);
      hi2 = std::max(hi2, pen2);
    }
    const bool ok = lo >= 0.02 && hi <= 0.06;
    return Verdict{ok, fmt("uniform-uncorrected penalty over M=2..20: [%.2f%%, %.2f%%] (band [2%%, 6%%]); "
                           "near-optimal-uncorrected penalty: [%.2f%%, %.2f%%]",
                           100 * lo, 100 * hi, 100 * lo2, 100 * hi2)};
  });

  run(10, "GKP asymptotics", [] {
    const double g = 100.0;
    const Maximum gkp = maximize_scalar([&](double x) { return scan_rate_ratio_gkp(x, g); }, 1.0, 40.0 * g);
    const Maximum sq = maximize_scalar([&](double x) { return scan_rate_ratio_squeezed(x, g); }, 0.5, 20.0 * g);
    const double ratio = gkp.value / sq.value;
    const double closed = gkp_to_squeezed_optimum_ratio(g);
    const bool ok = ratio >= 1.9 && ratio <= 2.05 && std::abs(gkp.argmax / (4.0 * g) - 1.0) < 0.05 &&
                    rel(ratio, closed) < 1e-9;
    return Verdict{ok, fmt("R*_GKP/R*_sq(G=100) = %.5f (band [1.9, 2.05], closed form %.5f); x*_GKP = %.3f vs 4G = %g",
                           ratio, closed, gkp.argmax, 4.0 * g)};
  });

  run(11, "GKP no-go", [] {
    long violations = 0, points = 0;
    double worst = 0.0;
    for (int gi = 0; gi < 10; ++gi) {
      const double g = std::pow(10.0, 3.0 * gi / 9.0);
      for (int xi = 0; xi < 50; ++xi) {
        const CavityParams p = cavity(1.0, std::pow(10.0, -2.0 + 5.0 * xi / 49.0), 1e-8);
        for (int wi = 0; wi < 50; ++wi) {
          const double w = -20.0 + 40.0 * wi / 49.0;
          const double gkp = snr_gkp_gaussian(p, GkpParams{g, g, 0.0}, w);
          const double sq = visibility(p, g, w, VisibilityKind::squeezed);
          worst = std::max(worst, gkp / sq);
          violations += gkp > sq;
          ++points;
        }
      }
    }
    return Verdict{violations == 0, fmt("%ld violations over %ld grid points; max SNR_GKP/SNR_sq = %.6f", violations,
                                        points, worst)};
  });

  run(12, "modular estimator", [] {
    const double y10 = y_of_G(10.0);
    double worst = 0.0;
    for (double db = 10.0; db <= 30.0; db += 0.5) {
      const ModularNoise m{y_of_G(std::pow(10.0, db / 10.0)), 1e-3};
      worst = std::max(worst, 1.0 - modular_snr(m) / gaussian_snr(m));
    }
    // Error-revised GKP optimum over the squeezed optimum, as a function of dB.
    auto revised = [](double db) {
      const double g = std::pow(10.0, db / 10.0);
      return error_revised_rate(g) * gkp_to_squeezed_optimum_ratio(g) - 1.0;
    };
    double lo = 3.0, hi = 15.0;
    const bool bracketed = revised(lo) < 0.0 && revised(hi) > 0.0;
    for (int it = 0; it < 100 && bracketed; ++it) {
      const double mid = 0.5 * (lo + hi);
      (revised(mid) < 0.0 ? lo : hi) = mid;
    }
    const double crossing = 0.5 * (lo + hi);
    const bool ok = std::abs(y10 - 0.290) <= 0.001 && worst < 0.1 && bracketed && std::abs(crossing - 8.0) <= 1.0;
    return Verdict{ok, fmt("y(10) = %.5f (0.290 +- 0.001); max SNR discrepancy for s_dB >= 10: %.4f (tol 0.1); "
                           "break-even at %.3f dB (8 +- 1)",
                           y10, worst, crossing)};
  });

  run(13, "JPA equivalence", [] {
    std::mt19937_64 rng(1013);
    double snr_dev = 0.0, phase_dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const CavityParams p = random_cavity(rng);
      const JpaParams j{uniform(rng, 0.0, 2.5), 0.0, p.n_T_bar};
      const double w = uniform(rng, -10.0, 10.0);
      snr_dev = std::max(snr_dev, rel(snr_jpa(p, j, w), 2.0 * visibility(p, j.gain(), w, VisibilityKind::squeezed)));
      const GaussianState with = jpa_circuit(p, j, w);
      JpaCircuitOptions off;
      off.keep_theta_mm = false;
      const GaussianState without = jpa_circuit(p, j, w, off);
      phase_dev = std::max(phase_dev, (with.cov - without.cov).cwiseAbs().maxCoeff() / with.cov.cwiseAbs().maxCoeff());
    }
    return Verdict{snr_dev < 1e-12 && phase_dev < 1e-12,
                   fmt("SNR_JPA vs 2 x squeezed max rel = %.2e (tol 1e-12); covariance change without theta_mm = %.2e "
                       "(tol 1e-12)",
                       snr_dev, phase_dev)};
  });

  run(14, "pump-frequency fluctuations", [] {
    // gamma_ell = 1, gamma_m = 2 on resonance, 10 dB of squeezing.
    const CavityParams p = cavity(1.0, 2.0, 1e-9);
    const double r = 0.5 * std::log(10.0);
    const double nt = p.noise_factor();
    const PumpNoiseEstimate small =
        pump_fluctuation_monte_carlo(p, JpaParams{r, 0.01 * std::exp(-2.0 * r), 0.0}, 0.0, 1000000, 14);
    const PumpNoiseEstimate large = pump_fluctuation_monte_carlo(p, JpaParams{r, std::exp(-r), 0.0}, 0.0, 1000000, 15);
    // "O(1) x vacuum" is pinned at half a vacuum unit.
    const bool ok = small.mean_excess + 5.0 * small.std_error < 0.01 * nt && large.mean_excess >= 0.5 * nt;
    return Verdict{ok, fmt("excess at sigma_c = 0.01 e^-2r: %.3e +- %.1e N_T (tol < 0.01); at sigma_c = e^-r: %.4f "
                           "+- %.4f N_T (need >= 0.5)",
                           small.mean_excess / nt, small.std_error / nt, large.mean_excess / nt, large.std_error / nt)};
  });

  run(15, "Monte Carlo SNR oracle", [] {
    CavityParams p = cavity(1.0, 2.0, 1e-6, 4e5);
    p.n_T_bar = 0.05;
    const double w = 0.6;
    const MonteCarloEstimate ql = monte_carlo_snr_oracle(p, 1.0, w, 1000000, 151);
    const MonteCarloEstimate sq = monte_carlo_snr_oracle(p, 10.0, w, 1000000, 152);
    const MonteCarloEstimate again = monte_carlo_snr_oracle(p, 10.0, w, 1000000, 152);
    const double zq = (ql.snr - visibility(p, 1.0, w, VisibilityKind::quantum_limited)) / ql.std_error;
    const double zs = (sq.snr - visibility(p, 10.0, w, VisibilityKind::squeezed)) / sq.std_error;
    const bool identical = std::memcmp(&sq.snr, &again.snr, sizeof(double)) == 0 &&
                           std::memcmp(&sq.std_error, &again.std_error, sizeof(double)) == 0;
    return Verdict{std::abs(zq) < 5.0 && std::abs(zs) < 5.0 && identical,
                   fmt("QL z = %+.2f, squeezed z = %+.2f (|z| < 5); rerun byte-identical: %s", zq, zs,
                       identical ? "yes" : "no")};
  });

  run(16, "units dictionary", [] {
    std::mt19937_64 rng(1016);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      PhysicalParams ph;
      ph.g_a_gamma = log_uniform(rng, 1e-17, 1e-12);
      ph.b_field = uniform(rng, 1.0, 20.0);
      ph.eta = uniform(rng, 0.05, 1.0);
      ph.frequency_hz = log_uniform(rng, 1e8, 1e11);
      ph.rho_a = uniform(rng, 0.1, 1.0);
      ph.volume = log_uniform(rng, 1e-5, 1.0);
      ph.q_c = log_uniform(rng, 1e3, 1e7);
      ph.beta = log_uniform(rng, 0.1, 20.0);
      ph.temperature = log_uniform(rng, 0.005, 4.0);
      ph.q_a = log_uniform(rng, 1e5, 1e7);
      worst = std::max(worst, rel(signal_power_quantum(ph), signal_power_classical(ph)));
    }
    const double nbar = thermal_occupation(7e9, 0.035);
    const bool ok = worst < 1e-9 && std::abs(nbar / 1.1e-4 - 1.0) <= 0.05;
    return Verdict{ok, fmt("quantum vs classical power max rel = %.2e (tol 1e-9); n_T(7 GHz, 35 mK) = %.4e "
                           "(target 1.1e-4 +- 5%%)",
                           worst, nbar)};
  });

  std::printf("%d of 16 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
