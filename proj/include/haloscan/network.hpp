// Networks of M cavities sharing one resonance. A squeezed primary mode is
// spread over the cavities by a power divider (weights w'), and the cavity
// outputs are summed by a power combiner (weights w). Only the divider column
// and combiner row attached to the primary mode matter for the readout.
//
// Reflection phases theta_mm are taken as compensated (see jpa.hpp). The
// signal phases theta_ms are kept, since they decide whether the signal
// amplitudes add coherently.
#pragma once

#include <cstddef>
#include <vector>

#include "haloscan/cavity.hpp"
#include "haloscan/radiometry.hpp"

namespace haloscan {

struct NetworkConfig {
  std::vector<CavityParams> cavities;
  double gain = 1.0;
  CVec combiner;  // row of W feeding the primary output mode
  CVec divider;   // column of W' fed by the primary input mode

  int size() const { return static_cast<int>(cavities.size()); }
  // Checks sizes, unit norms (1e-12), shared n_T_bar / n_s / delta_a and G >= 1.
  void validate() const;
};

struct NetworkOutput {
  double signal_power = 0.0;  // in units of n_s times response
  double noise_power = 0.0;   // in units of N_T
  double snr = 0.0;
};

struct WeightPair {
  CVec combiner;
  CVec divider;
  bool degenerate = false;  // set when no cavity couples to the signal
};

// Combiner w_k proportional to |chi_ms,k| exp(-i theta_ms,k); divider
// w'_k proportional to |chi_ms,k| |chi_mm,k| exp(+i theta_ms,k).
WeightPair near_optimal_weights(const std::vector<CavityParams>& cavities, double omega);
// Near-optimal magnitudes with all phases left at zero.
WeightPair near_optimal_weights_uncorrected(const std::vector<CavityParams>& cavities, double omega);
// Equal magnitudes 1/sqrt(M) with the signal phases compensated.
WeightPair uniform_weights(const std::vector<CavityParams>& cavities, double omega);
// Equal magnitudes and zero phases.
WeightPair uniform_weights_uncorrected(int m);
// Exact per-frequency maximizer of the network SNR (closed form):
// w_k proportional to conj(s_k) / (1 - (1 - 1/G) |chi_mm,k|^2), w' aligned with w_k |chi_mm,k|.
WeightPair optimal_weights(const std::vector<CavityParams>& cavities, double gain, double omega);
// SNR at optimal_weights: n_s / N_T * sum_k |chi_ms,k|^2 / (1 - (1 - 1/G) |chi_mm,k|^2).
double optimal_network_snr(const std::vector<CavityParams>& cavities, double gain, double omega);

// signal = n_s |sum_k w_k s_k|^2 with s_k = |chi_ms,k| exp(i theta_ms,k);
// c = sum_k w_k |chi_mm,k| w'_k, psi = arg c;
// noise = N_T (|c|^2 (cos^2 psi / G + G sin^2 psi) + 1 - |c|^2).
NetworkOutput network_output(const NetworkConfig& cfg, double omega);
NetworkOutput network_output(const std::vector<CavityParams>& cavities, double gain, const WeightPair& w,
                             double omega);

// Same quantities from a full phase-space simulation: squeezed primary mode
// plus thermal auxiliaries -> divider unitary -> per-cavity channels ->
// combiner unitary -> Q quadrature of the primary output.
NetworkOutput network_output_by_circuit(const NetworkConfig& cfg, double omega);

// Unitary whose first column equals the given unit vector.
CMat complete_to_unitary(const CVec& first_column);

// n_s (sum_k |w_k|^2 |chi_ms,k|^2 + sum_{i != j} |w_i||w_j||chi_ms,i||chi_ms,j| cos(theta_i - theta_j)),
// where theta_k = theta_ms,k + phase_offsets[k] (offsets default to zero).
double signal_power_with_interference(const std::vector<CavityParams>& cavities, const Vec& combiner_magnitudes,
                                      double omega, const std::vector<double>& phase_offsets = {});

// ---- Weight optimization ----------------------------------------------------

enum class WeightMode { per_frequency, frequency_independent };

struct OptimizeResult {
  std::vector<double> omegas;
  std::vector<WeightPair> weights;      // one per omega, or a single pair
  std::vector<double> objective;        // SNR^2 per omega, or the integrated SNR^2
  std::vector<double> seed_objective;   // same quantity at the near-optimal seed
  bool converged = true;
  std::size_t iterations = 0;
};

// Symmetric grid of `points` detunings spanning +-10 times the largest total linewidth.
std::vector<double> default_weight_grid(const std::vector<CavityParams>& cavities, int points = 201);

// Nelder-Mead search over unconstrained complex vectors that are normalized
// before every evaluation, started from near_optimal_weights. The returned
// objective is never below the seed's. frequency_independent integrates SNR^2
// over the grid with the trapezoid rule.
OptimizeResult optimize_weights(const std::vector<CavityParams>& cavities, double gain, WeightMode mode,
                                const std::vector<double>& omega_grid = {});

// ---- Scan rate ----------------------------------------------------------------

enum class NetworkScanMode { coherent, independent };

enum class WeightPolicy {
  near_optimal,
  near_optimal_uncorrected,
  uniform,
  uniform_uncorrected,
  optimal,
  fixed  // use cfg.combiner / cfg.divider at every detuning
};

// coherent: scan_rate of the network SNR with weights chosen per detuning by
// `policy`. independent: sum of single-cavity squeezed scan rates.
ScanResult network_scan_rate(const NetworkConfig& cfg, double target_snr, NetworkScanMode mode,
                             WeightPolicy policy = WeightPolicy::near_optimal);

WeightPair weights_for_policy(const NetworkConfig& cfg, WeightPolicy policy, double omega);

}  // namespace haloscan
