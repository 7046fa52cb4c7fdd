// GKP-assisted readout: the Gaussian-approximation SNR and scan rate, the
// SUM-gate coupling to a GKP ancilla, and the modular (mod sqrt(2 pi)) estimator
// that quantifies when the Gaussian approximation breaks down.
#pragma once

#include <cstdint>
#include <utility>

#include "haloscan/cavity.hpp"
#include "haloscan/gaussian.hpp"

namespace haloscan {

struct GkpParams {
  double gain = 1.0;      // squeezing G of the injected GKP state (s_dB = 10 log10 G)
  double anc_gain = 1.0;  // squeezing of the ancilla
  double n_T_bar = 0.0;   // thermal occupation during state preparation

  // 1/G_eff = 1/G + 1/G_anc
  double effective_gain() const { return 1.0 / (1.0 / gain + 1.0 / anc_gain); }
  void validate() const;
};

// The GKP state passes through a quantum-limited amplifier of gain 1/|chi_mm|^2,
// then the cavity; a SUM gate copies Q onto the ancilla and both the signal P
// and ancilla Q are read out. Per measured quadrature:
//   signal = |chi_ms|^2 n_s,  noise = N_gkp / G_eff + 2 N_T (1 - |chi_mm|^2),
// and the two quadratures add, giving
//   2 |chi_ms|^2 n_s / (N_gkp / G_eff + 2 N_T (1 - |chi_mm|^2)).
// For small gamma_s this is 2 gamma_m gamma_s n_s / (N_T (((gamma/2)^2 + omega^2) / G_eff + 2 gamma_m gamma_ell)).
double snr_gkp_gaussian(const CavityParams& p, const GkpParams& g, double omega);

// Scan rate relative to the quantum-limited optimum for an
// ideal ancilla (G_eff = G): 27 sqrt(G) x^2 / (8 ((x + 1)^2 / (4G) + 2x)^{3/2}).
double scan_rate_ratio_gkp(double x, double gain);
// Positive root of x^2 - x (1 + 4G) - 2 = 0.
double optimal_coupling_gkp(double gain);

// ---- SUM gate ---------------------------------------------------------------

// Couples a signal mode to an ancilla through the SUM gate and returns the
// two marginals (signal, ancilla). Inputs are taken as uncorrelated.
std::pair<GaussianState, GaussianState> sum_gate_coupling(const GaussianState& signal, const GaussianState& ancilla);

// ---- Modular estimator --------------------------------------------------------

struct ModularNoise {
  double y = 0.0;        // additive noise; the quadrature variance is y / 2
  double epsilon = 0.0;  // true displacement along the measured quadrature
};

// Lattice spacing sqrt(2 pi).
double gkp_lattice_spacing();

// k-th moment (k = 1 or 2) of the displacement estimate reduced into
// [-L/2, L/2), L = sqrt(2 pi), for Gaussian noise of variance y/2 around epsilon.
// Each lattice cell is integrated in closed form with error functions.
double modular_moment(int k, const ModularNoise& m);
// <q>^2 / Var(q) of the reduced estimate.
double modular_snr(const ModularNoise& m);
// Gaussian counterpart 2 epsilon^2 / y.
double gaussian_snr(const ModularNoise& m);

struct ModularMonteCarlo {
  double first_moment, second_moment;
  double first_se, second_se;
};
ModularMonteCarlo modular_moment_monte_carlo(const ModularNoise& m, std::size_t samples, std::uint64_t seed);

// Additive noise at the scan-rate optimum x = 4G on resonance: 1/G + 32G/(4G+1)^2.
double y_of_G(double gain);
// Frequency-resolved noise in vacuum units: y(omega) = N_gkp / G_eff + 2 N_T (1 - |chi_mm(omega)|^2).
double y_at(const CavityParams& p, const GkpParams& g, double omega);

// (modular SNR / Gaussian SNR)^2 at y = y_of_G(G), which lower-bounds the
// ratio of the error-revised to the Gaussian optimal GKP scan rate.
double error_revised_rate(double gain, double epsilon = 1e-3);
// Same prefactor with y evaluated at a given detuning and coupling.
double error_revised_rate_at(const CavityParams& p, const GkpParams& g, double omega, double epsilon = 1e-3);

// Optimal Gaussian GKP rate over optimal squeezed rate, both maximized over x.
double gkp_to_squeezed_optimum_ratio(double gain);

}  // namespace haloscan
