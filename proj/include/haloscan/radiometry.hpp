// Single-cavity signal-to-noise ratios, visibilities and the scan-rate integral.
//
// A visibility alpha(omega) is the frequency-resolved SNR before the
// sqrt(delta_a * T_obs) averaging factor. Scan rates follow from
//   R = delta_a / (2 pi zeta^2) * integral of alpha(omega)^2 over omega.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "haloscan/cavity.hpp"

namespace haloscan {

// ---- Single-shot SNRs -------------------------------------------------------

// gamma_m gamma_s |mu|^2 cos^2(angle) / (N_T ((gamma/2)^2 + omega^2)), where
// angle is the signal phase plus theta_ms.
double snr_homodyne_single_shot(const CavityParams& p, double omega, double amplitude, double angle);

// |chi_ms|^2 |mu|^2 / (2 N_T).
double snr_heterodyne(const CavityParams& p, double omega, double amplitude);

// The same two measurements after a phase-insensitive amplifier with power
// gain g whose added noise equals the cavity noise level.
double snr_homodyne_amplified(const CavityParams& p, double omega, double amplitude, double angle, double gain);
double snr_heterodyne_amplified(const CavityParams& p, double omega, double amplitude, double gain);

// Homodyne-to-heterodyne SNR ratio for random-phase signals behind an
// amplifier of gain g: g / (2g - 1).
double amplifier_degradation_ratio(double gain);

// ---- Visibilities -----------------------------------------------------------

enum class VisibilityKind { quantum_limited, squeezed, gkp, jpa, network };

// quantum_limited: |chi_ms|^2 n_s / N_T.
// squeezed:        |chi_ms|^2 n_s / (N_T (|chi_mm|^2 / G + 1 - |chi_mm|^2)).
// gkp:             GKP readout with an ideal ancilla (effective gain G).
// jpa:             two-mode-squeezed readout, twice the squeezed value.
// network:         a single-sensor network, identical to squeezed.
// All kinds use the exact susceptibility; G = 1 makes squeezed equal to
// quantum_limited up to rounding.
double visibility(const CavityParams& p, double gain, double omega, VisibilityKind kind);

struct VisibilityCurve {
  CavityParams params;
  double gain = 1.0;
  VisibilityKind kind = VisibilityKind::quantum_limited;
  std::vector<std::pair<double, double>> samples;  // (omega, alpha)
};

VisibilityCurve sample_visibility(const CavityParams& p, double gain, VisibilityKind kind,
                                  const std::vector<double>& omegas);

// Full width at half maximum of alpha^2, found by bisection on [0, inf).
double visibility_sq_fwhm(const std::function<double(double)>& alpha);

// ---- Scan rate --------------------------------------------------------------

struct IntegrationMetadata {
  double cutoff = 0.0;          // Omega_max of the quadrature region
  double rel_tolerance = 0.0;   // requested relative tolerance
  double error_estimate = 0.0;  // quadrature error estimate (absolute)
  double tail = 0.0;            // analytic contribution beyond the cutoff (both sides)
  std::size_t evaluations = 0;  // visibility evaluations
  bool converged = false;
};

struct ScanResult {
  double rate = 0.0;
  double target_snr = 1.0;
  double integral = 0.0;  // integral of alpha^2 over the whole line
  IntegrationMetadata integration;
  std::optional<std::uint64_t> seed;
};

struct ScanOptions {
  double rel_tolerance = 1e-9;
  double cutoff_ratio = 1e-6;  // alpha(Omega_max) / alpha(0)
  double initial_scale = 1.0;  // starting guess for the cutoff search
  int max_doublings = 200;
};

// Raised when the integrand does not decay or the quadrature fails.
class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, IntegrationMetadata meta)
      : std::runtime_error(what), metadata(meta) {}
  IntegrationMetadata metadata;
};

// alpha must be even in omega and decay like 1/omega^2; the region beyond the
// cutoff is added analytically from that asymptote.
ScanResult scan_rate(const std::function<double(double)>& alpha, double target_snr, double delta_a,
                     const ScanOptions& opts = {});

// Closed form for the quantum-limited visibility:
//   2 delta_a n_s^2 gamma_s^2 / (zeta^2 N_T^2 gamma_ell) * x^2 / (x + 1)^3, x = gamma_m / gamma_ell.
// The signal coupling is neglected inside the total rate.
double scan_rate_ql_closed_form(const CavityParams& p, double target_snr);
// Value of the closed form at its optimum x = 2, with the other fields of p.
double scan_rate_ql_optimum(const CavityParams& p, double target_snr);

// Squeezed rate relative to the quantum-limited optimum:
//   27 sqrt(G) x^2 / (32 ((x - 1)^2 / (4G) + x)^{3/2}).
double scan_rate_ratio_squeezed(double x, double gain);
// Positive root of x^2 + x (1 - 2G) - 2 = 0, the stationary point of the ratio.
double optimal_coupling_squeezed(double gain);

struct Maximum {
  double argmax;
  double value;
};

// Bracketed one-dimensional maximization (Brent's method).
Maximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi, int bits = 52);

// ---- Monte Carlo oracle -----------------------------------------------------

struct MonteCarloEstimate {
  double snr = 0.0;
  double std_error = 0.0;
  double noise_variance = 0.0;    // variance of the measured quadrature with no signal
  double power_variance = 0.0;    // sample variance of the measured power
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Draws random signal amplitudes (bivariate Gaussian, n_s per quadrature),
// propagates each through the cavity channel with input squeezing G aligned
// to the reflected quadrature, samples a homodyne outcome, and estimates
// (E[q^2] - noise) / noise. Samples are split into fixed-size batches with
// independent streams, so the result is bit-identical for a given seed.
MonteCarloEstimate monte_carlo_snr_oracle(const CavityParams& p, double gain, double omega,
                                          std::size_t sample_count, std::uint64_t seed);

}  // namespace haloscan
