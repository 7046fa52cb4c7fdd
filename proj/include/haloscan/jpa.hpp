// Squeezed readout built from a two-mode squeezed pair at detunings +omega and
// -omega around the cavity resonance (the output of a parametric amplifier).
// Recombining the two reflected modes cancels the reflection phase theta_mm,
// which a single-mode squeezer would have to compensate by hand.
#pragma once

#include <cstdint>

#include "haloscan/cavity.hpp"
#include "haloscan/gaussian.hpp"

namespace haloscan {

struct JpaParams {
  double r = 0.0;        // squeezing parameter, G = exp(2r)
  double sigma_c = 0.0;  // standard deviation of the pump-frequency offset
  double n_T_bar = 0.0;  // thermal occupation of the squeezer input

  double gain() const;
  void validate() const;
};

struct JpaVariances {
  double q_plus;   // Var Q of the output at +omega
  double p_minus;  // Var P of the output at -omega
};

// N_in |chi_mm|^2 exp(-2r) + N_T (1 - |chi_mm|^2) for both outputs.
JpaVariances jpa_output_variances(const CavityParams& p, const JpaParams& j, double omega);

struct JpaCircuitOptions {
  double pump_offset = 0.0;      // epsilon: the pair sits at epsilon +- omega
  bool keep_theta_mm = true;     // false deletes the reflection rotations
  Eigen::Vector2d signal_mean = Eigen::Vector2d::Zero();
};

// Two-mode phase-space simulation: thermal inputs -> local squeezers (Q on the
// +omega mode, P on the -omega mode) -> balanced splitter -> cavity channels at
// epsilon + omega and epsilon - omega -> balanced splitter.
GaussianState jpa_circuit(const CavityParams& p, const JpaParams& j, double omega, const JpaCircuitOptions& opts = {});
JpaVariances jpa_output_variances_circuit(const CavityParams& p, const JpaParams& j, double omega,
                                          const JpaCircuitOptions& opts = {});

// Sum of the Q(+omega) and P(-omega) SNRs for a random signal, evaluated on the circuit.
double snr_jpa(const CavityParams& p, const JpaParams& j, double omega);

// Var Q(epsilon + omega) for a pump offset epsilon:
//   N_T |chi(e+w)|^2 (e^{-2r} (1 + cos S) / 2 + e^{2r} (1 - cos S) / 2) + N_T (1 - |chi(e+w)|^2),
// with S = theta_mm(e + w) + theta_mm(e - w).
double var_with_pump_fluctuation(const CavityParams& p, const JpaParams& j, double omega, double epsilon);

// Leading small-epsilon anti-squeezing excess N_T |chi_mm|^2 e^{2r} (theta_mm'(omega) epsilon)^2,
// with the derivative taken by central differences of the exact phase.
double pump_excess_small_offset(const CavityParams& p, const JpaParams& j, double omega, double epsilon);

struct PumpNoiseEstimate {
  double mean_excess = 0.0;  // E[Var(epsilon)] - Var(0)
  double std_error = 0.0;
  double baseline = 0.0;     // Var(0)
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Draws epsilon ~ Normal(0, sigma_c) independently per detection interval.
PumpNoiseEstimate pump_fluctuation_monte_carlo(const CavityParams& p, const JpaParams& j, double omega,
                                               std::size_t samples, std::uint64_t seed);

}  // namespace haloscan
