// Three-port cavity response and its single-mode Gaussian-channel form.
//
// Port order is (measurement, signal, loss). Rates are dimensionless, measured
// in units of a reference rate (normally the intrinsic loss rate of the first
// cavity). Detunings use the same unit.
#pragma once

#include <Eigen/Dense>

#include <complex>

#include "haloscan/gaussian.hpp"

namespace haloscan {

struct CavityParams {
  double gamma_ell = 1.0;  // intrinsic loss rate
  double gamma_m = 1.0;    // measurement-port coupling
  double gamma_s = 0.0;    // signal coupling
  double n_T_bar = 0.0;    // thermal occupation
  double n_s = 0.0;        // signal occupation spectral density
  double delta_a = 1.0;    // signal bandwidth

  double total_rate() const { return gamma_m + gamma_ell + gamma_s; }
  double noise_factor() const { return 1.0 + 2.0 * n_T_bar; }
  double coupling_ratio() const { return gamma_m / gamma_ell; }
  // Throws InvalidArgument when a field is out of range.
  void validate() const;
};

enum Port : int { measurement_port = 0, signal_port = 1, loss_port = 2 };

using Matrix3c = Eigen::Matrix3cd;

// chi_kj = delta_kj - sqrt(gamma_k gamma_j) / (gamma/2 + i omega).
Matrix3c susceptibility(const CavityParams& p, double omega);

struct SusceptibilityEntry {
  double mag_sq;
  double phase;
};

SusceptibilityEntry susceptibility_entry(const CavityParams& p, double omega, Port out, Port in);

// Phases of the reflected and signal-to-measurement amplitudes.
//   theta_mm = arg chi_mm, the principal value. It is set to 0 at the critical-coupling
//              zero (gamma_m = gamma_ell + gamma_s, omega = 0).
//   theta_ms = arg(-chi_ms). The sign flip makes the signal port's phase reference
//              such that theta_ms(0) = 0. Both angles are odd in omega,
//              except that theta_mm(0) = pi for an over-coupled cavity.
struct MixingAngles {
  double theta_mm;
  double theta_ms;
};

MixingAngles mixing_angles(const CavityParams& p, double omega);

// Exact |chi_mm|^2 and |chi_ms|^2 from the complex matrix.
double reflection_mag_sq(const CavityParams& p, double omega);
double signal_transfer_mag_sq(const CavityParams& p, double omega);

// Leading-order closed forms valid for gamma_s much smaller than the other rates.
double reflection_mag_sq_expanded(const CavityParams& p, double omega);
double signal_transfer_mag_sq_expanded(const CavityParams& p, double omega);
double sin_theta_mm_expanded(const CavityParams& p, double omega);
double sin_theta_ms_expanded(const CavityParams& p, double omega);

// Single-mode channel seen at the measurement port:
//   scale = |chi_mm| O(theta_mm), noise = N_T (1 - |chi_mm|^2) I,
//   displacement = |chi_ms| O(theta_ms) signal_mean.
GaussianChannel cavity_gaussian_channel(const CavityParams& p, double omega,
                                        const Eigen::Vector2d& signal_mean);

// Same channel with the reflection phase removed (scale = |chi_mm| I). The
// network and two-mode calculations use it once theta_mm has been compensated.
GaussianChannel cavity_gaussian_channel_unrotated(const CavityParams& p, double omega,
                                                  const Eigen::Vector2d& signal_mean);

// 6x6 symplectic of the full three-port scattering, in the same phase
// convention as mixing_angles (signal port reference negated).
SymplecticMap cavity_symplectic(const CavityParams& p, double omega);

// Channel obtained by tracing the signal and loss ports out of cavity_symplectic,
// with thermal noise on both and the signal port displaced by signal_mean.
GaussianChannel cavity_channel_by_reduction(const CavityParams& p, double omega,
                                            const Eigen::Vector2d& signal_mean);

}  // namespace haloscan
