#include "haloscan/cavity.hpp"

#include <cmath>

namespace haloscan {

namespace {

using cd = std::complex<double>;

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

// Squared magnitude below which chi_mm is treated as an exact zero when
// assigning its phase.
constexpr double kZeroReflection = 1e-28;

}  // namespace

void CavityParams::validate() const {
  require(std::isfinite(gamma_ell) && gamma_ell > 0.0, "gamma_ell must be > 0");
  require(std::isfinite(gamma_m) && gamma_m >= 0.0, "gamma_m must be >= 0");
  require(std::isfinite(gamma_s) && gamma_s >= 0.0, "gamma_s must be >= 0");
  require(std::isfinite(n_T_bar) && n_T_bar >= 0.0, "n_T_bar must be >= 0");
  require(std::isfinite(n_s) && n_s >= 0.0, "n_s must be >= 0");
  require(std::isfinite(delta_a) && delta_a > 0.0, "delta_a must be > 0");
}

Matrix3c susceptibility(const CavityParams& p, double omega) {
  p.validate();
  const double rates[3] = {p.gamma_m, p.gamma_s, p.gamma_ell};
  const cd denom(p.total_rate() / 2.0, omega);
  Matrix3c chi;
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      chi(k, j) = (k == j ? 1.0 : 0.0) - std::sqrt(rates[k] * rates[j]) / denom;
    }
  }
  return chi;
}

SusceptibilityEntry susceptibility_entry(const CavityParams& p, double omega, Port out, Port in) {
  const cd c = susceptibility(p, omega)(out, in);
  return {std::norm(c), std::arg(c)};
}

MixingAngles mixing_angles(const CavityParams& p, double omega) {
  const Matrix3c chi = susceptibility(p, omega);
  const cd mm = chi(measurement_port, measurement_port);
  const cd ms = -chi(measurement_port, signal_port);
  MixingAngles a{};
  // Adding +0.0 turns a negative-zero imaginary part into +0, so an
  // over-coupled resonance reports +pi rather than -pi.
  a.theta_mm = std::norm(mm) < kZeroReflection ? 0.0 : std::arg(cd(mm.real(), mm.imag() + 0.0));
  a.theta_ms = std::arg(ms);
  return a;
}

double reflection_mag_sq(const CavityParams& p, double omega) {
  return std::norm(susceptibility(p, omega)(measurement_port, measurement_port));
}

double signal_transfer_mag_sq(const CavityParams& p, double omega) {
  return std::norm(susceptibility(p, omega)(measurement_port, signal_port));
}

double reflection_mag_sq_expanded(const CavityParams& p, double omega) {
  const double half = p.total_rate() / 2.0;
  const double diff = p.gamma_m - p.gamma_ell;
  return (diff * diff / 4.0 + omega * omega) / (half * half + omega * omega);
}

double signal_transfer_mag_sq_expanded(const CavityParams& p, double omega) {
  const double half = p.total_rate() / 2.0;
  return p.gamma_m * p.gamma_s / (half * half + omega * omega);
}

double sin_theta_mm_expanded(const CavityParams& p, double omega) {
  const double half = p.total_rate() / 2.0;
  const double diff = p.gamma_m - p.gamma_ell;
  const double num = omega * p.gamma_m;
  const double den = std::sqrt((diff * diff / 4.0 + omega * omega) * (half * half + omega * omega));
  return den == 0.0 ? 0.0 : num / den;
}

double sin_theta_ms_expanded(const CavityParams& p, double omega) {
  const double half = p.total_rate() / 2.0;
  return -omega / std::sqrt(half * half + omega * omega);
}

GaussianChannel cavity_gaussian_channel(const CavityParams& p, double omega, const Eigen::Vector2d& signal_mean) {
  const Matrix3c chi = susceptibility(p, omega);
  const MixingAngles ang = mixing_angles(p, omega);
  const double refl = std::norm(chi(measurement_port, measurement_port));
  const double trans = std::abs(chi(measurement_port, signal_port));
  GaussianChannel ch;
  ch.scale = std::sqrt(refl) * rotation_block(ang.theta_mm);
  ch.noise = p.noise_factor() * (1.0 - refl) * Mat::Identity(2, 2);
  ch.displacement = trans * rotation_block(ang.theta_ms) * signal_mean;
  return ch;
}

GaussianChannel cavity_gaussian_channel_unrotated(const CavityParams& p, double omega,
                                                  const Eigen::Vector2d& signal_mean) {
  GaussianChannel ch = cavity_gaussian_channel(p, omega, signal_mean);
  ch.scale = std::sqrt(reflection_mag_sq(p, omega)) * Mat::Identity(2, 2);
  return ch;
}

SymplecticMap cavity_symplectic(const CavityParams& p, double omega) {
  Matrix3c chi = susceptibility(p, omega);
  // Negate the signal-port reference on both sides; the result stays unitary.
  chi.row(signal_port) *= -1.0;
  chi.col(signal_port) *= -1.0;
  return passive_from_unitary(chi);
}

GaussianChannel cavity_channel_by_reduction(const CavityParams& p, double omega, const Eigen::Vector2d& signal_mean) {
  Vec env_mean = Vec::Zero(4);
  env_mean.head<2>() = signal_mean;
  const Mat env_cov = p.noise_factor() * Mat::Identity(4, 4);
  return reduce_to_channel(cavity_symplectic(p, omega), env_mean, env_cov, {measurement_port});
}

}  // namespace haloscan
