#include <cmath>

#include "haloscan/gkp.hpp"
#include "haloscan/radiometry.hpp"

namespace haloscan {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

void GkpParams::validate() const {
  require(std::isfinite(gain) && gain >= 1.0, "GKP squeezing gain must be >= 1");
  require(anc_gain >= 1.0, "ancilla squeezing gain must be >= 1");
  require(std::isfinite(n_T_bar) && n_T_bar >= 0.0, "n_T_bar must be >= 0");
}

double snr_gkp_gaussian(const CavityParams& p, const GkpParams& g, double omega) {
  p.validate();
  g.validate();
  const double trans = signal_transfer_mag_sq(p, omega);
  const double refl = reflection_mag_sq(p, omega);
  const double gkp_noise = (1.0 + 2.0 * g.n_T_bar) / g.effective_gain();
  return 2.0 * trans * p.n_s / (gkp_noise + 2.0 * p.noise_factor() * (1.0 - refl));
}

double scan_rate_ratio_gkp(double x, double gain) {
  require(x >= 0.0, "coupling ratio must be >= 0");
  require(gain >= 1.0, "squeezing gain must be >= 1");
  const double inner = (x + 1.0) * (x + 1.0) / (4.0 * gain) + 2.0 * x;
  return 27.0 * std::sqrt(gain) * x * x / (8.0 * std::pow(inner, 1.5));
}

double optimal_coupling_gkp(double gain) {
  require(gain >= 1.0, "squeezing gain must be >= 1");
  const double b = 1.0 + 4.0 * gain;
  return 0.5 * (b + std::sqrt(b * b + 8.0));
}

double gkp_to_squeezed_optimum_ratio(double gain) {
  return scan_rate_ratio_gkp(optimal_coupling_gkp(gain), gain) /
         scan_rate_ratio_squeezed(optimal_coupling_squeezed(gain), gain);
}

std::pair<GaussianState, GaussianState> sum_gate_coupling(const GaussianState& signal, const GaussianState& ancilla) {
  require(signal.mode_count() == 1 && ancilla.mode_count() == 1, "SUM gate couples two single-mode states");
  GaussianState sig = signal;
  GaussianState anc = ancilla;
  // Q_anc <- Q_anc + Q_sig, P_sig <- P_sig - P_anc.
  sig.mean(1) -= ancilla.mean(1);
  anc.mean(0) += signal.mean(0);
  sig.cov(1, 1) += ancilla.cov(1, 1);
  anc.cov(0, 0) += signal.cov(0, 0);
  return {sig, anc};
}

}  // namespace haloscan
