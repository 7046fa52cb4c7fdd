#include <cmath>

#include "haloscan/radiometry.hpp"

namespace haloscan {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

double lorentz_denominator(const CavityParams& p, double omega) {
  const double half = p.total_rate() / 2.0;
  return half * half + omega * omega;
}

}  // namespace

double snr_homodyne_single_shot(const CavityParams& p, double omega, double amplitude, double angle) {
  p.validate();
  const double c = std::cos(angle);
  return p.gamma_m * p.gamma_s * amplitude * amplitude * c * c / (p.noise_factor() * lorentz_denominator(p, omega));
}

double snr_heterodyne(const CavityParams& p, double omega, double amplitude) {
  return 0.5 * signal_transfer_mag_sq(p, omega) * amplitude * amplitude / p.noise_factor();
}

double snr_homodyne_amplified(const CavityParams& p, double omega, double amplitude, double angle, double gain) {
  require(gain >= 1.0, "amplifier gain must be >= 1");
  // Signal power scales by g; noise becomes g N_T + (g - 1) N_T.
  return snr_homodyne_single_shot(p, omega, amplitude, angle) * gain / (2.0 * gain - 1.0);
}

double snr_heterodyne_amplified(const CavityParams& p, double omega, double amplitude, double gain) {
  require(gain >= 1.0, "amplifier gain must be >= 1");
  // Heterodyne already pays one unit of vacuum noise; the amplifier's added
  // noise takes its place and the ratio is gain independent:
  //   (g S / 2) / ((g N + (g - 1) N + N) / 2) = S / (2 N).
  const double signal = gain * signal_transfer_mag_sq(p, omega) * amplitude * amplitude;
  const double noise = p.noise_factor() * (2.0 * gain - 1.0) + p.noise_factor();
  return signal / noise;
}

double amplifier_degradation_ratio(double gain) {
  require(std::isfinite(gain) && gain >= 1.0, "amplifier gain must be >= 1");
  return gain / (2.0 * gain - 1.0);
}

double visibility(const CavityParams& p, double gain, double omega, VisibilityKind kind) {
  require(std::isfinite(gain) && gain >= 1.0, "squeezing gain must be >= 1");
  const double trans = signal_transfer_mag_sq(p, omega);
  const double refl = reflection_mag_sq(p, omega);
  const double nt = p.noise_factor();
  switch (kind) {
    case VisibilityKind::quantum_limited:
      return trans * p.n_s / nt;
    case VisibilityKind::squeezed:
    case VisibilityKind::network:
      return trans * p.n_s / (nt * (refl / gain + 1.0 - refl));
    case VisibilityKind::jpa:
      return 2.0 * trans * p.n_s / (nt * (refl / gain + 1.0 - refl));
    case VisibilityKind::gkp:
      return 2.0 * trans * p.n_s / (nt * (1.0 / gain + 2.0 * (1.0 - refl)));
  }
  throw InvalidArgument("unknown visibility kind");
}

VisibilityCurve sample_visibility(const CavityParams& p, double gain, VisibilityKind kind,
                                  const std::vector<double>& omegas) {
  VisibilityCurve curve{p, gain, kind, {}};
  curve.samples.reserve(omegas.size());
  for (double w : omegas) curve.samples.emplace_back(w, visibility(p, gain, w, kind));
  return curve;
}

double visibility_sq_fwhm(const std::function<double(double)>& alpha) {
  const double peak = alpha(0.0);
  require(peak > 0.0, "visibility vanishes at zero detuning");
  const double half = 0.5 * peak * peak;
  auto above = [&](double w) {
    const double a = alpha(w);
    return a * a >= half;
  };
  double hi = 1.0;
  int guard = 0;
  while (above(hi)) {
    hi *= 2.0;
    if (++guard > 1000) throw IntegrationFailure("visibility does not fall to half maximum", {});
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? lo : hi) = mid;
  }
  return 2.0 * 0.5 * (lo + hi);
}

}  // namespace haloscan
