#include "haloscan/jpa.hpp"

#include <cmath>
#include <numbers>

#include "haloscan/rng.hpp"

namespace haloscan {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

double JpaParams::gain() const { return std::exp(2.0 * r); }

void JpaParams::validate() const {
  require(std::isfinite(r) && r >= 0.0, "squeezing parameter r must be >= 0");
  require(std::isfinite(sigma_c) && sigma_c >= 0.0, "sigma_c must be >= 0");
  require(std::isfinite(n_T_bar) && n_T_bar >= 0.0, "n_T_bar must be >= 0");
}

JpaVariances jpa_output_variances(const CavityParams& p, const JpaParams& j, double omega) {
  j.validate();
  const double refl = reflection_mag_sq(p, omega);
  const double v = (1.0 + 2.0 * j.n_T_bar) * refl * std::exp(-2.0 * j.r) + p.noise_factor() * (1.0 - refl);
  return {v, v};
}

GaussianState jpa_circuit(const CavityParams& p, const JpaParams& j, double omega, const JpaCircuitOptions& opts) {
  j.validate();
  Mat squeeze = Mat::Zero(4, 4);
  squeeze.diagonal() << std::exp(-j.r), std::exp(j.r), std::exp(j.r), std::exp(-j.r);
  const Mat mix = beam_splitter(0.5).matrix;

  auto channel = [&](double w) {
    GaussianChannel ch = cavity_gaussian_channel(p, w, opts.signal_mean);
    if (!opts.keep_theta_mm) ch.scale = std::sqrt(reflection_mag_sq(p, w)) * Mat::Identity(2, 2);
    return ch;
  };
  const GaussianChannel cavities = direct_sum({channel(opts.pump_offset + omega), channel(opts.pump_offset - omega)});

  // Compose the whole linear map before touching the state. Propagating the
  // squeezed covariance stage by stage would cancel O(e^{2r}) entries down to
  // O(e^{-2r}) and lose digits; the composed map never holds those entries.
  const GaussianChannel splitters{mix, Mat::Zero(4, 4), Vec::Zero(4)};
  const GaussianChannel inner = compose(splitters, compose(cavities, {mix.transpose(), Mat::Zero(4, 4), Vec::Zero(4)}));
  const Mat scale = inner.scale * squeeze;
  const double n_in = 1.0 + 2.0 * j.n_T_bar;
  GaussianState out;
  out.mean = inner.displacement;
  out.cov = n_in * scale * scale.transpose() + inner.noise;
  return out;
}

JpaVariances jpa_output_variances_circuit(const CavityParams& p, const JpaParams& j, double omega,
                                          const JpaCircuitOptions& opts) {
  const GaussianState st = jpa_circuit(p, j, omega, opts);
  return {st.cov(0, 0), st.cov(3, 3)};
}

double snr_jpa(const CavityParams& p, const JpaParams& j, double omega) {
  JpaCircuitOptions opts;
  opts.signal_mean = {1.0, 0.0};
  const GaussianState along_q = jpa_circuit(p, j, omega, opts);
  opts.signal_mean = {0.0, 1.0};
  const GaussianState along_p = jpa_circuit(p, j, omega, opts);
  // Each signal quadrature carries n_s on average.
  const double q_power = p.n_s * (along_q.mean(0) * along_q.mean(0) + along_p.mean(0) * along_p.mean(0));
  const double p_power = p.n_s * (along_q.mean(3) * along_q.mean(3) + along_p.mean(3) * along_p.mean(3));
  return q_power / along_q.cov(0, 0) + p_power / along_q.cov(3, 3);
}

double var_with_pump_fluctuation(const CavityParams& p, const JpaParams& j, double omega, double epsilon) {
  j.validate();
  const double refl = reflection_mag_sq(p, epsilon + omega);
  const double sum = mixing_angles(p, epsilon + omega).theta_mm + mixing_angles(p, epsilon - omega).theta_mm;
  const double c = std::cos(sum);
  const double nt = p.noise_factor();
  return nt * refl * (std::exp(-2.0 * j.r) * 0.5 * (1.0 + c) + std::exp(2.0 * j.r) * 0.5 * (1.0 - c)) +
         nt * (1.0 - refl);
}

double pump_excess_small_offset(const CavityParams& p, const JpaParams& j, double omega, double epsilon) {
  const double h = 1e-5 * std::max(1.0, std::abs(omega));
  // Unwrap across the branch cut at pi before differencing.
  double diff = mixing_angles(p, omega + h).theta_mm - mixing_angles(p, omega - h).theta_mm;
  diff = std::remainder(diff, 2.0 * std::numbers::pi);
  const double slope = diff / (2.0 * h);
  const double refl = reflection_mag_sq(p, omega);
  return p.noise_factor() * refl * std::exp(2.0 * j.r) * slope * slope * epsilon * epsilon;
}

PumpNoiseEstimate pump_fluctuation_monte_carlo(const CavityParams& p, const JpaParams& j, double omega,
                                               std::size_t samples, std::uint64_t seed) {
  j.validate();
  require(samples >= 2, "need at least two samples");
  const double base = var_with_pump_fluctuation(p, j, omega, 0.0);
  constexpr std::size_t batch = 1u << 14;
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t b = 0; b * batch < samples; ++b) {
    auto engine = make_stream(seed, b);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = std::min(batch, samples - b * batch);
    double t1 = 0.0, t2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double eps = j.sigma_c * normal(engine);
      const double excess = var_with_pump_fluctuation(p, j, omega, eps) - base;
      t1 += excess;
      t2 += excess * excess;
    }
    s1 += t1;
    s2 += t2;
  }
  const double n = static_cast<double>(samples);
  PumpNoiseEstimate out;
  out.mean_excess = s1 / n;
  out.std_error = std::sqrt(std::max(s2 / n - out.mean_excess * out.mean_excess, 0.0) / (n - 1.0));
  out.baseline = base;
  out.samples = samples;
  out.seed = seed;
  return out;
}

}  // namespace haloscan
