#include <cmath>

#include "haloscan/radiometry.hpp"
#include "haloscan/rng.hpp"

namespace haloscan {

namespace {

constexpr std::size_t kBatchSize = 1u << 16;

}  // namespace

MonteCarloEstimate monte_carlo_snr_oracle(const CavityParams& p, double gain, double omega,
                                          std::size_t sample_count, std::uint64_t seed) {
  p.validate();
  if (sample_count < 10000) throw InvalidArgument("Monte Carlo oracle needs at least 1e4 samples");
  if (!(gain >= 1.0)) throw InvalidArgument("squeezing gain must be >= 1");

  // Input squeezed thermal state, pre-rotated so that the reflected quadrature
  // arriving at the detector is the squeezed one.
  const double theta_mm = mixing_angles(p, omega).theta_mm;
  const Eigen::Matrix2d pre = rotation_block(-theta_mm);
  Eigen::Matrix2d sq = Eigen::Matrix2d::Zero();
  sq(0, 0) = 1.0 / gain;
  sq(1, 1) = gain;
  GaussianState input{Vec::Zero(2), p.noise_factor() * pre * sq * pre.transpose()};

  const GaussianChannel ch = cavity_gaussian_channel(p, omega, Eigen::Vector2d::Zero());
  const double noise_var = apply_channel(ch, input).cov(0, 0);
  // Measured-quadrature response to a unit signal amplitude along Q and along P.
  const Eigen::Vector2d resp_q = cavity_gaussian_channel(p, omega, Eigen::Vector2d(1.0, 0.0)).displacement;
  const Eigen::Vector2d resp_p = cavity_gaussian_channel(p, omega, Eigen::Vector2d(0.0, 1.0)).displacement;

  const double signal_sd = std::sqrt(p.n_s);
  const double noise_sd = std::sqrt(noise_var);

  double sum = 0.0;
  double sum_sq = 0.0;
  double power_sum = 0.0;
  double power_sum_sq = 0.0;
  const std::size_t batches = (sample_count + kBatchSize - 1) / kBatchSize;
  for (std::size_t b = 0; b < batches; ++b) {
    auto engine = make_stream(seed, b);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = std::min(kBatchSize, sample_count - b * kBatchSize);
    double bs = 0.0, bss = 0.0, ps = 0.0, pss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mu_q = signal_sd * normal(engine);
      const double mu_p = signal_sd * normal(engine);
      const double mean = resp_q(0) * mu_q + resp_p(0) * mu_p;
      const double q = mean + noise_sd * normal(engine);
      const double power = q * q;
      const double est = (power - noise_var) / noise_var;
      bs += est;
      bss += est * est;
      ps += power;
      pss += power * power;
    }
    sum += bs;
    sum_sq += bss;
    power_sum += ps;
    power_sum_sq += pss;
  }

  const double n = static_cast<double>(sample_count);
  MonteCarloEstimate out;
  out.snr = sum / n;
  const double var = (sum_sq - n * out.snr * out.snr) / (n - 1.0);
  out.std_error = std::sqrt(std::max(var, 0.0) / n);
  const double pmean = power_sum / n;
  out.power_variance = (power_sum_sq - n * pmean * pmean) / (n - 1.0);
  out.noise_variance = noise_var;
  out.samples = sample_count;
  out.seed = seed;
  return out;
}

}  // namespace haloscan
