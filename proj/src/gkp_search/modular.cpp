#include <cmath>
#include <numbers>

#include "haloscan/gkp.hpp"
#include "haloscan/rng.hpp"

namespace haloscan {

namespace {

// Cells whose nearest edge lies more than this many standard deviations from
// the mean carry less than 1e-15 of the probability and are skipped.
constexpr double kTruncationSigmas = 8.5;

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

// P(a < Z < b) for a standard normal Z, using the tail that avoids cancellation.
double normal_mass(double a, double b) {
  const double r = 1.0 / std::numbers::sqrt2;
  if (a >= 0.0) return 0.5 * (std::erfc(a * r) - std::erfc(b * r));
  if (b <= 0.0) return 0.5 * (std::erfc(-b * r) - std::erfc(-a * r));
  return 1.0 - 0.5 * std::erfc(b * r) - 0.5 * std::erfc(-a * r);
}

}  // namespace

double gkp_lattice_spacing() { return std::sqrt(2.0 * std::numbers::pi); }

double modular_moment(int k, const ModularNoise& m) {
  if (k != 1 && k != 2) throw InvalidArgument("only the first two modular moments are available");
  if (!(m.y > 0.0) || !std::isfinite(m.y)) throw InvalidArgument("modular noise y must be > 0");
  const double spacing = gkp_lattice_spacing();
  const double sd = std::sqrt(m.y / 2.0);
  const double reach = kTruncationSigmas * sd + 0.5 * spacing;
  const long n_lo = static_cast<long>(std::floor((m.epsilon - reach) / spacing));
  const long n_hi = static_cast<long>(std::ceil((m.epsilon + reach) / spacing));

  double total = 0.0;
  for (long n = n_lo; n <= n_hi; ++n) {
    // Offset of the noise mean from the n-th lattice point.
    const double mu = m.epsilon - static_cast<double>(n) * spacing;
    const double a = (-0.5 * spacing - mu) / sd;
    const double b = (0.5 * spacing - mu) / sd;
    const double mass = normal_mass(a, b);
    const double dphi = normal_pdf(a) - normal_pdf(b);
    if (k == 1) {
      total += mu * mass + sd * dphi;
    } else {
      total += (mu * mu + sd * sd) * mass + 2.0 * mu * sd * dphi + sd * sd * (a * normal_pdf(a) - b * normal_pdf(b));
    }
  }
  return total;
}

double modular_snr(const ModularNoise& m) {
  const double m1 = modular_moment(1, m);
  const double m2 = modular_moment(2, m);
  return m1 * m1 / (m2 - m1 * m1);
}

double gaussian_snr(const ModularNoise& m) { return 2.0 * m.epsilon * m.epsilon / m.y; }

ModularMonteCarlo modular_moment_monte_carlo(const ModularNoise& m, std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw InvalidArgument("need at least two samples");
  const double spacing = gkp_lattice_spacing();
  const double sd = std::sqrt(m.y / 2.0);
  constexpr std::size_t batch = 1u << 16;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (std::size_t b = 0; b * batch < samples; ++b) {
    auto engine = make_stream(seed, b);
    std::normal_distribution<double> normal(m.epsilon, sd);
    const std::size_t n = std::min(batch, samples - b * batch);
    double t1 = 0.0, t2 = 0.0, t4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = normal(engine);
      const double r = q - spacing * std::floor(q / spacing + 0.5);
      const double r2 = r * r;
      t1 += r;
      t2 += r2;
      t4 += r2 * r2;
    }
    s1 += t1;
    s2 += t2;
    s4 += t4;
  }
  const double n = static_cast<double>(samples);
  ModularMonteCarlo out{};
  out.first_moment = s1 / n;
  out.second_moment = s2 / n;
  out.first_se = std::sqrt(std::max(s2 / n - out.first_moment * out.first_moment, 0.0) / (n - 1.0));
  out.second_se = std::sqrt(std::max(s4 / n - out.second_moment * out.second_moment, 0.0) / (n - 1.0));
  return out;
}

double y_of_G(double gain) {
  if (!(gain >= 1.0)) throw InvalidArgument("squeezing gain must be >= 1");
  const double d = 4.0 * gain + 1.0;
  return 1.0 / gain + 32.0 * gain / (d * d);
}

double y_at(const CavityParams& p, const GkpParams& g, double omega) {
  p.validate();
  g.validate();
  // Absolute vacuum units: the lattice spacing does not scale with N_T.
  return (1.0 + 2.0 * g.n_T_bar) / g.effective_gain() + 2.0 * p.noise_factor() * (1.0 - reflection_mag_sq(p, omega));
}

double error_revised_rate(double gain, double epsilon) {
  const ModularNoise m{y_of_G(gain), epsilon};
  const double r = modular_snr(m) / gaussian_snr(m);
  return r * r;
}

double error_revised_rate_at(const CavityParams& p, const GkpParams& g, double omega, double epsilon) {
  const ModularNoise m{y_at(p, g, omega), epsilon};
  const double r = modular_snr(m) / gaussian_snr(m);
  return r * r;
}

}  // namespace haloscan
