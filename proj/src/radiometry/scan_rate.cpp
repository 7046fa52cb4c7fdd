#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>

#include "haloscan/radiometry.hpp"

namespace haloscan {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

ScanResult scan_rate(const std::function<double(double)>& alpha, double target_snr, double delta_a,
                     const ScanOptions& opts) {
  require(std::isfinite(target_snr) && target_snr > 0.0, "target SNR must be > 0");
  require(std::isfinite(delta_a) && delta_a > 0.0, "delta_a must be > 0");
  require(opts.initial_scale > 0.0 && opts.rel_tolerance > 0.0, "invalid scan options");

  IntegrationMetadata meta;
  meta.rel_tolerance = opts.rel_tolerance;
  auto counted = [&](double w) {
    ++meta.evaluations;
    const double a = alpha(w);
    if (!std::isfinite(a)) throw IntegrationFailure("visibility is not finite at omega = " + std::to_string(w), meta);
    return a;
  };

  const double peak = counted(0.0);
  ScanResult result;
  result.target_snr = target_snr;
  if (peak == 0.0) {
    meta.converged = true;
    result.integration = meta;
    return result;
  }

  // Grow the cutoff until the visibility has dropped by cutoff_ratio.
  double cutoff = opts.initial_scale;
  int doublings = 0;
  while (std::abs(counted(cutoff)) >= opts.cutoff_ratio * std::abs(peak)) {
    cutoff *= 2.0;
    if (++doublings > opts.max_doublings) {
      meta.cutoff = cutoff;
      throw IntegrationFailure("visibility does not decay; cutoff search exceeded " +
                                   std::to_string(opts.max_doublings) + " doublings",
                               meta);
    }
  }
  meta.cutoff = cutoff;

  auto integrand = [&](double w) {
    const double a = counted(w);
    return a * a;
  };

  // Geometric panels keep the peak and the tail on separate subintervals.
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;
  double half_integral = 0.0;
  double error = 0.0;
  double lo = 0.0;
  double hi = std::min(opts.initial_scale, cutoff);
  while (lo < cutoff) {
    double panel_error = 0.0;
    half_integral += Quadrature::integrate(integrand, lo, hi, 20, opts.rel_tolerance * 1e-2, &panel_error);
    error += panel_error;
    lo = hi;
    hi = std::min(2.0 * hi, cutoff);
  }

  // alpha ~ C / omega^2 beyond the cutoff: integral of C^2 / omega^4 from the cutoff to infinity.
  const double edge = counted(cutoff);
  const double c = edge * cutoff * cutoff;
  const double tail_one_side = c * c / (3.0 * cutoff * cutoff * cutoff);

  meta.tail = 2.0 * tail_one_side;
  meta.error_estimate = 2.0 * error;
  const double integral = 2.0 * (half_integral + tail_one_side);
  meta.converged = std::isfinite(integral) && meta.error_estimate <= opts.rel_tolerance * integral;
  if (!std::isfinite(integral)) throw IntegrationFailure("scan-rate integral is not finite", meta);

  result.integral = integral;
  result.rate = delta_a / (2.0 * std::numbers::pi * target_snr * target_snr) * integral;
  result.integration = meta;
  return result;
}

double scan_rate_ql_closed_form(const CavityParams& p, double target_snr) {
  p.validate();
  require(target_snr > 0.0, "target SNR must be > 0");
  const double g = p.total_rate();
  const double nt = p.noise_factor();
  // 2 delta_a (gamma_m gamma_s n_s)^2 / (zeta^2 N_T^2 gamma^3); with gamma_s dropped
  // from gamma this is the familiar x^2 / (x + 1)^3 form.
  const double num = p.gamma_m * p.gamma_s * p.n_s;
  return 2.0 * p.delta_a * num * num / (target_snr * target_snr * nt * nt * g * g * g);
}

double scan_rate_ql_optimum(const CavityParams& p, double target_snr) {
  p.validate();
  const double nt = p.noise_factor();
  const double s = p.gamma_s * p.n_s;
  return 2.0 * p.delta_a * s * s / (target_snr * target_snr * nt * nt * p.gamma_ell) * 4.0 / 27.0;
}

double scan_rate_ratio_squeezed(double x, double gain) {
  require(x >= 0.0, "coupling ratio must be >= 0");
  require(gain >= 1.0, "squeezing gain must be >= 1");
  const double inner = (x - 1.0) * (x - 1.0) / (4.0 * gain) + x;
  return 27.0 * std::sqrt(gain) * x * x / (32.0 * std::pow(inner, 1.5));
}

double optimal_coupling_squeezed(double gain) {
  require(gain >= 1.0, "squeezing gain must be >= 1");
  const double b = 1.0 - 2.0 * gain;
  return 0.5 * (-b + std::sqrt(b * b + 8.0));
}

Maximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi, int bits) {
  require(lo < hi, "empty search bracket");
  auto neg = [&](double x) { return -f(x); };
  const auto [x, v] = boost::math::tools::brent_find_minima(neg, lo, hi, bits);
  return {x, -v};
}

}  // namespace haloscan
