#include <cmath>
#include <complex>

#include "haloscan/network.hpp"

namespace haloscan {

namespace {

using cd = std::complex<double>;

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

// Per-cavity response at one detuning.
struct Response {
  cd signal;        // |chi_ms| exp(i theta_ms)
  double transmit;  // |chi_mm|
};

std::vector<Response> responses(const std::vector<CavityParams>& cavities, double omega) {
  std::vector<Response> out;
  out.reserve(cavities.size());
  for (const auto& c : cavities) {
    const double ms = std::sqrt(signal_transfer_mag_sq(c, omega));
    out.push_back({std::polar(ms, mixing_angles(c, omega).theta_ms), std::sqrt(reflection_mag_sq(c, omega))});
  }
  return out;
}

void require_shared_fields(const std::vector<CavityParams>& cavities) {
  require(!cavities.empty(), "network needs at least one cavity");
  for (const auto& c : cavities) {
    c.validate();
    require(c.n_T_bar == cavities.front().n_T_bar, "cavities must share n_T_bar");
    require(c.n_s == cavities.front().n_s, "cavities must share n_s");
    require(c.delta_a == cavities.front().delta_a, "cavities must share delta_a");
  }
}

CVec normalized(const CVec& v) {
  const double n = v.norm();
  require(n > 0.0, "cannot normalize a zero weight vector");
  return v / n;
}

}  // namespace

void NetworkConfig::validate() const {
  require_shared_fields(cavities);
  require(std::isfinite(gain) && gain >= 1.0, "network gain must be >= 1");
  require(combiner.size() == size() && divider.size() == size(), "weight vectors must have one entry per cavity");
  require(std::abs(combiner.squaredNorm() - 1.0) < 1e-12, "combiner weights must have unit norm");
  require(std::abs(divider.squaredNorm() - 1.0) < 1e-12, "divider weights must have unit norm");
}

WeightPair near_optimal_weights(const std::vector<CavityParams>& cavities, double omega) {
  require_shared_fields(cavities);
  const auto r = responses(cavities, omega);
  const auto m = static_cast<Eigen::Index>(r.size());
  CVec w(m), wp(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    w(k) = std::conj(r[k].signal);
    wp(k) = r[k].signal * r[k].transmit;
  }
  if (w.norm() == 0.0) {
    WeightPair u = uniform_weights_uncorrected(static_cast<int>(m));
    u.degenerate = true;
    return u;
  }
  // A cavity at critical coupling on resonance reflects nothing; fall back to
  // the combiner direction so the divider stays well defined.
  if (wp.norm() == 0.0) wp = w.conjugate();
  return {normalized(w), normalized(wp), false};
}

WeightPair near_optimal_weights_uncorrected(const std::vector<CavityParams>& cavities, double omega) {
  WeightPair w = near_optimal_weights(cavities, omega);
  w.combiner = w.combiner.cwiseAbs().cast<cd>();
  w.divider = w.divider.cwiseAbs().cast<cd>();
  return w;
}

WeightPair uniform_weights(const std::vector<CavityParams>& cavities, double omega) {
  require_shared_fields(cavities);
  const auto m = static_cast<Eigen::Index>(cavities.size());
  const double mag = 1.0 / std::sqrt(static_cast<double>(m));
  CVec w(m), wp(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double th = mixing_angles(cavities[k], omega).theta_ms;
    w(k) = std::polar(mag, -th);
    wp(k) = std::polar(mag, th);
  }
  return {w, wp, false};
}

WeightPair uniform_weights_uncorrected(int m) {
  require(m >= 1, "network needs at least one cavity");
  const CVec u = CVec::Constant(m, cd(1.0 / std::sqrt(static_cast<double>(m)), 0.0));
  return {u, u, false};
}

WeightPair optimal_weights(const std::vector<CavityParams>& cavities, double gain, double omega) {
  require_shared_fields(cavities);
  require(gain >= 1.0, "network gain must be >= 1");
  const auto r = responses(cavities, omega);
  const double kappa = 1.0 - 1.0 / gain;
  const auto m = static_cast<Eigen::Index>(r.size());
  CVec w(m), wp(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double t2 = r[k].transmit * r[k].transmit;
    w(k) = std::conj(r[k].signal) / (1.0 - kappa * t2);
    wp(k) = std::conj(w(k)) * r[k].transmit;
  }
  if (w.norm() == 0.0) {
    WeightPair u = uniform_weights_uncorrected(static_cast<int>(m));
    u.degenerate = true;
    return u;
  }
  if (wp.norm() == 0.0) wp = w.conjugate();
  return {normalized(w), normalized(wp), false};
}

double optimal_network_snr(const std::vector<CavityParams>& cavities, double gain, double omega) {
  require_shared_fields(cavities);
  const double kappa = 1.0 - 1.0 / gain;
  double total = 0.0;
  for (const auto& c : cavities) {
    total += signal_transfer_mag_sq(c, omega) / (1.0 - kappa * reflection_mag_sq(c, omega));
  }
  return cavities.front().n_s / cavities.front().noise_factor() * total;
}

NetworkOutput network_output(const std::vector<CavityParams>& cavities, double gain, const WeightPair& w,
                             double omega) {
  NetworkConfig cfg{cavities, gain, w.combiner, w.divider};
  return network_output(cfg, omega);
}

NetworkOutput network_output(const NetworkConfig& cfg, double omega) {
  cfg.validate();
  const auto r = responses(cfg.cavities, omega);
  cd amplitude = 0.0;
  cd c = 0.0;
  for (int k = 0; k < cfg.size(); ++k) {
    amplitude += cfg.combiner(k) * r[k].signal;
    c += cfg.combiner(k) * r[k].transmit * cfg.divider(k);
  }
  const double c2 = std::norm(c);
  const double psi = std::arg(c);
  const double cos2 = std::cos(psi) * std::cos(psi);
  const double sin2 = std::sin(psi) * std::sin(psi);
  NetworkOutput out;
  out.signal_power = cfg.cavities.front().n_s * std::norm(amplitude);
  out.noise_power = cfg.cavities.front().noise_factor() * (c2 * (cos2 / cfg.gain + sin2 * cfg.gain) + 1.0 - c2);
  out.snr = out.signal_power / out.noise_power;
  return out;
}

CMat complete_to_unitary(const CVec& first_column) {
  require(std::abs(first_column.norm() - 1.0) < 1e-12, "first column must have unit norm");
  const auto m = first_column.size();
  Eigen::HouseholderQR<CMat> qr(first_column);
  CMat q = qr.householderQ() * CMat::Identity(m, m);
  // The first Householder column is parallel to the input and differs only by
  // a phase, so overwriting it keeps q unitary.
  q.col(0) = first_column;
  return q;
}

NetworkOutput network_output_by_circuit(const NetworkConfig& cfg, double omega) {
  cfg.validate();
  const int m = cfg.size();
  const double nt = cfg.cavities.front().noise_factor();

  const SymplecticMap divider = passive_from_unitary(complete_to_unitary(cfg.divider));
  // Row 0 of the combiner unitary is w, i.e. its adjoint has first column conj(w).
  const SymplecticMap combiner = passive_from_unitary(complete_to_unitary(cfg.combiner.conjugate()).adjoint());

  auto run = [&](const Eigen::Vector2d& signal_mean) {
    GaussianState st = GaussianState::thermal(m, nt);
    st.cov(0, 0) = nt / cfg.gain;
    st.cov(1, 1) = nt * cfg.gain;
    st = apply_symplectic(divider, st);
    std::vector<GaussianChannel> parts;
    parts.reserve(m);
    for (const auto& c : cfg.cavities) parts.push_back(cavity_gaussian_channel_unrotated(c, omega, signal_mean));
    st = apply_channel(direct_sum(parts), st);
    return apply_symplectic(combiner, st);
  };

  const GaussianState along_q = run({1.0, 0.0});
  const GaussianState along_p = run({0.0, 1.0});
  NetworkOutput out;
  out.noise_power = along_q.cov(0, 0);
  out.signal_power = cfg.cavities.front().n_s * (along_q.mean(0) * along_q.mean(0) + along_p.mean(0) * along_p.mean(0));
  out.snr = out.signal_power / out.noise_power;
  return out;
}

double signal_power_with_interference(const std::vector<CavityParams>& cavities, const Vec& combiner_magnitudes,
                                      double omega, const std::vector<double>& phase_offsets) {
  require_shared_fields(cavities);
  const auto m = cavities.size();
  require(static_cast<std::size_t>(combiner_magnitudes.size()) == m, "one combiner magnitude per cavity");
  require(phase_offsets.empty() || phase_offsets.size() == m, "one phase offset per cavity");
  std::vector<double> amp(m), theta(m);
  for (std::size_t k = 0; k < m; ++k) {
    amp[k] = std::abs(combiner_magnitudes(k)) * std::sqrt(signal_transfer_mag_sq(cavities[k], omega));
    theta[k] = mixing_angles(cavities[k], omega).theta_ms + (phase_offsets.empty() ? 0.0 : phase_offsets[k]);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    total += amp[i] * amp[i];
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j) total += amp[i] * amp[j] * std::cos(theta[i] - theta[j]);
    }
  }
  return cavities.front().n_s * total;
}

WeightPair weights_for_policy(const NetworkConfig& cfg, WeightPolicy policy, double omega) {
  switch (policy) {
    case WeightPolicy::near_optimal: return near_optimal_weights(cfg.cavities, omega);
    case WeightPolicy::near_optimal_uncorrected: return near_optimal_weights_uncorrected(cfg.cavities, omega);
    case WeightPolicy::uniform: return uniform_weights(cfg.cavities, omega);
    case WeightPolicy::uniform_uncorrected: return uniform_weights_uncorrected(cfg.size());
    case WeightPolicy::optimal: return optimal_weights(cfg.cavities, cfg.gain, omega);
    case WeightPolicy::fixed: return {cfg.combiner, cfg.divider, false};
  }
  throw InvalidArgument("unknown weight policy");
}

ScanResult network_scan_rate(const NetworkConfig& cfg, double target_snr, NetworkScanMode mode, WeightPolicy policy) {
  require_shared_fields(cfg.cavities);
  require(cfg.gain >= 1.0, "network gain must be >= 1");
  const double delta_a = cfg.cavities.front().delta_a;
  double scale = 0.0;
  for (const auto& c : cfg.cavities) scale = std::max(scale, c.total_rate());
  ScanOptions opts;
  opts.initial_scale = scale;

  if (mode == NetworkScanMode::independent) {
    ScanResult total;
    total.target_snr = target_snr;
    total.integration.converged = true;
    total.integration.rel_tolerance = opts.rel_tolerance;
    for (const auto& c : cfg.cavities) {
      opts.initial_scale = c.total_rate();
      const ScanResult one = scan_rate(
          [&](double w) { return visibility(c, cfg.gain, w, VisibilityKind::squeezed); }, target_snr, delta_a, opts);
      total.rate += one.rate;
      total.integral += one.integral;
      total.integration.evaluations += one.integration.evaluations;
      total.integration.error_estimate += one.integration.error_estimate;
      total.integration.tail += one.integration.tail;
      total.integration.cutoff = std::max(total.integration.cutoff, one.integration.cutoff);
      total.integration.converged = total.integration.converged && one.integration.converged;
    }
    return total;
  }

  auto alpha = [&](double w) {
    return network_output(cfg.cavities, cfg.gain, weights_for_policy(cfg, policy, w), w).snr;
  };
  return scan_rate(alpha, target_snr, delta_a, opts);
}

}  // namespace haloscan
