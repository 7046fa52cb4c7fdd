#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "haloscan/gkp.hpp"
#include "haloscan/radiometry.hpp"
#include "random_params.hpp"

using namespace haloscan;
using haloscan::testing::log_uniform;
using haloscan::testing::uniform;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CavityParams make(double ell, double m, double s, double ns = 1.0) {
  CavityParams p;
  p.gamma_ell = ell;
  p.gamma_m = m;
  p.gamma_s = s;
  p.n_s = ns;
  return p;
}

GaussianState diagonal_state(double q_mean, double p_mean, double q_var, double p_var) {
  GaussianState st = GaussianState::vacuum(1);
  st.mean << q_mean, p_mean;
  st.cov(0, 0) = q_var;
  st.cov(1, 1) = p_var;
  return st;
}

}  // namespace

TEST_CASE("effective gain combines state and ancilla squeezing") {
  CHECK(GkpParams{10.0, 10.0, 0.0}.effective_gain() == doctest::Approx(5.0));
  CHECK(GkpParams{10.0, kInf, 0.0}.effective_gain() == 10.0);
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    const GkpParams g{log_uniform(rng, 1, 1e4), log_uniform(rng, 1, 1e4), 0.0};
    CHECK(g.effective_gain() <= std::min(g.gain, g.anc_gain));
  }
  CHECK_THROWS_AS(snr_gkp_gaussian(make(1, 1, 1e-9), GkpParams{0.5, 1.0, 0.0}, 0.0), InvalidArgument);
}

TEST_CASE("ideal GKP readout keeps the critically coupled quantum-limited peak") {
  const CavityParams p = make(1.0, 1.0 + 1e-9, 1e-9, 3.0);
  const double gkp = snr_gkp_gaussian(p, GkpParams{1e300, kInf, 0.0}, 0.0);
  CHECK(gkp == doctest::Approx(visibility(p, 1.0, 0.0, VisibilityKind::quantum_limited)).epsilon(1e-12));
}

TEST_CASE("GKP SNR against the linewidth form") {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 200; ++i) {
    CavityParams p = make(1.0, log_uniform(rng, 0.1, 100.0), 1e-10, log_uniform(rng, 1.0, 100.0));
    p.n_T_bar = uniform(rng, 0.0, 1.0);
    const GkpParams g{log_uniform(rng, 1.0, 100.0), kInf, p.n_T_bar};
    const double w = uniform(rng, -10.0, 10.0);
    const double half = p.total_rate() / 2.0;
    const double hand = 2.0 * p.gamma_m * p.gamma_s * p.n_s /
                        (p.noise_factor() * ((half * half + w * w) / g.effective_gain() + 2.0 * p.gamma_m * p.gamma_ell));
    CHECK(snr_gkp_gaussian(p, g, w) == doctest::Approx(hand).epsilon(1e-8));
  }
}

TEST_CASE("with a matching ancilla GKP never beats single-mode squeezing") {
  for (int gi = 0; gi < 5; ++gi) {
    const double g = std::pow(10.0, 0.5 * gi);
    for (int xi = 0; xi < 20; ++xi) {
      const CavityParams p = make(1.0, std::pow(10.0, -1.0 + 3.0 * xi / 19.0), 1e-8);
      for (int wi = 0; wi < 20; ++wi) {
        const double w = -10.0 + 20.0 * wi / 19.0;
        CHECK(snr_gkp_gaussian(p, GkpParams{g, g, 0.0}, w) <= visibility(p, g, w, VisibilityKind::squeezed));
      }
    }
  }
}

TEST_CASE("GKP scan-rate ratio") {
  CHECK(scan_rate_ratio_gkp(401.0, 100.0) == doctest::Approx(129.58).epsilon(2e-4));
  for (double g : {10.0, 100.0, 1000.0}) {
    const double x = optimal_coupling_gkp(g);
    CHECK(x * x - x * (1.0 + 4.0 * g) - 2.0 == doctest::Approx(0.0).scale(g * g));
    const Maximum m = maximize_scalar([&](double y) { return scan_rate_ratio_gkp(y, g); }, 1.0, 20.0 * g);
    CHECK(m.argmax == doctest::Approx(x).epsilon(1e-6));
    CHECK(std::abs(x / (4.0 * g) - 1.0) < 0.05);
  }
  CHECK(gkp_to_squeezed_optimum_ratio(1e6) == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(gkp_to_squeezed_optimum_ratio(100.0) > gkp_to_squeezed_optimum_ratio(10.0));
}

TEST_CASE("GKP scan-rate ratio matches quadrature of the GKP visibility") {
  std::mt19937_64 rng(107);
  for (int i = 0; i < 40; ++i) {
    const double x = log_uniform(rng, 0.1, 1000.0);
    const double g = log_uniform(rng, 1.0, 300.0);
    const CavityParams p = make(1.0, x, 1e-10);
    const double rate =
        scan_rate([&](double w) { return visibility(p, g, w, VisibilityKind::gkp); }, 1.0, p.delta_a).rate;
    CHECK(rate / scan_rate_ql_optimum(p, 1.0) == doctest::Approx(scan_rate_ratio_gkp(x, g)).epsilon(1e-6));
    CHECK(visibility(p, g, 0.3, VisibilityKind::gkp) ==
          doctest::Approx(snr_gkp_gaussian(p, GkpParams{g, kInf, 0.0}, 0.3)).epsilon(1e-14));
  }
}

TEST_CASE("SUM gate moments match the symplectic oracle") {
  std::mt19937_64 rng(109);
  const SymplecticMap sum = sum_gate();
  for (int i = 0; i < 500; ++i) {
    const GaussianState sig = haloscan::testing::random_state(rng, 1);
    const GaussianState anc = haloscan::testing::random_state(rng, 1);
    const auto [s, a] = sum_gate_coupling(sig, anc);
    const GaussianState joint = apply_symplectic(sum, tensor_product(sig, anc));
    const GaussianState s_ref = marginal(joint, {0});
    const GaussianState a_ref = marginal(joint, {1});
    CHECK((s.mean - s_ref.mean).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.mean - a_ref.mean).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s.cov - s_ref.cov).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.cov - a_ref.cov).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(s.mean(0) == sig.mean(0));
  }
}

TEST_CASE("SUM gate special cases") {
  const auto [s, a] = sum_gate_coupling(GaussianState::vacuum(1), GaussianState::vacuum(1));
  CHECK(s.cov(1, 1) == 2.0);
  CHECK(a.cov(0, 0) == 2.0);
  CHECK(s.cov(0, 0) == 1.0);

  const GaussianState sig = diagonal_state(0.7, -0.2, 1.5, 0.4);
  const auto [s2, a2] = sum_gate_coupling(sig, diagonal_state(0.0, 0.0, 1e12, 1e-12));
  CHECK(s2.mean == sig.mean);
  CHECK(std::abs(s2.cov(1, 1) - sig.cov(1, 1)) < 1e-10);
  CHECK(a2.mean(0) == doctest::Approx(0.7));
}

TEST_CASE("the two kept quadratures are uncorrelated for diagonal inputs") {
  const GaussianState sig = diagonal_state(0.3, 0.1, 2.0, 0.5);
  const GaussianState anc = diagonal_state(0.0, 0.0, 0.1, 10.0);
  const GaussianState joint = apply_symplectic(sum_gate(), tensor_product(sig, anc));
  // Signal P is index 1, ancilla Q is index 2.
  CHECK(std::abs(joint.cov(1, 2)) < 1e-15);
}

TEST_CASE("modular moments: symmetry and Gaussian limit") {
  CHECK(modular_moment(1, {0.5, 0.0}) == doctest::Approx(0.0).scale(1.0));
  CHECK(std::abs(modular_moment(1, {0.5, 0.0})) < 1e-15);
  const ModularNoise tight{1e-4, 0.01};
  CHECK(modular_moment(1, tight) == doctest::Approx(0.01).epsilon(1e-12));
  const double var = modular_moment(2, tight) - std::pow(modular_moment(1, tight), 2);
  CHECK(var == doctest::Approx(0.5e-4).epsilon(1e-10));
  CHECK_THROWS_AS(modular_moment(3, tight), InvalidArgument);
  CHECK_THROWS_AS(modular_moment(1, {0.0, 0.1}), InvalidArgument);
}

TEST_CASE("modular moments agree with a wrapped Monte Carlo") {
  const ModularNoise m{0.29, 0.001};
  const ModularMonteCarlo mc = modular_moment_monte_carlo(m, 10000000, 2024);
  CHECK(std::abs(mc.second_moment - modular_moment(2, m)) < 5.0 * mc.second_se);
  CHECK(std::abs(mc.first_moment - modular_moment(1, m)) < 5.0 * mc.first_se);
  const ModularNoise wide{3.0, 0.4};
  const ModularMonteCarlo mc2 = modular_moment_monte_carlo(wide, 2000000, 7);
  CHECK(std::abs(mc2.second_moment - modular_moment(2, wide)) < 5.0 * mc2.second_se);
  CHECK(std::abs(mc2.first_moment - modular_moment(1, wide)) < 5.0 * mc2.first_se);
}

TEST_CASE("wrap-around attenuates and widens") {
  double prev_var = 0.0;
  double prev_gain = 2.0;
  for (double y = 0.01; y < 20.0; y *= 1.5) {
    const ModularNoise m{y, 0.05};
    const double m1 = modular_moment(1, m);
    const double var = modular_moment(2, m) - m1 * m1;
    CHECK(var > prev_var);
    CHECK(m1 / m.epsilon > 0.0);
    CHECK(m1 / m.epsilon <= 1.0 + 1e-12);
    CHECK(m1 / m.epsilon <= prev_gain + 1e-12);
    prev_var = var;
    prev_gain = m1 / m.epsilon;
  }
  // Uninformative limit: uniform over one lattice cell.
  const ModularNoise flat{1e3, 0.05};
  CHECK(modular_moment(2, flat) - std::pow(modular_moment(1, flat), 2) ==
        doctest::Approx(std::numbers::pi / 6.0).epsilon(1e-9));
}

TEST_CASE("additive GKP noise at the optimum coupling") {
  CHECK(y_of_G(10.0) == doctest::Approx(0.1 + 320.0 / 1681.0).epsilon(1e-15));
  CHECK(y_of_G(10.0) == doctest::Approx(0.29036).epsilon(1e-4));
  CHECK(y_of_G(1.0) == doctest::Approx(2.28).epsilon(1e-15));
  CHECK(y_of_G(1e8) * 1e8 == doctest::Approx(3.0).epsilon(1e-6));
  for (double g : {1.0, 10.0, 100.0}) {
    const CavityParams p = make(1.0, 4.0 * g, 0.0);
    CHECK(y_at(p, GkpParams{g, kInf, 0.0}, 0.0) == doctest::Approx(y_of_G(g)).epsilon(1e-13));
  }
}

TEST_CASE("error-revised prefactor") {
  for (double db = 10.0; db <= 30.0; db += 2.5) {
    const double g = std::pow(10.0, db / 10.0);
    const double pref = error_revised_rate(g);
    CHECK(pref >= 0.9);
    CHECK(pref <= 1.0 + 1e-12);
    const ModularNoise m{y_of_G(g), 1e-3};
    CHECK(std::abs(modular_snr(m) / gaussian_snr(m) - 1.0) < 0.1);
  }
  CHECK(error_revised_rate(1e6) == doctest::Approx(1.0).epsilon(1e-4));
  const CavityParams p = make(1.0, 40.0, 0.0);
  CHECK(error_revised_rate_at(p, GkpParams{10.0, kInf, 0.0}, 0.0) ==
        doctest::Approx(error_revised_rate(10.0)).epsilon(1e-12));
}
