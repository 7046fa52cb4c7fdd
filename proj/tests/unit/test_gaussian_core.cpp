#include <doctest.h>

#include <cmath>

#include "haloscan/gaussian.hpp"
#include "random_params.hpp"

using namespace haloscan;
using haloscan::testing::random_state;
using haloscan::testing::random_symplectic;
using haloscan::testing::uniform;

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
double max_abs(const Vec& v) { return v.cwiseAbs().maxCoeff(); }

GaussianChannel thermal_loss(double eta, double nt) {
  return {std::sqrt(eta) * Mat::Identity(2, 2), nt * (1.0 - eta) * Mat::Identity(2, 2), Vec::Zero(2)};
}

}  // namespace

TEST_CASE("identity channel leaves a state unchanged") {
  std::mt19937_64 rng(1);
  const GaussianState st = random_state(rng, 2);
  const GaussianState out = apply_channel(GaussianChannel::identity(2), st);
  CHECK(max_abs(Vec(out.mean - st.mean)) == 0.0);
  CHECK(max_abs(Mat(out.cov - st.cov)) == 0.0);
}

TEST_CASE("fully lossy thermal channel with vacuum noise returns the vacuum") {
  GaussianState st{Vec::Ones(2), Mat::Identity(2, 2) * 3.0};
  const GaussianState out = apply_channel(thermal_loss(0.0, 1.0), st);
  CHECK(max_abs(out.mean) == 0.0);
  CHECK(max_abs(Mat(out.cov - Mat::Identity(2, 2))) < 1e-15);
}

TEST_CASE("half-transmitting loss on a squeezed state") {
  GaussianState st{Vec::Zero(2), Mat::Zero(2, 2)};
  st.cov(0, 0) = 0.25;
  st.cov(1, 1) = 4.0;
  const GaussianState out = apply_channel(thermal_loss(0.5, 1.0), st);
  CHECK(out.cov(0, 0) == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(out.cov(1, 1) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(out.cov(0, 1) == 0.0);
}

TEST_CASE("apply_channel rejects mismatched dimensions") {
  CHECK_THROWS_AS(apply_channel(GaussianChannel::identity(2), GaussianState::vacuum(1)), InvalidArgument);
}

TEST_CASE("reduction of the identity gives the identity channel") {
  const SymplecticMap id{Mat::Identity(6, 6)};
  const GaussianChannel ch = reduce_to_channel(id, Vec::Ones(4), 2.0 * Mat::Identity(4, 4), {0});
  CHECK(max_abs(Mat(ch.scale - Mat::Identity(2, 2))) == 0.0);
  CHECK(max_abs(ch.noise) == 0.0);
  CHECK(max_abs(ch.displacement) == 0.0);
}

TEST_CASE("balanced beam splitter with vacuum environment is a half-loss channel") {
  const GaussianChannel ch = reduce_to_channel(beam_splitter(0.5), Vec::Zero(2), Mat::Identity(2, 2), {0});
  CHECK(max_abs(Mat(ch.scale - std::sqrt(0.5) * Mat::Identity(2, 2))) < 1e-15);
  CHECK(max_abs(Mat(ch.noise - 0.5 * Mat::Identity(2, 2))) < 1e-15);
  // Purification symmetry: Y = I - X X^T for a vacuum environment.
  CHECK(max_abs(Mat(ch.noise - (Mat::Identity(2, 2) - ch.scale * ch.scale.transpose()))) < 1e-15);
}

TEST_CASE("reduction rejects non-symplectic matrices and bad mode sets") {
  Mat bad = Mat::Identity(4, 4);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(reduce_to_channel({bad}, Vec::Zero(2), Mat::Identity(2, 2), {0}), InvalidArgument);
  CHECK_THROWS_AS(reduce_to_channel(beam_splitter(0.5), Vec::Zero(2), Mat::Identity(2, 2), {}), InvalidArgument);
  CHECK_THROWS_AS(reduce_to_channel(beam_splitter(0.5), Vec::Zero(2), Mat::Identity(2, 2), {0, 0}), InvalidArgument);
  CHECK_THROWS_AS(reduce_to_channel(beam_splitter(0.5), Vec::Zero(2), 0.1 * Mat::Identity(2, 2), {0}),
                  InvalidArgument);
}

TEST_CASE("standard building blocks are symplectic") {
  const std::vector<SymplecticSpec> specs = {
      {SymplecticKind::rotation, 0.7},       {SymplecticKind::single_squeezer, 10.0},
      {SymplecticKind::two_mode_squeezer, 1.3}, {SymplecticKind::beam_splitter, 0.3},
      {SymplecticKind::sum_gate, 0.0}};
  for (const auto& s : specs) CHECK(symplectic_defect(make_symplectic(s).matrix) < 1e-10);
}

TEST_CASE("building blocks reject out-of-range parameters") {
  CHECK_THROWS_AS(single_squeezer(0.5), InvalidArgument);
  CHECK_THROWS_AS(two_mode_squeezer(-0.1), InvalidArgument);
  CHECK_THROWS_AS(beam_splitter(1.5), InvalidArgument);
  CHECK_THROWS_AS(beam_splitter(-0.1), InvalidArgument);
}

TEST_CASE("rotation by zero is the identity") {
  CHECK(max_abs(Mat(rotation(0.0).matrix - Mat::Identity(2, 2))) == 0.0);
}

TEST_CASE("single squeezer maps the vacuum to diag(1/G, G)") {
  const GaussianState out = apply_symplectic(single_squeezer(7.0), GaussianState::vacuum(1));
  CHECK(out.cov(0, 0) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  CHECK(out.cov(1, 1) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("SUM gate composed with its inverse is the identity") {
  const Mat s = sum_gate().matrix;
  CHECK(max_abs(Mat(s * inverse(sum_gate()).matrix - Mat::Identity(4, 4))) < 1e-14);
  // Q_anc picks up Q, P picks up -P_anc.
  Vec x(4);
  x << 1.0, 2.0, 3.0, 4.0;
  const Vec y = s * x;
  CHECK(y(0) == 1.0);
  CHECK(y(1) == -2.0);
  CHECK(y(2) == 4.0);
  CHECK(y(3) == 4.0);
}

TEST_CASE("two-mode squeezer on a thermal state") {
  const double nt = 1.7, r = 0.8;
  const GaussianState out = apply_symplectic(two_mode_squeezer(r), GaussianState::thermal(2, nt));
  Mat expected(4, 4);
  const double c = nt * std::cosh(2 * r), s = nt * std::sinh(2 * r);
  expected << c, 0, s, 0,  //
      0, c, 0, -s,         //
      s, 0, c, 0,          //
      0, -s, 0, c;
  CHECK(max_abs(Mat(out.cov - expected)) < 1e-12);
}

TEST_CASE("random states and reduced channels stay physical") {
  std::mt19937_64 rng(2024);
  double worst = 1.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int modes = 1 + trial % 2;
    const GaussianState st = random_state(rng, modes);
    // Random CP channel: reduction of a random (modes + 1)-mode unitary with a thermal environment,
    // followed by extra classical noise.
    const SymplecticMap s{random_symplectic(rng, 2 * modes)};
    std::vector<int> sys(modes);
    for (int k = 0; k < modes; ++k) sys[k] = k;
    const Mat env = (1.0 + uniform(rng, 0.0, 2.0)) * Mat::Identity(2 * modes, 2 * modes);
    GaussianChannel ch = reduce_to_channel(s, Vec::Zero(2 * modes), env, sys);
    ch.noise += uniform(rng, 0.0, 0.5) * Mat::Identity(2 * modes, 2 * modes);
    REQUIRE(is_completely_positive(ch));
    worst = std::min(worst, physicality_margin(apply_channel(ch, st).cov));
  }
  CHECK(worst >= -1e-8);
}

TEST_CASE("reduced channel reproduces the marginal of joint evolution") {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int total = 2 + trial % 2;
    const SymplecticMap s{random_symplectic(rng, total)};
    const GaussianState sys = random_state(rng, 1);
    const GaussianState env = random_state(rng, total - 1);
    const GaussianChannel ch = reduce_to_channel(s, env.mean, env.cov, {0});
    const GaussianState joint = marginal(apply_symplectic(s, tensor_product(sys, env)), {0});
    const GaussianState direct = apply_channel(ch, sys);
    worst = std::max({worst, max_abs(Vec(joint.mean - direct.mean)), max_abs(Mat(joint.cov - direct.cov))});
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("reduction works for system modes that are not first") {
  std::mt19937_64 rng(11);
  const SymplecticMap s{random_symplectic(rng, 3)};
  const GaussianState sys = random_state(rng, 1);
  // Environment modes must be uncorrelated for the interleaved product below.
  const GaussianState env = tensor_product(random_state(rng, 1), random_state(rng, 1));
  // Joint ordering (env0, sys, env1).
  GaussianState joint_in = tensor_product(marginal(env, {0}), tensor_product(sys, marginal(env, {1})));
  const GaussianChannel ch = reduce_to_channel(s, env.mean, env.cov, {1});
  const GaussianState joint = marginal(apply_symplectic(s, joint_in), {1});
  const GaussianState direct = apply_channel(ch, sys);
  CHECK(max_abs(Vec(joint.mean - direct.mean)) < 1e-12);
  CHECK(max_abs(Mat(joint.cov - direct.cov)) < 1e-12);
}

TEST_CASE("beam-splitter chains compose like sequential channels") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const double t1 = uniform(rng, 0.0, 1.0), t2 = uniform(rng, 0.0, 1.0);
    const double n1 = 1.0 + uniform(rng, 0.0, 2.0), n2 = 1.0 + uniform(rng, 0.0, 2.0);
    // Mode 0 is the system; modes 1 and 2 are two independent environments.
    const SymplecticMap s1 = embed(beam_splitter(t1), {0, 1}, 3);
    const SymplecticMap s2 = embed(beam_splitter(t2), {0, 2}, 3);
    Mat env = Mat::Zero(4, 4);
    env.topLeftCorner(2, 2) = n1 * Mat::Identity(2, 2);
    env.bottomRightCorner(2, 2) = n2 * Mat::Identity(2, 2);
    const GaussianChannel joint = reduce_to_channel(multiply(s2, s1), Vec::Zero(4), env, {0});
    const GaussianChannel c1 = reduce_to_channel(beam_splitter(t1), Vec::Zero(2), n1 * Mat::Identity(2, 2), {0});
    const GaussianChannel c2 = reduce_to_channel(beam_splitter(t2), Vec::Zero(2), n2 * Mat::Identity(2, 2), {0});
    const GaussianState st = random_state(rng, 1);
    const GaussianState a = apply_channel(joint, st);
    const GaussianState b = apply_channel(c2, apply_channel(c1, st));
    CHECK(max_abs(Vec(a.mean - b.mean)) < 1e-12);
    CHECK(max_abs(Mat(a.cov - b.cov)) < 1e-12);
    const GaussianState c = apply_channel(compose(c2, c1), st);
    CHECK(max_abs(Mat(c.cov - b.cov)) < 1e-12);
  }
}

TEST_CASE("physicality check flags sub-vacuum states") {
  GaussianState st = GaussianState::vacuum(1);
  CHECK(is_physical(st));
  st.cov *= 0.5;
  CHECK_FALSE(is_physical(st));
  CHECK(physicality_margin(st.cov) == doctest::Approx(-0.5));
}

TEST_CASE("complete positivity flags amplification without added noise") {
  GaussianChannel ch{2.0 * Mat::Identity(2, 2), Mat::Zero(2, 2), Vec::Zero(2)};
  CHECK_FALSE(is_completely_positive(ch));
  ch.noise = 3.0 * Mat::Identity(2, 2);  // quantum-limited amplifier of gain 4 adds g - 1 = 3
  CHECK(is_completely_positive(ch));
}

TEST_CASE("passive symplectic of a unitary acts as complex multiplication") {
  CMat u(1, 1);
  u(0, 0) = std::polar(1.0, 0.3);
  const Mat s = passive_from_unitary(u).matrix;
  CHECK(max_abs(Mat(s - rotation_block(0.3))) < 1e-15);
}
