#include <cmath>

#include "haloscan/gaussian.hpp"

namespace haloscan {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace

Eigen::Matrix2d rotation_block(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2d o;
  o << c, -s, s, c;
  return o;
}

SymplecticMap rotation(double angle) {
  require(std::isfinite(angle), "rotation angle must be finite");
  return {rotation_block(angle)};
}

SymplecticMap single_squeezer(double gain) {
  require(std::isfinite(gain) && gain >= 1.0, "squeezer gain must be >= 1");
  const double root = std::sqrt(gain);
  Mat s = Mat::Zero(2, 2);
  s(0, 0) = 1.0 / root;
  s(1, 1) = root;
  return {s};
}

SymplecticMap two_mode_squeezer(double r) {
  require(std::isfinite(r) && r >= 0.0, "two-mode squeezing parameter must be >= 0");
  const double c = std::cosh(r);
  const double s = std::sinh(r);
  Mat m = Mat::Zero(4, 4);
  m.topLeftCorner(2, 2) = c * Mat::Identity(2, 2);
  m.bottomRightCorner(2, 2) = c * Mat::Identity(2, 2);
  Mat z = Mat::Zero(2, 2);
  z(0, 0) = s;
  z(1, 1) = -s;
  m.topRightCorner(2, 2) = z;
  m.bottomLeftCorner(2, 2) = z;
  return {m};
}

SymplecticMap beam_splitter(double transmissivity) {
  require(transmissivity >= 0.0 && transmissivity <= 1.0, "transmissivity must lie in [0, 1]");
  const double t = std::sqrt(transmissivity);
  const double r = std::sqrt(1.0 - transmissivity);
  Mat m = Mat::Zero(4, 4);
  m.topLeftCorner(2, 2) = t * Mat::Identity(2, 2);
  m.bottomRightCorner(2, 2) = t * Mat::Identity(2, 2);
  m.topRightCorner(2, 2) = r * Mat::Identity(2, 2);
  m.bottomLeftCorner(2, 2) = -r * Mat::Identity(2, 2);
  return {m};
}

SymplecticMap sum_gate() {
  Mat m = Mat::Identity(4, 4);
  m(1, 3) = -1.0;  // P <- P - P_anc
  m(2, 0) = 1.0;   // Q_anc <- Q_anc + Q
  return {m};
}

SymplecticMap make_symplectic(const SymplecticSpec& spec) {
  switch (spec.kind) {
    case SymplecticKind::rotation: return rotation(spec.parameter);
    case SymplecticKind::single_squeezer: return single_squeezer(spec.parameter);
    case SymplecticKind::two_mode_squeezer: return two_mode_squeezer(spec.parameter);
    case SymplecticKind::beam_splitter: return beam_splitter(spec.parameter);
    case SymplecticKind::sum_gate: return sum_gate();
  }
  throw InvalidArgument("unknown symplectic kind");
}

SymplecticMap passive_from_unitary(const CMat& u) {
  require(u.rows() == u.cols(), "unitary must be square");
  const auto m = u.rows();
  require((u.adjoint() * u - CMat::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-10, "matrix is not unitary");
  Mat s(2 * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      const double re = u(j, k).real();
      const double im = u(j, k).imag();
      s(2 * j, 2 * k) = re;
      s(2 * j, 2 * k + 1) = -im;
      s(2 * j + 1, 2 * k) = im;
      s(2 * j + 1, 2 * k + 1) = re;
    }
  }
  return {s};
}

SymplecticMap embed(const SymplecticMap& local, const std::vector<int>& modes, int total_modes) {
  require(static_cast<int>(modes.size()) == local.mode_count(), "mode list does not match the local map");
  Mat s = Mat::Identity(2 * total_modes, 2 * total_modes);
  std::vector<int> idx;
  for (int m : modes) {
    require(m >= 0 && m < total_modes, "mode index out of range");
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) s(idx[a], idx[b]) = local.matrix(a, b);
  }
  return {s};
}

SymplecticMap multiply(const SymplecticMap& a, const SymplecticMap& b) {
  require(a.matrix.cols() == b.matrix.rows(), "symplectic dimensions disagree");
  return {a.matrix * b.matrix};
}

SymplecticMap inverse(const SymplecticMap& s) {
  const Mat omega = symplectic_form(s.mode_count());
  return {omega * s.matrix.transpose() * omega.transpose()};
}

}  // namespace haloscan
