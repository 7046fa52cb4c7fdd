#include "haloscan/gaussian.hpp"

#include <algorithm>
#include <complex>

namespace haloscan {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

double hermitian_min_eigenvalue(const Mat& real_part, const Mat& imag_part) {
  CMat h(real_part.rows(), real_part.cols());
  h.real() = 0.5 * (real_part + real_part.transpose());
  h.imag() = 0.5 * (imag_part - imag_part.transpose());
  Eigen::SelfAdjointEigenSolver<CMat> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::vector<int> quadrature_indices(const std::vector<int>& modes) {
  std::vector<int> idx;
  idx.reserve(2 * modes.size());
  for (int m : modes) {
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  return idx;
}

}  // namespace

GaussianState GaussianState::vacuum(int modes) { return thermal(modes, 1.0); }

GaussianState GaussianState::thermal(int modes, double noise_factor) {
  require(modes >= 1, "mode count must be positive");
  require(noise_factor >= 1.0, "thermal noise factor must be >= 1");
  return {Vec::Zero(2 * modes), noise_factor * Mat::Identity(2 * modes, 2 * modes)};
}

GaussianChannel GaussianChannel::identity(int modes) {
  const int d = 2 * modes;
  return {Mat::Identity(d, d), Mat::Zero(d, d), Vec::Zero(d)};
}

Mat symplectic_form(int modes) {
  Mat omega = Mat::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

double physicality_margin(const Mat& cov) {
  require(cov.rows() == cov.cols() && cov.rows() % 2 == 0, "covariance must be square with even size");
  return hermitian_min_eigenvalue(cov, symplectic_form(static_cast<int>(cov.rows() / 2)));
}

double complete_positivity_margin(const GaussianChannel& ch) {
  const int n = ch.mode_count();
  const Mat omega = symplectic_form(n);
  return hermitian_min_eigenvalue(ch.noise, omega - ch.scale * omega * ch.scale.transpose());
}

bool is_symmetric(const Mat& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

bool is_physical(const GaussianState& st, double tol) {
  if (st.cov.rows() != st.mean.size() || !is_symmetric(st.cov)) return false;
  return physicality_margin(st.cov) >= -tol;
}

bool is_completely_positive(const GaussianChannel& ch, double tol) {
  return complete_positivity_margin(ch) >= -tol;
}

double symplectic_defect(const Mat& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) return std::numeric_limits<double>::infinity();
  const Mat omega = symplectic_form(static_cast<int>(s.rows() / 2));
  return (s * omega * s.transpose() - omega).cwiseAbs().maxCoeff();
}

bool is_symplectic(const Mat& s, double tol) { return symplectic_defect(s) < tol; }

GaussianState apply_channel(const GaussianChannel& ch, const GaussianState& st) {
  const auto d = st.mean.size();
  require(st.cov.rows() == d && st.cov.cols() == d, "state mean/covariance sizes disagree");
  require(ch.scale.rows() == d && ch.scale.cols() == d && ch.noise.rows() == d &&
              ch.noise.cols() == d && ch.displacement.size() == d,
          "channel and state dimensions disagree");
  return {ch.scale * st.mean + ch.displacement, ch.scale * st.cov * ch.scale.transpose() + ch.noise};
}

GaussianState apply_symplectic(const SymplecticMap& s, const GaussianState& st) {
  require(s.matrix.rows() == st.mean.size(), "symplectic and state dimensions disagree");
  return {s.matrix * st.mean, s.matrix * st.cov * s.matrix.transpose()};
}

GaussianChannel reduce_to_channel(const SymplecticMap& s, const Vec& env_mean, const Mat& env_cov,
                                  const std::vector<int>& system_modes) {
  const int n = s.mode_count();
  require(s.matrix.rows() == s.matrix.cols() && s.matrix.rows() % 2 == 0, "symplectic must be square, even-sized");
  require(is_symplectic(s.matrix), "matrix is not symplectic");
  require(!system_modes.empty(), "system mode set is empty");

  std::vector<bool> is_system(n, false);
  for (int m : system_modes) {
    require(m >= 0 && m < n, "system mode index out of range");
    require(!is_system[m], "duplicate system mode index");
    is_system[m] = true;
  }
  std::vector<int> env_modes;
  for (int m = 0; m < n; ++m)
    if (!is_system[m]) env_modes.push_back(m);

  const auto sys_idx = quadrature_indices(system_modes);
  const auto env_idx = quadrature_indices(env_modes);
  const auto de = static_cast<Eigen::Index>(env_idx.size());
  require(env_mean.size() == de && env_cov.rows() == de && env_cov.cols() == de,
          "environment moments do not match the environment size");
  if (de > 0) require(physicality_margin(env_cov) >= -1e-9, "environment covariance is not physical");

  const Mat a = s.matrix(sys_idx, sys_idx);
  const Mat b = s.matrix(sys_idx, env_idx);
  GaussianChannel ch;
  ch.scale = a;
  if (de > 0) {
    ch.noise = b * env_cov * b.transpose();
    ch.noise = 0.5 * (ch.noise + ch.noise.transpose());
    ch.displacement = b * env_mean;
  } else {
    ch.noise = Mat::Zero(a.rows(), a.rows());
    ch.displacement = Vec::Zero(a.rows());
  }
  return ch;
}

GaussianState marginal(const GaussianState& st, const std::vector<int>& modes) {
  for (int m : modes) require(m >= 0 && m < st.mode_count(), "mode index out of range");
  const auto idx = quadrature_indices(modes);
  return {st.mean(idx), st.cov(idx, idx)};
}

GaussianState tensor_product(const GaussianState& a, const GaussianState& b) {
  const auto da = a.mean.size();
  const auto db = b.mean.size();
  GaussianState out{Vec::Zero(da + db), Mat::Zero(da + db, da + db)};
  out.mean << a.mean, b.mean;
  out.cov.topLeftCorner(da, da) = a.cov;
  out.cov.bottomRightCorner(db, db) = b.cov;
  return out;
}

GaussianChannel direct_sum(const std::vector<GaussianChannel>& parts) {
  Eigen::Index d = 0;
  for (const auto& p : parts) d += p.scale.rows();
  GaussianChannel out{Mat::Zero(d, d), Mat::Zero(d, d), Vec::Zero(d)};
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    const auto k = p.scale.rows();
    out.scale.block(off, off, k, k) = p.scale;
    out.noise.block(off, off, k, k) = p.noise;
    out.displacement.segment(off, k) = p.displacement;
    off += k;
  }
  return out;
}

GaussianChannel compose(const GaussianChannel& ch2, const GaussianChannel& ch1) {
  require(ch1.scale.rows() == ch2.scale.rows(), "channel dimensions disagree");
  return {ch2.scale * ch1.scale, ch2.scale * ch1.noise * ch2.scale.transpose() + ch2.noise,
          ch2.scale * ch1.displacement + ch2.displacement};
}

}  // namespace haloscan
