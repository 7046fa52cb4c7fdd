// Phase-space description of multimode Gaussian states, symplectic maps and
// Gaussian channels.
//
// Conventions used throughout the library:
//   * quadratures are ordered (Q1, P1, Q2, P2, ...);
//   * the symplectic form is the direct sum of [[0, 1], [-1, 0]] blocks;
//   * covariance matrices are normalized so that the vacuum is the identity.
#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace haloscan {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Thrown for malformed inputs: dimension mismatches, out-of-range parameters,
// non-symplectic matrices and similar caller errors.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GaussianState {
  Vec mean;
  Mat cov;

  int mode_count() const { return static_cast<int>(mean.size() / 2); }

  static GaussianState vacuum(int modes);
  // Thermal state with covariance noise_factor * I (noise_factor = 1 + 2 n_bar).
  static GaussianState thermal(int modes, double noise_factor);
};

struct SymplecticMap {
  Mat matrix;
  int mode_count() const { return static_cast<int>(matrix.rows() / 2); }
};

// mean -> scale * mean + displacement, cov -> scale * cov * scale^T + noise.
struct GaussianChannel {
  Mat scale;
  Mat noise;
  Vec displacement;

  int mode_count() const { return static_cast<int>(scale.rows() / 2); }
  static GaussianChannel identity(int modes);
};

Mat symplectic_form(int modes);

// Smallest eigenvalue of the Hermitian matrix cov + i*Omega.
double physicality_margin(const Mat& cov);
// Smallest eigenvalue of noise + i*Omega - i*scale*Omega*scale^T.
double complete_positivity_margin(const GaussianChannel& ch);

bool is_symmetric(const Mat& m, double rel_tol = 1e-12);
bool is_physical(const GaussianState& st, double tol = 1e-9);
bool is_completely_positive(const GaussianChannel& ch, double tol = 1e-9);
// max-entry deviation of S Omega S^T from Omega.
double symplectic_defect(const Mat& s);
bool is_symplectic(const Mat& s, double tol = 1e-10);

GaussianState apply_channel(const GaussianChannel& ch, const GaussianState& st);
GaussianState apply_symplectic(const SymplecticMap& s, const GaussianState& st);

// Channel on `system_modes` obtained by evolving system + environment under
// `s` and tracing out the environment. The environment consists of every mode
// not listed in `system_modes`, in increasing index order; env_mean/env_cov
// describe it in that order.
GaussianChannel reduce_to_channel(const SymplecticMap& s, const Vec& env_mean,
                                  const Mat& env_cov,
                                  const std::vector<int>& system_modes);

// Marginal state of the listed modes (kept in the order given).
GaussianState marginal(const GaussianState& st, const std::vector<int>& modes);
// Product state a (x) b, with a's modes first.
GaussianState tensor_product(const GaussianState& a, const GaussianState& b);
// Product channel acting independently on consecutive mode blocks.
GaussianChannel direct_sum(const std::vector<GaussianChannel>& parts);
// ch2 after ch1.
GaussianChannel compose(const GaussianChannel& ch2, const GaussianChannel& ch1);
// Embed a k-mode symplectic acting on `modes` into an n-mode identity.
SymplecticMap embed(const SymplecticMap& local, const std::vector<int>& modes,
                    int total_modes);
SymplecticMap multiply(const SymplecticMap& a, const SymplecticMap& b);
SymplecticMap inverse(const SymplecticMap& s);

// ---- Standard symplectic building blocks -----------------------------------

enum class SymplecticKind {
  rotation,           // parameter: angle (radians)
  single_squeezer,    // parameter: gain G >= 1, squeezes Q
  two_mode_squeezer,  // parameter: squeezing r >= 0
  beam_splitter,      // parameter: transmissivity in [0, 1]
  sum_gate            // no parameter
};

struct SymplecticSpec {
  SymplecticKind kind;
  double parameter = 0.0;
};

SymplecticMap make_symplectic(const SymplecticSpec& spec);

SymplecticMap rotation(double angle);
SymplecticMap single_squeezer(double gain);
SymplecticMap two_mode_squeezer(double r);
SymplecticMap beam_splitter(double transmissivity);
// (Q, P, Q_anc, P_anc) -> (Q, P - P_anc, Q_anc + Q, P_anc).
SymplecticMap sum_gate();

// 2x2 rotation block [[cos, -sin], [sin, cos]].
Eigen::Matrix2d rotation_block(double angle);

// Passive linear-optics symplectic for a complex unitary acting on
// annihilation operators a = (Q + iP)/sqrt(2).
SymplecticMap passive_from_unitary(const CMat& u);

}  // namespace haloscan
