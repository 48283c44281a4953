#pragma once

// Matrix realizations of K acting on p: traceless symmetric n x n matrices
// under SO(n) (split, restricted roots of type A_{n-1}), and two copies of the
// boosts of so(3,1) under SO(3) x SO(3) (restricted roots A1 x A1, multiplicity 2).

#include "polarfaces/convexcore.hpp"
#include "polarfaces/rootsys.hpp"
#include "polarfaces/sampling.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polar {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

enum class ModelKind { sym, a1xa1 };

class MatrixModel {
 public:
  /// "sym3", "sym(3)" (2 <= n <= 6) or "a1xa1".
  static MatrixModel make(std::string_view name);

  ModelKind kind() const { return kind_; }
  std::string name() const;
  /// n for sym(n).
  int n() const { return n_; }
  /// Size of the matrices representing p and k.
  int matrix_size() const { return size_; }
  int p_dim() const { return static_cast<int>(p_basis_.size()); }
  int k_dim() const { return static_cast<int>(k_basis_.size()); }
  const RootSystem& root_system() const { return rs_; }
  /// tr(embed(x) embed(y)) = scale * <x, y> for x, y in a.
  double scale() const { return scale_; }
  std::string inner_product_note() const;
  /// Dimension of the restricted root spaces.
  int root_multiplicity() const { return kind_ == ModelKind::sym ? 1 : 2; }

  /// Orthonormal basis of p for the trace form.
  const std::vector<Mat>& p_basis() const { return p_basis_; }
  /// Basis of k.
  const std::vector<Mat>& k_basis() const { return k_basis_; }

  Mat embed_a(std::span<const double> x) const;
  Mat embed_a(const RVec& x) const;
  /// Orthogonal projection p -> a in root-system coordinates.
  std::vector<double> project_a(const Mat& x) const;
  /// Coordinates of x in p_basis().
  Vec p_coords(const Mat& x) const;
  Mat from_p_coords(const Vec& c) const;

  double inner(const Mat& x, const Mat& y) const { return (x * y).trace(); }
  static Mat bracket(const Mat& x, const Mat& y) { return x * y - y * x; }
  /// Haar-distributed element of K, deterministic in the seed.
  Mat sample_K(std::uint64_t seed) const;
  Mat act(const Mat& k, const Mat& x) const { return k * x * k.transpose(); }
  /// Standard Gaussian element of p.
  Mat sample_p(std::uint64_t seed) const;

  /// Basis of the centralizer of B in k (nullspace of the stacked bracket operator).
  std::vector<Mat> centralizer_k(std::span<const Mat> B, double tol = 1e-10) const;

  /// Dominant element of a conjugate to the K-orbit of x (sorted spectrum, or boost lengths).
  std::vector<double> dominant_a(const Mat& x) const;

 private:
  ModelKind kind_ = ModelKind::sym;
  int n_ = 0;
  int size_ = 0;
  double scale_ = 1;
  RootSystem rs_ = RootSystem::build("A1");
  std::vector<Mat> p_basis_;
  std::vector<Mat> k_basis_;
};

/// Haar-distributed O(n) (SO(n) when special) from QR of a Gaussian matrix.
Mat haar_orthogonal(int n, std::mt19937_64& rng, bool special);

/// Numerical rank with singular values below rel_cutoff * (largest) discarded.
int numeric_rank(const Mat& columns, double rel_cutoff = 1e-8);

struct TangentDim {
  std::vector<int> ranks;  // one per witness
  int rank = 0;
  /// All witnesses agree.
  bool stable = true;
};

/// dim(Dir(sigma) + span{[k, x] : k in k^{sigma_perp}}) at each witness x in relint sigma.
TangentDim tangent_dim_face(const MatrixModel& model, const FaceRecord& sigma, std::span<const SurdVec> sigma_perp,
                            std::span<const std::vector<double>> witnesses = {});

struct KostantReport {
  std::size_t samples = 0;
  double max_violation = 0;
  std::size_t worst_index = 0;
  std::uint64_t worst_seed = 0;
  std::vector<double> worst_projection;
  std::vector<double> dominant;
  double tol = 1e-9;
  bool passed = true;
};

/// Checks pi(k x k^T) in conv(W . dominant_a(x)) on Haar samples of K. The violation is
/// the largest normalized excess max_w <w omega_i, y> - <omega_i, dominant> over the
/// fundamental weights.
KostantReport kostant_check(const MatrixModel& model, const Mat& x, std::size_t samples, std::uint64_t seed,
                            double tol = 1e-9, ExecPolicy policy = ExecPolicy::parallel);

}  // namespace polar
