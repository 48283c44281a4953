#pragma once

// Momentum polytopes of gradient maps and the parabolic data attached to their
// faces, on the model X = RP^{n-1} with K = SO(n) acting through sym(n):
//   mu([v]) = v v^T / |v|^2 - I/n,   fixed points of A: the coordinate lines.

#include "polarfaces/convexcore.hpp"
#include "polarfaces/matmodel.hpp"
#include "polarfaces/rootsys.hpp"
#include "polarfaces/sampling.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polar {

struct FixedPointData {
  std::vector<RVec> values;
  std::vector<std::string> labels;
};

/// Exact hull of the fixed-point values. Throws InputError on empty or ragged data.
Polytope momentum_polytope(const FixedPointData& data);

class ProjectiveModel {
 public:
  /// "proj3" .. "proj6" (also "proj(4)").
  static ProjectiveModel make(std::string_view name);
  explicit ProjectiveModel(int n);

  int n() const { return n_; }
  std::string name() const { return "proj" + std::to_string(n_); }
  std::string description() const;
  /// The sym(n) model whose group acts on X.
  const MatrixModel& group() const { return group_; }

  Mat mu(const Vec& v) const;
  /// Diagonal of mu, in the coordinates of the root system A_{n-1}.
  std::vector<double> mu_a(const Vec& v) const;
  RVec mu_a(const RVec& v) const;
  /// mu at the coordinate lines: e_i - 1/n.
  FixedPointData fixed_points() const;
  /// <mu(v), beta> for beta in a.
  double mu_beta(const Vec& v, std::span<const double> beta) const;
  /// Uniformly distributed unit vector.
  Vec sample_point(std::uint64_t seed) const;

 private:
  int n_;
  MatrixModel group_;
};

/// Projective distance: sine of the angle between the lines through u and v.
double line_distance(const Vec& u, const Vec& v);

struct FaceMaxSet {
  /// Coordinates spanning X_max (those attaining max_i beta_i).
  std::vector<int> coordinates;
  /// max over X of <mu, beta> = max_i beta_i - mean(beta).
  Rational max_value;
  bool whole = false;
};

FaceMaxSet face_max_set(const ProjectiveModel& model, const RVec& beta);

struct FaceSetReport {
  std::vector<int> coordinates;
  std::size_t samples = 0;
  /// Gaussian samples: max of <mu(x), beta> - max_value (never positive up to tol).
  double max_excess = 0;
  /// Integer samples with random supports: maximal exactly iff support inside the block.
  std::size_t maximizers = 0;
  std::size_t support_mismatches = 0;
  /// Union of the supports of the sampled maximizers.
  std::vector<int> argmax_support;
  /// Vertices of conv(mu_a(sampled maximizers)), as indices of coordinate lines.
  std::vector<int> hull_vertices;
  bool hull_matches = false;
  std::uint64_t witness_seed = 0;
  bool passed = false;
};

/// Sampling evidence for X_max^beta = mu^{-1}(F_beta(P)) and F = conv mu(X_max).
FaceSetReport face_set_check(const ProjectiveModel& model, const RVec& beta, std::size_t samples, std::uint64_t seed,
                             double tol = 1e-9, ExecPolicy policy = ExecPolicy::parallel);

struct ParabolicDescriptor {
  RVec beta;
  std::vector<int> roots_pos;
  std::vector<int> roots_zero;
  std::vector<int> roots_neg;
  /// Coordinate groups of equal beta value, by decreasing value (type A realizations only).
  std::vector<std::vector<int>> blocks;
  bool improper = false;
  std::string note;

  const std::vector<int>& levi_roots() const { return roots_zero; }
  const std::vector<int>& nilradical_roots() const { return roots_pos; }
  /// Block index of each coordinate.
  std::vector<int> block_of() const;
};

/// beta = stabilizer average of the normal cone of F, the root partition and the blocks.
ParabolicDescriptor parabolic_of_face(const RootSystem& rs, const Polytope& P, const FaceRecord& F);
/// Root partition and blocks for a given beta.
ParabolicDescriptor parabolic_of_beta(const RootSystem& rs, const RVec& beta);

/// Which limit: plus is G^{beta+} (block upper triangular), minus G^{beta-} (block lower).
enum class Side { plus, minus };

/// Largest entry of g in the blocks that must vanish on the given side.
double parabolic_defect(const ParabolicDescriptor& d, const Mat& g, Side side);
/// Block-diagonal part of g. Throws InputError(invalid_argument) when g is off by more than 1e-12.
Mat levi_projection(const ParabolicDescriptor& d, const Mat& g, Side side = Side::plus);

struct LimitPoint {
  Vec point;
  /// Coordinates of the limit.
  std::vector<int> support;
  /// True when the limit lies in X_F (x in X_F^-).
  bool in_domain = false;
};

/// lim_{t -> +inf} exp(t beta) . [x]. Coordinates below 1e-13 |x| count as zero.
LimitPoint limit_map(const ProjectiveModel& model, const RVec& beta, const Vec& x);

struct RetractionReport {
  std::vector<int> coordinates;
  std::size_t samples = 0;
  /// Each beta exposes the face and is fixed by its stabilizer.
  std::vector<bool> beta_exposes;
  std::vector<bool> beta_fixed;
  double independence_gap = 0;
  std::size_t support_mismatches = 0;
  double idempotence_gap = 0;
  double equivariance_gap = 0;
  /// Grid points where the distance to the limit increased.
  std::size_t monotonicity_violations = 0;
  std::size_t domain_misses = 0;
  std::size_t witness_index = 0;
  std::uint64_t witness_seed = 0;
  bool passed = false;
  std::string note;
};

/// Independence of beta, idempotence, Q^{F-} equivariance and monotone convergence of the flow.
RetractionReport retraction_check(const ProjectiveModel& model, const std::vector<int>& face_coordinates,
                                  const std::vector<RVec>& betas, std::size_t samples, std::uint64_t seed,
                                  double tol = 1e-8, ExecPolicy policy = ExecPolicy::parallel);

struct ParabolicOracleReport {
  std::vector<int> coordinates;
  std::size_t group_samples = 0;
  std::size_t preserving = 0;
  std::size_t triangular = 0;
  std::size_t group_mismatches = 0;
  std::size_t orthogonal_samples = 0;
  std::size_t orthogonal_preserving = 0;
  std::size_t block_orthogonal = 0;
  std::size_t orthogonal_mismatches = 0;
  /// Block-orthogonal k fix beta, others move it.
  std::size_t centralizer_mismatches = 0;
  std::size_t witness_index = 0;
  bool passed = false;
};

/// g . X_F = X_F  <=>  g block upper triangular, and Q^F cap K = block-orthogonal group, on samples.
ParabolicOracleReport parabolic_oracle(const ProjectiveModel& model, const ParabolicDescriptor& d,
                                       std::size_t samples, std::uint64_t seed, double tol = 1e-8,
                                       ExecPolicy policy = ExecPolicy::parallel);

/// Coordinates i whose fixed point e_i - 1/n lies in the face F of the momentum polytope.
std::vector<int> face_coordinates(const ProjectiveModel& model, const Polytope& P, const FaceRecord& F);

}  // namespace polar
