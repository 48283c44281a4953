#pragma once

// Faces of a Weyl-invariant body P in a, their W-orbits, and the data of the
// corresponding K-orbits of faces F = K^{sigma_perp} . sigma of E = K . P.

#include "polarfaces/convexcore.hpp"
#include "polarfaces/matmodel.hpp"
#include "polarfaces/rootsys.hpp"
#include "polarfaces/sampling.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polar {

/// w . body == body, exactly (vertex sets, or essential generator sets).
bool check_weyl_invariance(const RootSystem& rs, const Body& body);

struct UpsilonRecord {
  int orbit_id = 0;
  FaceRecord sigma;
  /// Ids of all faces in the W-orbit of sigma.
  std::vector<std::string> members;
  std::vector<SurdVec> sigma_perp_basis;
  /// Indices into rs.roots().
  std::vector<int> centralizer_roots;
  /// Generic points of relint sigma used for the dimension count.
  std::vector<SurdVec> generic_witnesses;
  int predicted_dim_F = -1;
  /// Multiplicity used for each nonvanishing positive centralizer root.
  int root_multiplicity = 1;
  int stabilizer_order = 0;
  int orbit_size = 0;
  bool exposed_in_P = true;
  bool exposed_in_E = true;
  bool proper = true;
  bool parametric = false;
  bool completed = false;
};

/// One record per W-orbit of faces, representative with dominant witness when possible.
/// Throws InputError(not_invariant) when the body is not W-invariant.
std::vector<UpsilonRecord> face_orbits(const RootSystem& rs, const Body& body);

/// Fills sigma_perp, centralizer roots, generic witnesses and the predicted dim F.
/// Root multiplicities come from the model when given, otherwise 1.
UpsilonRecord upsilon(const RootSystem& rs, const MatrixModel* model, UpsilonRecord record);

/// face_orbits followed by upsilon on every record.
std::vector<UpsilonRecord> correspondence(const RootSystem& rs, const MatrixModel* model, const Body& body);

/// Numerical tangent rank of F at the record's generic witnesses.
TangentDim upsilon_tangent_dim(const MatrixModel& model, const UpsilonRecord& record);

struct ExposedCheck {
  int orbit_id = 0;
  std::string face_id;
  bool exposed_in_P = true;
  bool exposed_in_E = true;
  /// Exposing direction used by the sampler (unit trace norm in the model).
  std::vector<double> beta;
  std::string beta_exact;
  std::size_t haar_samples = 0;
  std::size_t centralizer_samples = 0;
  /// max over Haar samples of <k.v, beta> - max_P <., beta>; must stay <= tol.
  double max_excess = 0;
  /// Over maximizers: distance of pi(y) to sigma, ||[y, beta]||, |<y,beta> - max|.
  double max_projection_gap = 0;
  double max_bracket = 0;
  double max_value_gap = 0;
  bool counterexample = false;
  bool inconclusive = false;
  std::uint64_t witness_seed = 0;
  std::size_t witness_index = 0;
  std::string note;
};

struct ExposedReport {
  std::vector<ExposedCheck> checks;
  bool passed = true;
};

/// Sampling evidence for "faces of E are exposed iff faces of P are" on every orbit.
ExposedReport exposed_equivalence_check(const RootSystem& rs, const MatrixModel& model, const Body& body,
                                        std::size_t samples, std::uint64_t seed, double tol = 1e-9,
                                        ExecPolicy policy = ExecPolicy::parallel);

struct AbelianWitness {
  std::vector<FaceRecord> chain;
  /// Exposing directions in a, one per step of the chain.
  std::vector<SurdVec> betas;
  /// The same directions embedded in p.
  std::vector<Mat> basis;
  double max_bracket = 0;
  /// max ||[x, s]|| over witnesses x of the bottom face and s in the basis.
  double max_witness_bracket = 0;
};

/// Builds the abelian subalgebra s from a maximal chain of faces ending at the body.
/// Throws InputError(invalid_argument) when the chain is not nested, not maximal or
/// does not end at the whole body.
AbelianWitness abelian_witness(const MatrixModel& model, const Body& body, const std::vector<FaceRecord>& chain);

/// Face containment for faces of the same body.
bool face_contains(const Body& body, const FaceRecord& big, const FaceRecord& small);

}  // namespace polar
