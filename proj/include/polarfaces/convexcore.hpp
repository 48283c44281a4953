#pragma once

// Exact convex bodies: V-polytopes with their face lattice, and planar hulls
// of points and disks (the smallest bodies with non-exposed faces).

#include "polarfaces/exact.hpp"

#include <boost/dynamic_bitset.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polar {

enum class FaceKind { whole, facet, lower_face, vertex, arc_point, segment };

const char* to_string(FaceKind k);

struct FaceRecord {
  std::string id;
  FaceKind kind = FaceKind::whole;
  int dim = 0;
  /// Exact points in the relative interior; the first one is the canonical witness.
  std::vector<SurdVec> witness_points;
  /// Polytope faces: the vertices of the face.
  std::vector<SurdVec> extreme_points;
  std::vector<SurdVec> direction_basis;
  /// Generators of the normal cone; empty for non-exposed faces.
  std::vector<SurdVec> normal_cone_generators;
  bool exposed = true;
  /// Polytope faces: sorted indices into Polytope::vertices().
  std::vector<int> vertex_ids;
  /// Disk-hull faces: indices into DiskHull2D::generators() touching the face.
  std::vector<int> generators;
  /// A continuum of exposed arc points on one disk, reported by one representative.
  bool parametric = false;
  /// For parametric arc families: outward normals at the two ends (counterclockwise).
  std::vector<SurdVec> arc_ends;
  bool full_circle = false;
  /// Non-exposed extreme point where a segment meets an arc.
  bool junction = false;

  SurdVec witness() const { return witness_points.front(); }
};

class Polytope {
 public:
  struct Facet {
    RVec normal;  // primitive integer vector inside Dir(Aff P)
    Rational offset;
    std::vector<int> vertex_ids;
  };

  /// Exact hull of a nonempty point set in dimension at most 8.
  static Polytope hull(std::vector<RVec> points);

  std::size_t ambient_dim() const { return ambient_dim_; }
  /// Dimension of the affine hull.
  int dim() const { return static_cast<int>(direction_.size()); }
  const std::vector<RVec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  /// Basis of Dir(Aff P).
  const std::vector<RVec>& direction_basis() const { return direction_; }
  /// Basis of the orthogonal complement of Dir(Aff P).
  const std::vector<RVec>& lineality_basis() const { return lineality_; }

  bool contains(const RVec& x) const;
  Rational support_value(const RVec& beta) const;
  /// Sorted indices of the vertices maximizing <., beta>.
  std::vector<int> argmax(const RVec& beta) const;
  /// The face spanned by a set of vertices that is known to be a face.
  FaceRecord face(std::vector<int> vertex_ids) const;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<RVec> vertices_;
  std::vector<Facet> facets_;
  std::vector<RVec> direction_;
  std::vector<RVec> lineality_;
};

struct Disk {
  RVec center;
  Rational r;
};

class DiskHull2D {
 public:
  DiskHull2D(std::vector<RVec> points, std::vector<Disk> disks);

  const std::vector<RVec>& points() const { return points_; }
  const std::vector<Disk>& disks() const { return disks_; }
  /// Points followed by disks; a point is a disk of radius 0.
  const std::vector<Disk>& generators() const { return generators_; }
  /// Generators not contained in another generator (first copy of duplicates).
  const std::vector<int>& essential() const { return essential_; }
  bool has_disks() const;

  /// Exact support value max <x, u> for a unit surd direction u.
  Surd support_value(const SurdVec& u) const;
  /// Generators attaining the support value in direction u.
  std::vector<int> tied(const SurdVec& u) const;

 private:
  std::vector<RVec> points_;
  std::vector<Disk> disks_;
  std::vector<Disk> generators_;
  std::vector<int> essential_;
};

using Body = std::variant<Polytope, DiskHull2D>;

std::size_t ambient_dim(const Body& body);

Polytope convex_hull(std::vector<RVec> points);

/// All nonempty faces of the polytope, the whole body first.
std::vector<FaceRecord> face_lattice(const Polytope& p);

/// Whole body, segments, vertices, junction points and one parametric record per open arc.
std::vector<FaceRecord> disk_hull_faces(const DiskHull2D& b);

/// face_lattice or disk_hull_faces.
std::vector<FaceRecord> all_faces(const Body& body);

/// The full argmax set of <., beta>.
FaceRecord support_face(const Body& body, const RVec& beta);

/// Generators of C_F; throws InputError(not_exposed) for non-exposed faces.
std::vector<SurdVec> normal_cone(const Body& body, const FaceRecord& face);

bool exposed_test(const Body& body, const FaceRecord& face);

/// Same face of the same body (exact).
bool same_face(const FaceRecord& a, const FaceRecord& b);

/// A rational unit vector strictly inside the counterclockwise arc of directions
/// from a to b (whole circle when a == b), at roughly the given fraction of the arc.
RVec rational_direction_between(const SurdVec& a, const SurdVec& b, double fraction = 0.5);

/// Counterclockwise angular comparison of nonzero 2D directions in [0, 2pi).
int compare_angle(const SurdVec& a, const SurdVec& b);

}  // namespace polar
