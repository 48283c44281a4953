#include "polarfaces/convexcore.hpp"

#include "polarfaces/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polar {

const char* to_string(FaceKind k) {
  switch (k) {
    case FaceKind::whole: return "whole";
    case FaceKind::facet: return "facet";
    case FaceKind::lower_face: return "lower_face";
    case FaceKind::vertex: return "vertex";
    case FaceKind::arc_point: return "arc_point";
    case FaceKind::segment: return "segment";
  }
  return "?";
}

namespace {

using Bits = boost::dynamic_bitset<>;

struct Ray {
  RVec v;
  Bits tight;
};

// Extreme rays of {y : h_i . y <= 0 for all i} for a pointed cone of full
// dimension, by the double description method with the combinatorial
// adjacency test. h_i = (y_i, -1) for local point coordinates y_i.
std::vector<Ray> double_description(const std::vector<RVec>& h, const std::vector<std::size_t>& initial) {
  const std::size_t m = h.size();
  const std::size_t d = h.front().size();
  std::vector<Ray> rays;
  {
    std::vector<RVec> rows;
    for (auto i : initial) rows.push_back(h[i]);
    for (std::size_t j = 0; j < d; ++j) {
      RVec rhs = zeros(d);
      rhs[j] = -1;
      auto sol = solve(rows, rhs);
      if (!sol) throw std::logic_error("initial simplex is degenerate");
      Ray r{primitive(*sol), Bits(m)};
      for (std::size_t k = 0; k < d; ++k)
        if (k != j) r.tight.set(initial[k]);
      rays.push_back(std::move(r));
    }
  }
  std::vector<bool> used(m, false);
  for (auto i : initial) used[i] = true;

  for (std::size_t i = 0; i < m; ++i) {
    if (used[i]) continue;
    std::vector<Rational> s(rays.size());
    bool any_pos = false;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = dot(h[i], rays[r].v);
      if (s[r] > 0) any_pos = true;
    }
    if (!any_pos) {
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (s[r] == 0) rays[r].tight.set(i);
      continue;
    }
    std::vector<Ray> next;
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (s[r] > 0) {
        pos.push_back(r);
      } else {
        if (s[r] < 0) neg.push_back(r);
        Ray kept = rays[r];
        if (s[r] == 0) kept.tight.set(i);
        next.push_back(std::move(kept));
      }
    }
    for (auto p : pos) {
      for (auto n : neg) {
        Bits z = rays[p].tight & rays[n].tight;
        if (z.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (z.is_subset_of(rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr{primitive(s[p] * rays[n].v - s[n] * rays[p].v), z};
        nr.tight.set(i);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }
  return rays;
}

std::vector<int> pivot_columns(const std::vector<RVec>& rref) {
  std::vector<int> piv;
  for (const auto& row : rref) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0) {
        piv.push_back(static_cast<int>(c));
        break;
      }
    }
  }
  return piv;
}

SurdVec centroid(const std::vector<RVec>& pts) {
  RVec c = zeros(pts.front().size());
  for (const auto& p : pts) c = c + p;
  return SurdVec(Rational(1, static_cast<long>(pts.size())) * c);
}

std::string ids_label(const std::vector<int>& ids) {
  std::string s = "P[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(ids[i]);
  }
  return s + "]";
}

}  // namespace

Polytope Polytope::hull(std::vector<RVec> points) {
  if (points.empty()) throw InputError(ErrorCode::invalid_argument, "convex hull of an empty point set");
  const std::size_t n = points.front().size();
  if (n == 0) throw InputError(ErrorCode::invalid_argument, "points must have positive dimension");
  if (n > 8) throw InputError(ErrorCode::invalid_argument, "polytope ambient dimension is capped at 8");
  for (const auto& p : points)
    if (p.size() != n) throw InputError(ErrorCode::dimension_mismatch, "points of different dimensions");

  // Deduplicate while keeping first occurrences in input order.
  std::vector<RVec> uniq;
  {
    std::set<RVec> seen;
    for (auto& p : points)
      if (seen.insert(p).second) uniq.push_back(std::move(p));
  }

  Polytope P;
  P.ambient_dim_ = n;
  const RVec& base = uniq.front();
  std::vector<RVec> diffs;
  for (const auto& p : uniq) diffs.push_back(p - base);
  P.direction_ = row_basis(diffs);
  P.lineality_ = orthogonal_complement(P.direction_, n);
  const std::size_t k = P.direction_.size();

  if (k == 0) {
    P.vertices_ = {uniq.front()};
    return P;
  }

  // Local affine coordinates read off the pivot columns of the RREF basis.
  const auto piv = pivot_columns(P.direction_);
  std::vector<RVec> local(uniq.size(), RVec(k));
  for (std::size_t i = 0; i < uniq.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) local[i][j] = diffs[i][piv[j]];

  std::vector<RVec> h(uniq.size(), RVec(k + 1));
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) h[i][j] = local[i][j];
    h[i][k] = -1;
  }

  std::vector<std::size_t> initial{0};
  {
    std::vector<RVec> span;
    for (std::size_t i = 1; i < uniq.size() && initial.size() < k + 1; ++i) {
      span.push_back(local[i] - local[0]);
      if (rank(span) == static_cast<int>(span.size())) initial.push_back(i);
      else span.pop_back();
    }
  }
  auto rays = double_description(h, initial);

  std::vector<RVec> gram(k, RVec(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) gram[a][b] = dot(P.direction_[a], P.direction_[b]);

  struct RawFacet {
    RVec normal;
    Rational offset;
  };
  std::vector<RawFacet> raw;
  for (const auto& r : rays) {
    RVec a(r.v.begin(), r.v.begin() + static_cast<long>(k));
    if (is_zero(a)) continue;
    auto m = solve(gram, a);
    RVec nrm = zeros(n);
    for (std::size_t l = 0; l < k; ++l) nrm = nrm + (*m)[l] * P.direction_[l];
    nrm = primitive(nrm);
    Rational off = dot(nrm, uniq.front());
    for (const auto& p : uniq) off = std::max(off, dot(nrm, p));
    raw.push_back({std::move(nrm), std::move(off)});
  }

  std::vector<int> vertex_of(uniq.size(), -1);
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    std::vector<RVec> normals;
    for (const auto& f : raw)
      if (dot(f.normal, uniq[i]) == f.offset) normals.push_back(f.normal);
    if (rank(normals) == static_cast<int>(k)) {
      vertex_of[i] = static_cast<int>(P.vertices_.size());
      P.vertices_.push_back(uniq[i]);
    }
  }
  for (auto& f : raw) {
    Facet facet{std::move(f.normal), std::move(f.offset), {}};
    for (std::size_t i = 0; i < uniq.size(); ++i)
      if (vertex_of[i] >= 0 && dot(facet.normal, uniq[i]) == facet.offset) facet.vertex_ids.push_back(vertex_of[i]);
    P.facets_.push_back(std::move(facet));
  }
  std::sort(P.facets_.begin(), P.facets_.end(),
            [](const Facet& a, const Facet& b) { return a.vertex_ids < b.vertex_ids; });
  return P;
}

bool Polytope::contains(const RVec& x) const {
  if (x.size() != ambient_dim_) throw InputError(ErrorCode::dimension_mismatch, "point dimension mismatch");
  const RVec diff = x - vertices_.front();
  for (const auto& l : lineality_)
    if (dot(l, diff) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, x) > f.offset) return false;
  return true;
}

Rational Polytope::support_value(const RVec& beta) const {
  if (beta.size() != ambient_dim_) throw InputError(ErrorCode::dimension_mismatch, "direction dimension mismatch");
  Rational best = dot(beta, vertices_.front());
  for (const auto& v : vertices_) best = std::max(best, dot(beta, v));
  return best;
}

std::vector<int> Polytope::argmax(const RVec& beta) const {
  const Rational best = support_value(beta);
  std::vector<int> ids;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (dot(beta, vertices_[i]) == best) ids.push_back(static_cast<int>(i));
  return ids;
}

FaceRecord Polytope::face(std::vector<int> ids) const {
  std::sort(ids.begin(), ids.end());
  FaceRecord f;
  f.id = ids_label(ids);
  f.vertex_ids = ids;
  std::vector<RVec> pts;
  for (int i : ids) pts.push_back(vertices_.at(i));
  std::vector<RVec> diffs;
  for (const auto& p : pts) diffs.push_back(p - pts.front());
  for (auto& b : row_basis(diffs)) f.direction_basis.emplace_back(std::move(b));
  f.dim = static_cast<int>(f.direction_basis.size());
  f.witness_points.push_back(centroid(pts));
  for (const auto& q : pts) f.extreme_points.emplace_back(q);

  const bool whole = ids.size() == vertices_.size();
  if (whole) f.kind = FaceKind::whole;
  else if (f.dim == 0) f.kind = FaceKind::vertex;
  else if (f.dim == dim() - 1) f.kind = FaceKind::facet;
  else f.kind = FaceKind::lower_face;

  for (const auto& facet : facets_)
    if (std::includes(facet.vertex_ids.begin(), facet.vertex_ids.end(), ids.begin(), ids.end()))
      f.normal_cone_generators.emplace_back(facet.normal);
  for (const auto& l : lineality_) {
    f.normal_cone_generators.emplace_back(l);
    f.normal_cone_generators.emplace_back(-l);
  }
  if (f.normal_cone_generators.empty()) f.normal_cone_generators.emplace_back(zeros(ambient_dim_));
  f.exposed = true;
  return f;
}

Polytope convex_hull(std::vector<RVec> points) { return Polytope::hull(std::move(points)); }

std::vector<FaceRecord> face_lattice(const Polytope& p) {
  const std::size_t nv = p.vertices().size();
  std::vector<Bits> facet_bits;
  for (const auto& f : p.facets()) {
    Bits b(nv);
    for (int i : f.vertex_ids) b.set(i);
    facet_bits.push_back(std::move(b));
  }
  Bits all(nv);
  all.set();
  std::vector<Bits> order{all};
  std::set<Bits> seen{all};
  for (std::size_t q = 0; q < order.size(); ++q) {
    for (const auto& fb : facet_bits) {
      Bits x = order[q] & fb;
      if (x.none() || x == order[q]) continue;
      if (seen.insert(x).second) order.push_back(x);
    }
  }
  std::vector<FaceRecord> faces;
  for (const auto& b : order) {
    std::vector<int> ids;
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) ids.push_back(static_cast<int>(i));
    faces.push_back(p.face(std::move(ids)));
  }
  // Whole body first, then by decreasing dimension, then by vertex ids.
  std::stable_sort(faces.begin() + 1, faces.end(), [](const FaceRecord& a, const FaceRecord& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.vertex_ids < b.vertex_ids;
  });
  return faces;
}

}  // namespace polar
