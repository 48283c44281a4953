#include "polarfaces/convexcore.hpp"

#include "polarfaces/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polar {

// ---- directions ------------------------------------------------------------

namespace {

// 0 for angles in [0, pi), 1 for [pi, 2pi).
int half_plane(const SurdVec& a) {
  const int sy = sign(a[1]);
  if (sy > 0) return 0;
  if (sy == 0 && sign(a[0]) > 0) return 0;
  return 1;
}

double approx_angle(const SurdVec& a) {
  auto v = a.approx();
  double t = std::atan2(v[1], v[0]);
  return t < 0 ? t + 2 * std::numbers::pi : t;
}

RVec unit_from_tan_half(const Rational& t) {
  const Rational t2 = t * t;
  return {(1 - t2) / (1 + t2), 2 * t / (1 + t2)};
}

RVec rational_unit_near(double theta, int bits) {
  // Wrap to (-pi, pi]; use the antipode near +-pi where tan(theta/2) blows up.
  theta = std::remainder(theta, 2 * std::numbers::pi);
  if (std::abs(theta) > 2.5) {
    double alt = std::remainder(theta - std::numbers::pi, 2 * std::numbers::pi);
    return -unit_from_tan_half(rational_from_double(std::tan(alt / 2), bits));
  }
  return unit_from_tan_half(rational_from_double(std::tan(theta / 2), bits));
}

bool strictly_between(const SurdVec& a, const SurdVec& b, const SurdVec& x) {
  const int ab = compare_angle(a, b);
  const int ax = compare_angle(a, x);
  const int xb = compare_angle(x, b);
  if (ab == 0) return ax != 0;
  if (ab < 0) return ax < 0 && xb < 0;
  return ax < 0 || xb < 0;
}

}  // namespace

int compare_angle(const SurdVec& a, const SurdVec& b) {
  const int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb ? -1 : 1;
  const int cross = sign_cross(a[0], b[1], a[1], b[0]);
  return -cross;
}

RVec rational_direction_between(const SurdVec& a, const SurdVec& b, double fraction) {
  const double ta = approx_angle(a);
  double span = approx_angle(b) - ta;
  if (compare_angle(a, b) == 0) span = 2 * std::numbers::pi;
  else if (span <= 0) span += 2 * std::numbers::pi;
  for (int bits = 24; bits <= 120; bits += 8) {
    for (double f : {fraction, 0.5, 0.3, 0.7}) {
      RVec w = rational_unit_near(ta + f * span, bits);
      if (strictly_between(a, b, SurdVec(w))) return w;
    }
  }
  throw std::logic_error("no rational direction found inside arc");
}

// ---- DiskHull2D ------------------------------------------------------------

DiskHull2D::DiskHull2D(std::vector<RVec> points, std::vector<Disk> disks)
    : points_(std::move(points)), disks_(std::move(disks)) {
  if (points_.empty() && disks_.empty())
    throw InputError(ErrorCode::invalid_argument, "disk hull needs at least one generator");
  for (const auto& p : points_) {
    if (p.size() != 2) throw InputError(ErrorCode::dimension_mismatch, "disk hull points must be 2D");
    generators_.push_back({p, Rational(0)});
  }
  for (const auto& d : disks_) {
    if (d.center.size() != 2) throw InputError(ErrorCode::dimension_mismatch, "disk centers must be 2D");
    if (d.r <= 0) throw InputError(ErrorCode::invalid_argument, "disk radius must be positive");
    generators_.push_back(d);
  }
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    bool redundant = false;
    for (std::size_t h = 0; h < generators_.size() && !redundant; ++h) {
      if (h == g) continue;
      const auto& G = generators_[g];
      const auto& H = generators_[h];
      const Rational gap = H.r - G.r;
      if (gap < 0) continue;
      if (norm2(G.center - H.center) > gap * gap) continue;
      const bool identical = gap == 0;  // then the centers coincide too
      if (!identical || h < g) redundant = true;
    }
    if (!redundant) essential_.push_back(static_cast<int>(g));
  }
}

bool DiskHull2D::has_disks() const {
  for (int g : essential_)
    if (generators_[g].r > 0) return true;
  return false;
}

Surd DiskHull2D::support_value(const SurdVec& u) const {
  Surd best;
  bool first = true;
  for (int g : essential_) {
    Surd v = dot(generators_[g].center, u) + Surd(generators_[g].r);
    if (first || compare(v, best) > 0) best = v;
    first = false;
  }
  return best;
}

std::vector<int> DiskHull2D::tied(const SurdVec& u) const {
  const Surd best = support_value(u);
  std::vector<int> out;
  for (int g : essential_) {
    Surd v = dot(generators_[g].center, u) + Surd(generators_[g].r);
    if (compare(v, best) == 0) out.push_back(g);
  }
  return out;
}

std::size_t ambient_dim(const Body& body) {
  if (const auto* p = std::get_if<Polytope>(&body)) return p->ambient_dim();
  return 2;
}

// ---- face classification ---------------------------------------------------

namespace {

struct Segment {
  SurdVec u;
  std::vector<int> tied;
  int lead = -1;   // generator at the counterclockwise end
  int trail = -1;  // generator at the clockwise end
};

SurdVec contact(const Disk& g, const SurdVec& u) {
  return simplify(SurdVec(g.center) + g.r * u);
}

std::vector<Segment> supporting_segments(const DiskHull2D& b) {
  const auto& gens = b.generators();
  const auto& ess = b.essential();
  std::vector<Segment> segs;
  for (std::size_t x = 0; x < ess.size(); ++x) {
    for (std::size_t y = x + 1; y < ess.size(); ++y) {
      const Disk& gi = gens[ess[x]];
      const Disk& gj = gens[ess[y]];
      // Unit u with <c_i - c_j, u> = r_j - r_i: common outer tangent directions.
      const RVec d = gi.center - gj.center;
      const Rational delta = gj.r - gi.r;
      const Rational L = norm2(d);
      const Rational D = L - delta * delta;
      if (D <= 0) continue;
      for (int s : {1, -1}) {
        SurdVec u = simplify({(delta / L) * d, (Rational(s) / L) * rot90(d), D});
        bool known = false;
        for (const auto& seg : segs)
          if (equal(seg.u, u)) known = true;
        if (known) continue;
        auto t = b.tied(u);
        if (std::find(t.begin(), t.end(), ess[x]) == t.end() || std::find(t.begin(), t.end(), ess[y]) == t.end())
          continue;
        Segment seg{u, t};
        const SurdVec tangent = rot90(u);
        for (int g : t) {
          const Surd pos = dot(gens[g].center, tangent);
          if (seg.lead < 0 || compare(pos, dot(gens[seg.lead].center, tangent)) > 0) seg.lead = g;
          if (seg.trail < 0 || compare(pos, dot(gens[seg.trail].center, tangent)) < 0) seg.trail = g;
        }
        segs.push_back(std::move(seg));
      }
    }
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& c) { return compare_angle(a.u, c.u) < 0; });
  return segs;
}

std::vector<RVec> essential_points(const DiskHull2D& b) {
  std::vector<RVec> pts;
  for (int g : b.essential()) pts.push_back(b.generators()[g].center);
  return pts;
}

// Faces of a disk hull without disks, via the polygon.
std::vector<FaceRecord> polygon_faces(const DiskHull2D& b) {
  const auto ess = b.essential();
  auto poly = Polytope::hull(essential_points(b));
  auto faces = face_lattice(poly);
  for (auto& f : faces) {
    for (int v : f.vertex_ids) {
      for (int g : ess)
        if (b.generators()[g].center == poly.vertices()[v]) f.generators.push_back(g);
    }
  }
  return faces;
}

FaceRecord whole_record(const DiskHull2D& b) {
  FaceRecord f;
  f.id = "whole";
  f.kind = FaceKind::whole;
  f.dim = 2;
  RVec c = zeros(2);
  for (int g : b.essential()) c = c + b.generators()[g].center;
  f.witness_points.emplace_back(Rational(1, static_cast<long>(b.essential().size())) * c);
  f.direction_basis = {SurdVec(RVec{1, 0}), SurdVec(RVec{0, 1})};
  f.normal_cone_generators = {SurdVec(zeros(2))};
  f.generators = b.essential();
  return f;
}

FaceRecord arc_family(const DiskHull2D& b, int g, const SurdVec& from, const SurdVec& to, bool full) {
  const Disk& disk = b.generators()[g];
  FaceRecord f;
  f.kind = FaceKind::arc_point;
  f.dim = 0;
  f.parametric = true;
  f.full_circle = full;
  f.generators = {g};
  if (!full) f.arc_ends = {from, to};
  for (double frac : {0.5, 0.25, 0.75}) {
    RVec w = rational_direction_between(from, to, frac);
    f.witness_points.emplace_back(disk.center + disk.r * w);
    if (f.normal_cone_generators.empty()) f.normal_cone_generators.emplace_back(w);
  }
  return f;
}

}  // namespace

std::vector<FaceRecord> disk_hull_faces(const DiskHull2D& b) {
  if (!b.has_disks()) return polygon_faces(b);
  std::vector<FaceRecord> faces{whole_record(b)};
  const auto& gens = b.generators();
  if (b.essential().size() == 1) {
    const SurdVec start(RVec{1, 0});
    auto arc = arc_family(b, b.essential().front(), start, start, true);
    arc.id = "arc0";
    faces.push_back(std::move(arc));
    return faces;
  }
  const auto segs = supporting_segments(b);
  const std::size_t ns = segs.size();
  if (ns < 2) throw std::logic_error("disk hull boundary has fewer than two segments");

  std::vector<FaceRecord> segments, points, arcs;
  for (std::size_t k = 0; k < ns; ++k) {
    const auto& s = segs[k];
    FaceRecord f;
    f.id = "seg" + std::to_string(k);
    f.kind = FaceKind::segment;
    f.dim = 1;
    const SurdVec trail = contact(gens[s.trail], s.u);
    const SurdVec lead = contact(gens[s.lead], s.u);
    f.witness_points = {Rational(1, 2) * (trail + lead), trail, lead};
    f.direction_basis = {rot90(s.u)};
    f.normal_cone_generators = {s.u};
    f.generators = s.tied;
    segments.push_back(std::move(f));
  }
  for (std::size_t k = 0; k < ns; ++k) {
    const auto& s = segs[k];
    const auto& nxt = segs[(k + 1) % ns];
    if (s.lead != nxt.trail) throw std::logic_error("disk hull boundary is not closed");
    const int g = s.lead;
    if (gens[g].r == 0) {
      FaceRecord f;
      f.id = "vertex" + std::to_string(points.size());
      f.kind = FaceKind::vertex;
      f.dim = 0;
      f.witness_points = {SurdVec(gens[g].center)};
      f.normal_cone_generators = {s.u, nxt.u};
      f.generators = {g};
      points.push_back(std::move(f));
      continue;
    }
    for (const SurdVec* u : {&s.u, &nxt.u}) {
      FaceRecord f;
      f.id = "junction" + std::to_string(points.size());
      f.kind = FaceKind::vertex;
      f.dim = 0;
      f.junction = true;
      f.exposed = false;
      f.witness_points = {contact(gens[g], *u)};
      f.generators = {g};
      points.push_back(std::move(f));
    }
    auto arc = arc_family(b, g, s.u, nxt.u, false);
    arc.id = "arc" + std::to_string(arcs.size());
    arcs.push_back(std::move(arc));
  }
  for (auto* group : {&segments, &points, &arcs})
    for (auto& f : *group) faces.push_back(std::move(f));
  return faces;
}

std::vector<FaceRecord> all_faces(const Body& body) {
  if (const auto* p = std::get_if<Polytope>(&body)) return face_lattice(*p);
  return disk_hull_faces(std::get<DiskHull2D>(body));
}

// ---- support faces and exposedness -----------------------------------------

namespace {

void check_direction(const Body& body, const RVec& beta) {
  if (beta.size() != ambient_dim(body))
    throw InputError(ErrorCode::dimension_mismatch, "direction has dimension " + std::to_string(beta.size()) +
                                                        ", body lives in dimension " +
                                                        std::to_string(ambient_dim(body)));
}

FaceRecord disk_support_face(const DiskHull2D& b, const RVec& beta) {
  if (is_zero(beta)) return b.has_disks() ? whole_record(b) : polygon_faces(b).front();
  if (!b.has_disks()) {
    auto faces = polygon_faces(b);
    auto poly = Polytope::hull(essential_points(b));
    auto ids = poly.argmax(beta);
    for (auto& f : faces)
      if (f.vertex_ids == ids) return f;
    throw std::logic_error("support face missing from the polygon lattice");
  }
  const SurdVec u = normalized(beta);
  const auto t = b.tied(u);
  const auto& gens = b.generators();
  if (t.size() >= 2 || gens[t.front()].r == 0) {
    for (auto& f : disk_hull_faces(b)) {
      if (t.size() >= 2 && f.kind == FaceKind::segment && equal(f.normal_cone_generators.front(), u)) return f;
      if (t.size() == 1 && f.kind == FaceKind::vertex && !f.junction && f.generators == t) return f;
    }
    throw std::logic_error("support face missing from the disk hull classification");
  }
  FaceRecord f;
  f.id = "arc_point";
  f.kind = FaceKind::arc_point;
  f.dim = 0;
  f.witness_points = {contact(gens[t.front()], u)};
  f.normal_cone_generators = {u};
  f.generators = t;
  return f;
}

// The supporting directions at which the given point is a contact point of a disk.
std::vector<SurdVec> smooth_normals_at(const DiskHull2D& b, const SurdVec& e) {
  std::vector<SurdVec> out;
  for (int g : b.essential()) {
    const Disk& disk = b.generators()[g];
    if (disk.r == 0) continue;
    const SurdVec diff = e - SurdVec(disk.center);
    if (compare(dot(diff, diff), Surd(disk.r * disk.r)) == 0) out.push_back((1 / disk.r) * diff);
  }
  return out;
}

bool polytope_exposed(const Polytope& p, const FaceRecord& face) {
  // beta = sum of the normals of the facets containing the face.
  RVec beta = zeros(p.ambient_dim());
  for (const auto& f : p.facets())
    if (std::includes(f.vertex_ids.begin(), f.vertex_ids.end(), face.vertex_ids.begin(), face.vertex_ids.end()))
      beta = beta + f.normal;
  return p.argmax(beta) == face.vertex_ids;
}

bool single_contact(const DiskHull2D& b, const SurdVec& u, const SurdVec& e) {
  const auto t = b.tied(u);
  return t.size() == 1 && equal(contact(b.generators()[t.front()], u), e);
}

}  // namespace

FaceRecord support_face(const Body& body, const RVec& beta) {
  check_direction(body, beta);
  if (const auto* p = std::get_if<Polytope>(&body)) return p->face(p->argmax(beta));
  return disk_support_face(std::get<DiskHull2D>(body), beta);
}

std::vector<SurdVec> normal_cone(const Body& body, const FaceRecord& face) {
  if (!face.exposed)
    throw InputError(ErrorCode::not_exposed, "face " + face.id + " is not exposed; its normal cone is empty");
  if (const auto* p = std::get_if<Polytope>(&body)) return p->face(face.vertex_ids).normal_cone_generators;
  const auto& b = std::get<DiskHull2D>(body);
  if (face.kind == FaceKind::whole) return {SurdVec(zeros(2))};
  if (!b.has_disks()) {
    auto poly = Polytope::hull(essential_points(b));
    return poly.face(face.vertex_ids).normal_cone_generators;
  }
  if (face.kind == FaceKind::arc_point && !face.parametric) {
    auto n = smooth_normals_at(b, face.witness());
    if (n.size() != 1) throw std::logic_error("arc point is not on a unique disk circle");
    return n;
  }
  return face.normal_cone_generators;
}

bool exposed_test(const Body& body, const FaceRecord& face) {
  if (face.kind == FaceKind::whole) return true;
  if (const auto* p = std::get_if<Polytope>(&body)) return polytope_exposed(*p, face);
  const auto& b = std::get<DiskHull2D>(body);
  if (!b.has_disks()) return polytope_exposed(Polytope::hull(essential_points(b)), face);

  if (face.kind == FaceKind::segment) {
    const SurdVec& u = face.normal_cone_generators.front();
    const auto t = b.tied(u);
    std::vector<SurdVec> contacts;
    for (int g : t) contacts.push_back(contact(b.generators()[g], u));
    const SurdVec tangent = rot90(u);
    auto pos = [&](const SurdVec& x) { return dot(x, tangent); };
    auto lo = contacts.front(), hi = contacts.front();
    for (const auto& c : contacts) {
      if (compare(pos(c), pos(lo)) < 0) lo = c;
      if (compare(pos(c), pos(hi)) > 0) hi = c;
    }
    return equal(lo, face.witness_points[1]) && equal(hi, face.witness_points[2]);
  }
  if (face.parametric) {
    // Every point of an open arc has a unique supporting line touching only that point;
    // checked on the representatives.
    for (const auto& w : face.witness_points) {
      auto n = smooth_normals_at(b, w);
      if (n.size() != 1 || !single_contact(b, n.front(), w)) return false;
    }
    return true;
  }
  // A point face. On a disk circle the supporting line is unique, so exposedness
  // is decided by that single candidate.
  const SurdVec e = face.witness();
  auto smooth = smooth_normals_at(b, e);
  if (!smooth.empty()) {
    for (const auto& n : smooth)
      if (!single_contact(b, n, e)) return false;
    return true;
  }
  // A point generator: a corner, exposed by any direction strictly inside its normal cone.
  if (face.normal_cone_generators.size() != 2) return false;
  RVec w = rational_direction_between(face.normal_cone_generators[0], face.normal_cone_generators[1]);
  return single_contact(b, SurdVec(w), e);
}

bool same_face(const FaceRecord& a, const FaceRecord& b) {
  if (a.kind != b.kind || a.dim != b.dim || a.parametric != b.parametric) return false;
  if (!a.vertex_ids.empty() || !b.vertex_ids.empty()) return a.vertex_ids == b.vertex_ids;
  if (a.kind == FaceKind::whole) return true;
  if (a.parametric) {
    if (a.generators != b.generators || a.full_circle != b.full_circle || a.arc_ends.size() != b.arc_ends.size())
      return false;
    for (std::size_t i = 0; i < a.arc_ends.size(); ++i)
      if (!equal(a.arc_ends[i], b.arc_ends[i])) return false;
    return true;
  }
  if (a.kind == FaceKind::segment) return equal(a.normal_cone_generators.front(), b.normal_cone_generators.front());
  return equal(a.witness(), b.witness());
}

}  // namespace polar
