#include "doctest.h"

#include "polarfaces/errors.hpp"
#include "polarfaces/faceorbit.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace polar;

namespace {

RVec rv(std::initializer_list<int> xs) {
  RVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

Polytope square() { return Polytope::hull({rv({1, 1}), rv({1, -1}), rv({-1, 1}), rv({-1, -1})}); }
DiskHull2D stadium() { return DiskHull2D({}, {{rv({-1, 0}), 1}, {rv({1, 0}), 1}}); }

const UpsilonRecord& orbit_with(const std::vector<UpsilonRecord>& recs, const std::string& member) {
  for (const auto& r : recs)
    if (std::find(r.members.begin(), r.members.end(), member) != r.members.end()) return r;
  throw std::runtime_error("no orbit contains " + member);
}

// Hull of the W-orbits of a few random points of a.
Polytope random_invariant(const RootSystem& rs, std::mt19937_64& rng, int seeds, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<RVec> pts;
  for (int s = 0; s < seeds; ++s) {
    RVec x(rs.ambient_dim());
    for (auto& c : x) c = d(rng);
    x = rs.project_to_a(x);
    for (auto& y : rs.weyl_orbit(x)) pts.push_back(y);
  }
  return Polytope::hull(pts);
}

}  // namespace

TEST_CASE("check_weyl_invariance examples") {
  const auto a1a1 = RootSystem::build("A1xA1");
  CHECK(check_weyl_invariance(a1a1, square()));
  CHECK(check_weyl_invariance(a1a1, stadium()));
  auto shifted = Polytope::hull({rv({2, 1}), rv({2, -1}), rv({0, 1}), rv({0, -1})});
  CHECK_FALSE(check_weyl_invariance(a1a1, shifted));
  CHECK_THROWS_AS(check_weyl_invariance(RootSystem::build("A2"), square()), InputError);
  try {
    face_orbits(a1a1, shifted);
    FAIL("expected not_invariant");
  } catch (const InputError& e) {
    CHECK(e.code() == ErrorCode::not_invariant);
  }
}

TEST_CASE("face_orbits examples") {
  const auto a1a1 = RootSystem::build("A1xA1");
  auto sq = face_orbits(a1a1, square());
  REQUIRE(sq.size() == 4);
  std::map<int, int> by_dim;
  int total = 0;
  for (const auto& r : sq) {
    ++by_dim[r.sigma.dim];
    total += r.orbit_size;
    CHECK(r.orbit_size * r.stabilizer_order == 4);
  }
  CHECK(total == 9);
  CHECK(by_dim == std::map<int, int>{{0, 1}, {1, 2}, {2, 1}});
  for (const auto& r : sq)
    if (r.sigma.dim == 0) {
      CHECK(r.orbit_size == 4);
      CHECK(r.sigma.witness().approx() == std::vector<double>{1, 1});
    }

  auto pt = face_orbits(RootSystem::build("A2"), Polytope::hull({rv({0, 0, 0})}));
  REQUIRE(pt.size() == 1);
  CHECK(pt[0].stabilizer_order == 6);

  auto st = face_orbits(a1a1, stadium());
  REQUIRE(st.size() == 4);
  int non_exposed = 0;
  for (const auto& r : st) {
    if (r.sigma.junction) {
      CHECK(r.orbit_size == 4);
      CHECK_FALSE(r.exposed_in_P);
      CHECK_FALSE(r.exposed_in_E);
      CHECK(r.sigma.witness().approx() == std::vector<double>{1, 1});
    }
    if (r.sigma.kind == FaceKind::segment) CHECK(r.orbit_size == 2);
    if (r.sigma.parametric) CHECK(r.orbit_size == 2);
    if (!r.exposed_in_P) ++non_exposed;
  }
  CHECK(non_exposed == 1);
}

TEST_CASE("disk plus point hulls and polygon fallback") {
  // Disk at the origin and the four points (+-3, 0), (0, +-3): a rounded square.
  const auto a1a1 = RootSystem::build("A1xA1");
  DiskHull2D b({rv({3, 0}), rv({-3, 0}), rv({0, 3}), rv({0, -3})}, {{rv({0, 0}), 1}});
  auto recs = face_orbits(a1a1, b);
  int total = 0;
  for (const auto& r : recs) total += r.orbit_size;
  CHECK(total == static_cast<int>(all_faces(b).size()));
  for (const auto& r : recs)
    if (r.sigma.junction) CHECK_FALSE(r.exposed_in_P);

  DiskHull2D poly({rv({1, 1}), rv({1, -1}), rv({-1, 1}), rv({-1, -1})}, {});
  CHECK(face_orbits(a1a1, poly).size() == 4);
}

TEST_CASE("upsilon examples") {
  const auto a1a1 = RootSystem::build("A1xA1");
  auto recs = correspondence(a1a1, nullptr, square());
  for (const auto& r : recs) {
    CHECK(r.completed);
    CHECK(r.sigma.dim + static_cast<int>(r.sigma_perp_basis.size()) == 2);
  }
  const auto& vertex = orbit_with(recs, "P[0]");
  CHECK(vertex.sigma_perp_basis.size() == 2);
  CHECK(vertex.centralizer_roots.empty());
  CHECK(vertex.predicted_dim_F == 0);

  // Right edge x = 1: sigma_perp = span{(1,0)}, centralizer roots +-alpha_2.
  FaceRecord right = square().face({0, 1});
  UpsilonRecord seed;
  seed.sigma = right;
  auto u = upsilon(a1a1, nullptr, seed);
  REQUIRE(u.sigma_perp_basis.size() == 1);
  CHECK(u.sigma_perp_basis[0].approx()[1] == 0.0);
  REQUIRE(u.centralizer_roots.size() == 2);
  for (int i : u.centralizer_roots) CHECK(a1a1.roots()[i][0] == 0);
  CHECK(u.predicted_dim_F == 2);
  // The model with two-dimensional root spaces doubles the contribution.
  const auto ab = MatrixModel::make("a1xa1");
  auto um = upsilon(a1a1, &ab, seed);
  CHECK(um.root_multiplicity == 2);
  CHECK(um.predicted_dim_F == 3);
  CHECK(upsilon_tangent_dim(ab, um).rank == 3);

  auto origin = correspondence(RootSystem::build("A2"), nullptr, Polytope::hull({rv({0, 0, 0})}));
  REQUIRE(origin.size() == 1);
  CHECK(origin[0].sigma_perp_basis.size() == 2);
  CHECK(origin[0].predicted_dim_F == 0);
  CHECK_FALSE(origin[0].proper);

  CHECK_THROWS_AS(upsilon(a1a1, &ab, UpsilonRecord{}), std::exception);
  const auto s3 = MatrixModel::make("sym3");
  CHECK_THROWS_AS(correspondence(a1a1, &s3, square()), InputError);
}

TEST_CASE("property: orbit counts, equivariance and predicted dimension bounds") {
  std::mt19937_64 rng(20240607);
  for (const char* label : {"A1xA1", "A2", "B2", "A1", "C2"}) {
    const auto rs = RootSystem::build(label);
    for (int trial = 0; trial < 4; ++trial) {
      const Polytope p = random_invariant(rs, rng, 1 + trial % 2, 5);
      const auto faces = face_lattice(p);
      const auto recs = correspondence(rs, nullptr, p);
      int total = 0;
      for (const auto& r : recs) {
        total += r.orbit_size;
        CHECK(r.sigma.dim + r.sigma_perp_basis.size() == rs.rank());
        CHECK(r.predicted_dim_F >= r.sigma.dim);
        CHECK(r.exposed_in_E == r.exposed_in_P);
        CHECK(r.proper == (r.sigma.kind != FaceKind::whole));
        bool nonvanishing = false;
        for (int a : r.centralizer_roots)
          if (sign(dot(rs.roots()[a], r.generic_witnesses.front())) != 0) nonvanishing = true;
        CHECK((r.predicted_dim_F == r.sigma.dim) == !nonvanishing);
      }
      CHECK(total == static_cast<int>(faces.size()));

      // roots vanishing on (w sigma)_perp are w applied to those of sigma_perp.
      for (const auto& f : faces) {
        UpsilonRecord in;
        in.sigma = f;
        const auto base = upsilon(rs, nullptr, in);
        for (const auto& w : rs.weyl()) {
          std::vector<int> ids;
          for (int v : f.vertex_ids) {
            const RVec img = w.apply(p.vertices()[v]);
            ids.push_back(static_cast<int>(std::find(p.vertices().begin(), p.vertices().end(), img) - p.vertices().begin()));
          }
          UpsilonRecord moved;
          moved.sigma = p.face(ids);
          const auto img = upsilon(rs, nullptr, moved);
          std::set<int> expected;
          for (int a : base.centralizer_roots) expected.insert(rs.root_index(w.apply(rs.roots()[a])));
          CHECK(std::set<int>(img.centralizer_roots.begin(), img.centralizer_roots.end()) == expected);
          CHECK(img.predicted_dim_F == base.predicted_dim_F);
        }
      }
    }
  }
}

TEST_CASE("property: predicted dimension matches the tangent-rank oracle") {
  std::mt19937_64 rng(99);
  for (const char* name : {"sym3", "sym4", "a1xa1", "sym2"}) {
    const auto model = MatrixModel::make(name);
    const auto& rs = model.root_system();
    for (int trial = 0; trial < 3; ++trial) {
      const Polytope p = random_invariant(rs, rng, 1 + trial % 2, 4);
      for (const auto& r : correspondence(rs, &model, p)) {
        const auto t = upsilon_tangent_dim(model, r);
        CHECK(t.stable);
        CHECK_MESSAGE(t.rank == r.predicted_dim_F, name << " face " << r.sigma.id);
      }
    }
  }
  // sym5: one regular and one degenerate dominant spectrum.
  const auto s5 = MatrixModel::make("sym5");
  for (const RVec& lam : {rv({4, 2, 0, -1, -5}), rv({3, 3, 0, -3, -3})}) {
    const Polytope p = Polytope::hull(s5.root_system().weyl_orbit(lam));
    for (const auto& r : correspondence(s5.root_system(), &s5, p)) CHECK(upsilon_tangent_dim(s5, r).rank == r.predicted_dim_F);
  }
  // Stadium over the A1xA1 model: segments and junctions, arcs as parametric families.
  const auto ab = MatrixModel::make("a1xa1");
  for (const auto& r : correspondence(ab.root_system(), &ab, stadium()))
    CHECK_MESSAGE(upsilon_tangent_dim(ab, r).rank == r.predicted_dim_F, r.sigma.id);
}

TEST_CASE("exposed_equivalence_check examples") {
  const auto ab = MatrixModel::make("a1xa1");
  const auto a1a1 = RootSystem::build("A1xA1");
  auto sq = exposed_equivalence_check(a1a1, ab, square(), 500, 7);
  CHECK(sq.passed);
  for (const auto& c : sq.checks) {
    CHECK(c.exposed_in_E);
    CHECK_FALSE(c.counterexample);
    CHECK(c.max_excess <= 1e-9);
    CHECK(c.max_bracket <= 1e-9);
    CHECK(c.max_projection_gap <= 1e-9);
  }

  auto st = exposed_equivalence_check(a1a1, ab, stadium(), 500, 7);
  CHECK(st.passed);
  int flagged = 0;
  for (const auto& c : st.checks)
    if (!c.exposed_in_E) {
      ++flagged;
      CHECK_FALSE(c.exposed_in_P);
      CHECK(c.note.find("touches 2 generators") != std::string::npos);
    }
  CHECK(flagged == 1);

  const auto s3 = MatrixModel::make("sym3");
  const Polytope simplex = Polytope::hull({rv({2, -1, -1}), rv({-1, 2, -1}), rv({-1, -1, 2})});
  auto sx = exposed_equivalence_check(s3.root_system(), s3, simplex, 500, 11);
  CHECK(sx.passed);
  for (const auto& c : sx.checks) CHECK(c.exposed_in_E);

  auto none = exposed_equivalence_check(a1a1, ab, square(), 0, 7);
  CHECK_FALSE(none.passed);
  bool inconclusive = false;
  for (const auto& c : none.checks) inconclusive = inconclusive || c.inconclusive;
  CHECK(inconclusive);
}

TEST_CASE("exposed_equivalence_check: serial and parallel agree") {
  const auto s3 = MatrixModel::make("sym3");
  const Polytope hex = Polytope::hull(s3.root_system().weyl_orbit(rv({3, 1, -4})));
  auto a = exposed_equivalence_check(s3.root_system(), s3, hex, 300, 5, 1e-9, ExecPolicy::serial);
  auto b = exposed_equivalence_check(s3.root_system(), s3, hex, 300, 5, 1e-9, ExecPolicy::parallel);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].max_excess == b.checks[i].max_excess);
    CHECK(a.checks[i].max_projection_gap == b.checks[i].max_projection_gap);
    CHECK(a.checks[i].max_bracket == b.checks[i].max_bracket);
  }
  CHECK(a.passed);
}

TEST_CASE("abelian_witness examples") {
  const auto ab = MatrixModel::make("a1xa1");
  const Polytope sq = square();
  const Body body = sq;
  const FaceRecord whole = face_lattice(sq).front();

  auto trivial = abelian_witness(ab, body, {whole});
  CHECK(trivial.basis.empty());

  const FaceRecord vertex = sq.face({0});
  const FaceRecord edge = sq.face({0, 1});
  auto w = abelian_witness(ab, body, {vertex, edge, whole});
  CHECK(w.basis.size() == 2);
  CHECK(w.max_bracket <= 1e-12);
  CHECK(w.max_witness_bracket <= 1e-12);
  CHECK(numeric_rank([&] {
          Mat m(ab.p_dim(), 2);
          for (int j = 0; j < 2; ++j) m.col(j) = ab.p_coords(w.basis[j]);
          return m;
        }()) == 2);

  CHECK_THROWS_AS(abelian_witness(ab, body, {vertex, whole}), InputError);
  CHECK_THROWS_AS(abelian_witness(ab, body, {vertex, sq.face({2, 3}), whole}), InputError);
  CHECK_THROWS_AS(abelian_witness(ab, body, {vertex, edge}), InputError);

  // Segment in the line, A1 model.
  const auto s2 = MatrixModel::make("sym2");
  const Polytope seg = Polytope::hull({rv({-1}), rv({1})});
  auto sw = abelian_witness(s2, seg, {seg.face({1}), face_lattice(seg).front()});
  CHECK(sw.basis.size() == 1);

  // Stadium: junction inside a segment inside the body.
  const Body st = stadium();
  const auto faces = all_faces(st);
  const FaceRecord* junction = nullptr;
  const FaceRecord* segment = nullptr;
  for (const auto& f : faces)
    if (f.junction && junction == nullptr) junction = &f;
  for (const auto& f : faces)
    if (f.kind == FaceKind::segment && face_contains(st, f, *junction)) segment = &f;
  REQUIRE(junction != nullptr);
  REQUIRE(segment != nullptr);
  auto jw = abelian_witness(ab, st, {*junction, *segment, faces.front()});
  CHECK(jw.basis.size() == 2);
  CHECK(jw.max_bracket <= 1e-12);
  CHECK(jw.max_witness_bracket <= 1e-12);
}

TEST_CASE("face_contains on the stadium") {
  const Body st = stadium();
  const auto faces = all_faces(st);
  for (const auto& f : faces) {
    CHECK(face_contains(st, faces.front(), f));
    CHECK(face_contains(st, f, f));
    if (f.junction) {
      int segs = 0;
      for (const auto& g : faces)
        if (g.kind == FaceKind::segment && face_contains(st, g, f)) ++segs;
      CHECK(segs == 1);
    }
  }
}
