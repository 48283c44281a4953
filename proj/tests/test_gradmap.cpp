#include "doctest.h"

#include "polarfaces/errors.hpp"
#include "polarfaces/gradmap.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace polar;

namespace {

RVec rv(std::initializer_list<int> xs) {
  RVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("momentum_polytope examples") {
  const auto m3 = ProjectiveModel::make("proj3");
  const auto tri = momentum_polytope(m3.fixed_points());
  CHECK(tri.dim() == 2);
  CHECK(tri.vertices().size() == 3);
  CHECK(tri.vertices()[0] == RVec{Rational(2, 3), Rational(-1, 3), Rational(-1, 3)});

  CHECK(momentum_polytope({{rv({1, 2})}, {}}).vertices().size() == 1);
  auto rect = momentum_polytope({{rv({1, 2}), rv({1, -2}), rv({-1, 2}), rv({-1, -2})}, {}});
  CHECK(rect.vertices().size() == 4);
  CHECK(rect.facets().size() == 4);

  CHECK_THROWS_AS(momentum_polytope({}), InputError);
  CHECK_THROWS_AS(momentum_polytope({{rv({1, 2}), rv({1})}, {}}), InputError);
}

TEST_CASE("projective model basics") {
  CHECK_THROWS_AS(ProjectiveModel::make("proj2"), InputError);
  CHECK_THROWS_AS(ProjectiveModel::make("grass4"), InputError);
  CHECK(ProjectiveModel::make("PROJ(5)").n() == 5);
  const auto m = ProjectiveModel::make("proj4");
  std::mt19937_64 rng(3);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Vec v = m.sample_point(s);
    CHECK(std::abs(m.mu(v).trace()) < 1e-14);
    // K-equivariance of mu.
    const Mat k = m.group().sample_K(s + 100);
    CHECK((m.mu(k * v) - k * m.mu(v) * k.transpose()).norm() < 1e-13);
    // mu lands in the simplex: mu_a = |v_i|^2 - 1/n.
    for (double c : m.mu_a(v)) CHECK(c >= -0.25 - 1e-15);
  }
  CHECK(line_distance(vec({1, 0, 0, 0}), vec({-2, 0, 0, 0})) == 0.0);
  CHECK(line_distance(vec({1, 0, 0, 0}), vec({0, 1, 0, 0})) == doctest::Approx(1.0));
}

TEST_CASE("face_max_set examples") {
  const auto m = ProjectiveModel::make("proj3");
  auto a = face_max_set(m, rv({1, 0, -1}));
  CHECK(a.coordinates == std::vector<int>{0});
  CHECK(a.max_value == 1);
  auto z = face_max_set(m, rv({0, 0, 0}));
  CHECK(z.whole);
  CHECK(z.coordinates.size() == 3);
  auto b = face_max_set(m, rv({1, 1, -2}));
  CHECK(b.coordinates == std::vector<int>{0, 1});
  CHECK(b.max_value == 1);
}

TEST_CASE("face_set_check on every face of the n=3 simplex") {
  const auto m = ProjectiveModel::make("proj3");
  const auto tri = momentum_polytope(m.fixed_points());
  const auto rs = m.group().root_system();
  for (const auto& f : face_lattice(tri)) {
    const auto d = parabolic_of_face(rs, tri, f);
    auto rep = face_set_check(m, d.beta, 2000, 17);
    CHECK_MESSAGE(rep.passed, f.id);
    CHECK(rep.coordinates == face_coordinates(m, tri, f));
    CHECK(rep.hull_vertices == rep.coordinates);
  }
  // serial and parallel agree
  auto s = face_set_check(m, rv({2, -1, -1}), 500, 4, 1e-9, ExecPolicy::serial);
  auto p = face_set_check(m, rv({2, -1, -1}), 500, 4, 1e-9, ExecPolicy::parallel);
  CHECK(s.max_excess == p.max_excess);
  CHECK(s.maximizers == p.maximizers);
}

TEST_CASE("parabolic_of_face examples") {
  const auto m = ProjectiveModel::make("proj3");
  const auto tri = momentum_polytope(m.fixed_points());
  const auto& rs = m.group().root_system();
  const auto d = parabolic_of_face(rs, tri, tri.face({0}));
  CHECK(d.beta == rv({2, -1, -1}));
  CHECK(d.roots_pos.size() == 2);
  for (int a : d.roots_pos) CHECK(rs.roots()[a][0] == 1);
  CHECK(d.roots_zero.size() == 2);
  for (int a : d.roots_zero) CHECK(rs.roots()[a][0] == 0);
  CHECK(d.blocks == std::vector<std::vector<int>>{{0}, {1, 2}});

  const auto whole = parabolic_of_face(rs, tri, face_lattice(tri).front());
  CHECK(whole.improper);
  CHECK(whole.roots_zero.size() == rs.roots().size());

  const auto edge = parabolic_of_face(rs, tri, tri.face({0, 1}));
  CHECK(edge.blocks == std::vector<std::vector<int>>{{0, 1}, {2}});

  // Partition invariants on random betas.
  const auto r4 = RootSystem::build("A3");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dist(-3, 3);
  for (int t = 0; t < 50; ++t) {
    RVec beta{dist(rng), dist(rng), dist(rng), dist(rng)};
    const auto p = parabolic_of_beta(r4, beta);
    CHECK(p.roots_pos.size() + p.roots_zero.size() + p.roots_neg.size() == r4.roots().size());
    CHECK(p.roots_pos.size() == p.roots_neg.size());
    for (int a : p.roots_pos) CHECK(std::count(p.roots_neg.begin(), p.roots_neg.end(), r4.root_index(-1 * r4.roots()[a])) == 1);
  }
}

TEST_CASE("levi_projection examples") {
  const auto m = ProjectiveModel::make("proj3");
  const auto d = parabolic_of_beta(m.group().root_system(), rv({2, -1, -1}));
  Mat diag = Mat::Zero(3, 3);
  diag(0, 0) = 3;
  diag.block(1, 1, 2, 2) << 1, 2, -1, 4;
  CHECK((levi_projection(d, diag) - diag).norm() == 0.0);

  Mat nil = Mat::Identity(3, 3);
  nil(0, 1) = 5;
  nil(0, 2) = -2;
  CHECK((levi_projection(d, nil) - Mat::Identity(3, 3)).norm() == 0.0);

  Mat g = diag;
  g(0, 1) = 7;
  g(0, 2) = 1;
  diag(0, 0) = 2;
  g(0, 0) = 2;
  CHECK((levi_projection(d, g) - diag).norm() == 0.0);

  Mat bad = Mat::Identity(3, 3);
  bad(1, 0) = 1e-6;
  CHECK_THROWS_AS(levi_projection(d, bad), InputError);
  CHECK_NOTHROW(levi_projection(d, bad.transpose()));
  CHECK_NOTHROW(levi_projection(d, bad, Side::minus));

  // Multiplicative modulo the unipotent radical.
  std::mt19937_64 rng(8);
  std::normal_distribution<double> gd(0, 1);
  for (int t = 0; t < 20; ++t) {
    Mat a = Mat::Zero(3, 3), b = Mat::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!(i > 0 && j == 0)) {
          a(i, j) = gd(rng);
          b(i, j) = gd(rng);
        }
    CHECK((levi_projection(d, a * b) - levi_projection(d, a) * levi_projection(d, b)).norm() < 1e-12);
  }
}

TEST_CASE("limit_map examples") {
  const auto m = ProjectiveModel::make("proj3");
  const RVec beta = rv({2, -1, -1});
  auto a = limit_map(m, beta, vec({1, 1, 1}));
  CHECK(a.support == std::vector<int>{0});
  CHECK(a.in_domain);
  CHECK(line_distance(a.point, vec({1, 0, 0})) == 0.0);

  auto b = limit_map(m, beta, vec({0, 1, 1}));
  CHECK_FALSE(b.in_domain);
  CHECK(b.support == std::vector<int>{1, 2});
  CHECK(line_distance(b.point, vec({0, 1, 1})) < 1e-15);

  auto c = limit_map(m, beta, vec({-3, 0, 0}));
  CHECK(c.in_domain);
  CHECK(line_distance(c.point, vec({1, 0, 0})) == 0.0);
}

TEST_CASE("retraction_check examples") {
  const auto m = ProjectiveModel::make("proj3");
  auto rep = retraction_check(m, {0}, {rv({2, -1, -1}), rv({3, -1, -2})}, 1000, 21);
  CHECK(rep.passed);
  CHECK(rep.beta_fixed == std::vector<bool>{true, false});
  CHECK(rep.independence_gap == 0.0);

  auto two = retraction_check(m, {0, 1}, {rv({1, 1, -2}), rv({2, 2, -4})}, 500, 2);
  CHECK(two.passed);
  CHECK(two.equivariance_gap <= 1e-8);

  CHECK_THROWS_AS(retraction_check(m, {0}, {rv({2, -1, -1})}, 10, 1), InputError);
  CHECK_THROWS_AS(retraction_check(m, {0}, {rv({2, -1, -1}), rv({2, -1, -1})}, 10, 1), InputError);
  // A beta that exposes another face fails the check.
  auto wrong = retraction_check(m, {0}, {rv({2, -1, -1}), rv({-1, 2, -1})}, 50, 1);
  CHECK_FALSE(wrong.passed);

  auto s = retraction_check(m, {0}, {rv({2, -1, -1}), rv({4, -2, -2})}, 300, 9, 1e-8, ExecPolicy::serial);
  auto p = retraction_check(m, {0}, {rv({2, -1, -1}), rv({4, -2, -2})}, 300, 9, 1e-8, ExecPolicy::parallel);
  CHECK(s.equivariance_gap == p.equivariance_gap);
  CHECK(s.witness_index == p.witness_index);
}

TEST_CASE("parabolic_oracle on the n=3 simplex") {
  const auto m = ProjectiveModel::make("proj3");
  const auto tri = momentum_polytope(m.fixed_points());
  for (const auto& f : face_lattice(tri)) {
    const auto d = parabolic_of_face(m.group().root_system(), tri, f);
    const auto rep = parabolic_oracle(m, d, 300, 13);
    CHECK_MESSAGE(rep.passed, f.id);
    if (!d.improper) {
      CHECK(rep.triangular > 0);
      CHECK(rep.triangular < rep.group_samples);
      CHECK(rep.block_orthogonal > 0);
      CHECK(rep.block_orthogonal < rep.orthogonal_samples);
    }
  }
}

TEST_CASE("momentum polytopes of the projective models are simplices with exposed faces") {
  for (int n = 3; n <= 6; ++n) {
    const ProjectiveModel m(n);
    const auto P = momentum_polytope(m.fixed_points());
    CHECK(P.vertices().size() == static_cast<std::size_t>(n));
    CHECK(P.dim() == n - 1);
    const auto faces = face_lattice(P);
    CHECK(faces.size() == (1u << n) - 1);
    const Body body = P;
    for (const auto& f : faces) CHECK(exposed_test(body, f));
  }
}
