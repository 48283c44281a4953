#include "doctest.h"

#include "polarfaces/errors.hpp"
#include "polarfaces/rootsys.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace polar;

namespace {

RVec rv(std::initializer_list<int> xs) {
  RVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

std::set<RVec> as_set(const std::vector<RVec>& vs) { return {vs.begin(), vs.end()}; }

RVec random_vector(std::mt19937_64& rng, const RootSystem& rs) {
  std::uniform_int_distribution<int> d(-6, 6);
  RVec x(rs.ambient_dim());
  for (auto& c : x) c = d(rng);
  return rs.project_to_a(x);
}

}  // namespace

TEST_CASE("A1xA1 has four roots and the axis reflections") {
  auto rs = RootSystem::build("A1xA1");
  CHECK(rs.ambient_dim() == 2);
  CHECK(rs.rank() == 2);
  CHECK(rs.roots().size() == 4);
  CHECK(rs.weyl_order() == 4);
  CHECK(as_set(rs.roots()) == std::set<RVec>{rv({2, 0}), rv({-2, 0}), rv({0, 2}), rv({0, -2})});
  for (const auto& w : rs.weyl()) {
    CHECK(w.perm == std::vector<int>{0, 1});
  }
  CHECK(rs.weyl().front().is_identity());
}

TEST_CASE("A1 acts on the line by +-1") {
  auto rs = RootSystem::build("A1");
  CHECK(rs.ambient_dim() == 1);
  REQUIRE(rs.weyl_order() == 2);
  CHECK(rs.weyl()[0].is_identity());
  CHECK(rs.weyl()[1].apply(rv({3})) == rv({-3}));
}

TEST_CASE("A2 has six roots and six Weyl elements") {
  auto rs = RootSystem::build("A2");
  CHECK(rs.roots().size() == 6);
  CHECK(rs.weyl_order() == 6);
  CHECK(rs.rank() == 2);
  CHECK(rs.in_a(rv({1, 0, -1})));
  CHECK_FALSE(rs.in_a(rv({1, 0, 0})));
}

TEST_CASE("family sizes") {
  struct Case {
    const char* label;
    std::size_t roots;
    std::size_t order;
  };
  for (auto c : {Case{"B2", 8, 8}, Case{"C3", 18, 48}, Case{"D3", 12, 24}, Case{"D2", 4, 4}, Case{"A3", 12, 24},
                 Case{"B3xA1", 20, 96}}) {
    auto rs = RootSystem::build(c.label);
    CAPTURE(c.label);
    CHECK(rs.roots().size() == c.roots);
    CHECK(rs.weyl_order() == c.order);
  }
}

TEST_CASE("label parsing and rejection") {
  CHECK(RootSystem::build("a1*A1").label() == "A1xA1");
  CHECK(RootSystem::build("A1\xC3\x97" "A2").label() == "A1xA2");
  auto code_of = [](const char* s) {
    try {
      RootSystem::build(s);
    } catch (const InputError& e) {
      return e.code();
    }
    return ErrorCode::malformed_input;
  };
  CHECK(code_of("E6") == ErrorCode::unsupported_type);
  CHECK(code_of("G2") == ErrorCode::unsupported_type);
  CHECK(code_of("D1") == ErrorCode::invalid_argument);
  CHECK(code_of("A0") == ErrorCode::invalid_argument);
  CHECK(code_of("B5xB5") == ErrorCode::invalid_argument);     // |W| too large
  CHECK(code_of("A5xA5xA1") == ErrorCode::invalid_argument);  // ambient 13
  CHECK_THROWS_AS(RootSystem::build("Ax"), InputError);
}

TEST_CASE("weyl_orbit examples") {
  auto rs = RootSystem::build("A1xA1");
  CHECK(as_set(rs.weyl_orbit(rv({1, 2}))) == std::set<RVec>{rv({1, 2}), rv({-1, 2}), rv({1, -2}), rv({-1, -2})});
  CHECK(rs.weyl_orbit(rv({0, 0})).size() == 1);
  auto a2 = RootSystem::build("A2");
  CHECK(a2.weyl_orbit(rv({3, 1, -4})).size() == 6);
  CHECK_THROWS_AS(rs.weyl_orbit(rv({1, 2, 3})), InputError);
}

TEST_CASE("stabilizer examples") {
  auto rs = RootSystem::build("A1xA1");
  RVec zero = rv({0, 0});
  CHECK(rs.stabilizer(std::span(&zero, 1)).size() == 4);
  RVec e1 = rv({1, 0});
  auto st = rs.stabilizer(std::span(&e1, 1));
  REQUIRE(st.size() == 2);
  CHECK(st[0].is_identity());
  CHECK(st[1].sign == std::vector<int>{1, -1});
  auto a2 = RootSystem::build("A2");
  RVec g = rv({3, 1, -4});
  CHECK(a2.stabilizer(std::span(&g, 1)).size() == 1);
}

TEST_CASE("roots_vanishing_on examples") {
  auto rs = RootSystem::build("A1xA1");
  CHECK(rs.roots_vanishing_on(std::span<const RVec>{}).size() == 4);
  RVec e2 = rv({0, 1});
  auto idx = rs.roots_vanishing_on(std::span(&e2, 1));
  std::set<RVec> got;
  for (int i : idx) got.insert(rs.roots()[i]);
  CHECK(got == std::set<RVec>{rv({2, 0}), rv({-2, 0})});
  auto a2 = RootSystem::build("A2");
  CHECK(a2.roots_vanishing_on(std::span(a2.a_basis())).empty());
}

TEST_CASE("dominant_representative examples") {
  auto rs = RootSystem::build("A1xA1");
  auto [y, w] = rs.dominant_representative(rv({-1, -2}));
  CHECK(y == rv({1, 2}));
  CHECK(w.matrix() == std::vector<std::vector<int>>{{-1, 0}, {0, -1}});
  auto [y2, w2] = rs.dominant_representative(rv({1, 2}));
  CHECK(y2 == rv({1, 2}));
  CHECK(w2.is_identity());
  auto a2 = RootSystem::build("A2");
  auto [y3, w3] = a2.dominant_representative(rv({-1, 3, -2}));
  CHECK(y3 == rv({3, -1, -2}));
  CHECK(w3.apply(rv({-1, 3, -2})) == y3);
}

TEST_CASE("fundamental weights pair with simple coroots to the identity") {
  for (const char* label : {"A1", "A2", "A3", "B3", "C3", "D4", "A1xA1", "A2xB2"}) {
    auto rs = RootSystem::build(label);
    CAPTURE(label);
    const auto& simple = rs.simple_roots();
    REQUIRE(rs.fundamental_weights().size() == simple.size());
    for (std::size_t i = 0; i < simple.size(); ++i) {
      for (std::size_t j = 0; j < simple.size(); ++j) {
        Rational pairing = Rational(2) * dot(rs.fundamental_weights()[i], simple[j]) / norm2(simple[j]);
        CHECK(pairing == Rational(i == j ? 1 : 0));
      }
      CHECK(rs.in_a(rs.fundamental_weights()[i]));
    }
  }
}

TEST_CASE("property: reflections permute roots, orbit-stabilizer, subsystems, idempotent dominance") {
  std::mt19937_64 rng(20240611);
  for (const char* label : {"A1", "A1xA1", "A2", "A3", "B2", "B3", "C2", "C3", "D3", "D4", "A2xA1"}) {
    auto rs = RootSystem::build(label);
    CAPTURE(label);
    const auto roots = as_set(rs.roots());
    for (const auto& r : rs.roots()) CHECK(roots.count(-r) == 1);
    for (const auto& a : rs.roots()) {
      auto s = rs.reflection(a);
      std::set<RVec> img;
      for (const auto& r : rs.roots()) img.insert(s.apply(r));
      CHECK(img == roots);
      CHECK(s.determinant() == -1);
    }
    for (const auto& w : rs.weyl()) {
      std::set<RVec> img;
      for (const auto& r : rs.roots()) img.insert(w.apply(r));
      CHECK(img == roots);
      CHECK(w.compose(w.inverse()).is_identity());
    }
    for (int t = 0; t < 8; ++t) {
      RVec x = random_vector(rng, rs);
      auto orbit = rs.weyl_orbit(x);
      CHECK(orbit.size() * rs.stabilizer(std::span(&x, 1)).size() == rs.weyl_order());

      auto [d, w] = rs.dominant_representative(x);
      CHECK(rs.is_dominant(d));
      CHECK(w.apply(x) == d);
      CHECK(std::count_if(orbit.begin(), orbit.end(), [&](const RVec& p) { return rs.is_dominant(p); }) == 1);
      auto [d2, w2] = rs.dominant_representative(d);
      CHECK(d2 == d);
      CHECK(w2.is_identity());

      auto idx = rs.roots_vanishing_on(std::span(&x, 1));
      std::set<RVec> sub;
      for (int i : idx) sub.insert(rs.roots()[i]);
      for (const auto& a : sub) {
        CHECK(sub.count(-a) == 1);
        auto s = rs.reflection(a);
        for (const auto& b : sub) CHECK(sub.count(s.apply(b)) == 1);
      }
    }
  }
}
