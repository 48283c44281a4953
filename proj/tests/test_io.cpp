#include "doctest.h"

#include "polarfaces/errors.hpp"
#include "polarfaces/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace polar;

namespace {

int count(const std::string& s, const std::string& what) {
  int n = 0;
  for (auto pos = s.find(what); pos != std::string::npos; pos = s.find(what, pos + 1)) ++n;
  return n;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.code();
  }
  FAIL("expected an InputError");
  return ErrorCode::malformed_input;
}

}  // namespace

TEST_CASE("rationals from JSON") {
  CHECK(rational_from_json(Json(3)) == 3);
  CHECK(rational_from_json(Json(-0.25)) == Rational(-1, 4));
  CHECK(rational_from_json(Json("2/6")) == Rational(1, 3));
  CHECK(rational_from_json(Json("0.1")) == Rational(1, 10));
  CHECK(code_of([] { rational_from_json(Json(1e-30)); }) == ErrorCode::malformed_input);
  CHECK(code_of([] { rational_from_json(Json("x")); }) == ErrorCode::malformed_input);
  CHECK(code_of([] { rational_from_json(Json::array()); }) == ErrorCode::malformed_input);
  CHECK(to_json(Rational(1, 3)) == Json("1/3"));
  CHECK(to_json(Rational(-4)) == Json(-4));
}

TEST_CASE("bodies from JSON") {
  auto sq = body_from_json(Json::parse(R"({"type":"polytope","vertices":[[1,1],[1,-1],[-1,1],[-1,-1],[0,0]]})"));
  CHECK(std::get<Polytope>(sq).vertices().size() == 4);
  auto st = body_from_json(
      Json::parse(R"({"type":"diskhull2d","points":[],"disks":[{"center":[-1,0],"r":1},{"center":[1,0],"r":"1"}]})"));
  CHECK(std::get<DiskHull2D>(st).essential().size() == 2);
  CHECK(code_of([] { body_from_json(Json::parse(R"({"type":"ellipsoid"})")); }) == ErrorCode::unsupported_type);
  CHECK(code_of([] { body_from_json(Json::parse(R"({"vertices":[[1]]})")); }) == ErrorCode::malformed_input);
  CHECK(code_of([] { body_from_json(Json::parse(R"({"type":"polytope","vertices":[[1,2],[1]]})")); }) ==
        ErrorCode::dimension_mismatch);
  CHECK(code_of([] { body_from_json(Json::parse(R"({"type":"diskhull2d","points":[[1,2,3]]})")); }) ==
        ErrorCode::dimension_mismatch);

  const auto path = std::filesystem::temp_directory_path() / "polarfaces_bad.json";
  std::ofstream(path) << "{\"type\": ";
  CHECK(code_of([&] { read_json_file(path); }) == ErrorCode::malformed_input);
  std::filesystem::remove(path);
}

TEST_CASE("fixed points from JSON") {
  auto d = fixed_points_from_json(Json::parse(R"({"values":[[1,2],[-1,-2]],"labels":["a","b"]})"));
  CHECK(d.values.size() == 2);
  CHECK(d.labels == std::vector<std::string>{"a", "b"});
  CHECK(code_of([] { fixed_points_from_json(Json::parse(R"({"values":[]})")); }) == ErrorCode::malformed_input);
  CHECK(code_of([] { fixed_points_from_json(Json::parse(R"({"values":[[1]],"labels":["a","b"]})")); }) ==
        ErrorCode::malformed_input);
}

TEST_CASE("root system serialization") {
  const auto j = to_json(RootSystem::build("A1xA1"));
  CHECK(j["factors"].size() == 2);
  CHECK(j["factors"][0]["family"] == "A");
  CHECK(j["roots"].size() == 4);
  CHECK(j["positive"].size() == 2);
}

TEST_CASE("render_svg marks exactly the non-exposed points") {
  const Body stadium = DiskHull2D({}, {{RVec{-1, 0}, 1}, {RVec{1, 0}, 1}});
  const auto s1 = render_svg(stadium, all_faces(stadium));
  CHECK(count(s1, "class=\"non-exposed\"") == 4);
  CHECK(s1 == render_svg(stadium, all_faces(stadium)));

  const Body square = Polytope::hull({RVec{1, 1}, RVec{1, -1}, RVec{-1, 1}, RVec{-1, -1}});
  CHECK(count(render_svg(square, all_faces(square)), "class=\"non-exposed\"") == 0);

  const Body dp = DiskHull2D({RVec{3, 0}}, {{RVec{0, 0}, 1}});
  CHECK(count(render_svg(dp, all_faces(dp)), "class=\"non-exposed\"") == 2);

  const Body cube = Polytope::hull({RVec{0, 0, 0}, RVec{1, 0, 0}, RVec{0, 1, 0}, RVec{0, 0, 1}});
  CHECK(code_of([&] { render_svg(cube, {}); }) == ErrorCode::dimension_mismatch);
}
