#pragma once

// JSON input formats and the SVG figure.
//
//   body:   {"type": "polytope", "vertices": [[..], ..]}
//           {"type": "diskhull2d", "points": [[x, y], ..], "disks": [{"center": [x, y], "r": r}, ..]}
//   fixed points: {"values": [[..], ..], "labels": ["..", ..]}
//
// Coordinates are integers, decimals or "p/q" strings and are read exactly.

#include "polarfaces/convexcore.hpp"
#include "polarfaces/gradmap.hpp"
#include "polarfaces/rootsys.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace polar {

using Json = nlohmann::ordered_json;

Rational rational_from_json(const Json& j);
RVec rvec_from_json(const Json& j);
Json to_json(const Rational& q);
Json to_json(const RVec& v);
Json to_json(const SurdVec& v);

Body body_from_json(const Json& j);
FixedPointData fixed_points_from_json(const Json& j);
/// Reads a JSON file, reporting parse failures as InputError(malformed_input).
Json read_json_file(const std::filesystem::path& path);

/// {factors: [{family, rank}], roots: [[..]], positive: [..]}.
Json to_json(const RootSystem& rs);
Json to_json(const FaceRecord& f);

/// Boundary of a planar body with its non-exposed points marked. Byte-stable.
/// Throws InputError(dimension_mismatch) for bodies outside the plane.
std::string render_svg(const Body& body, const std::vector<FaceRecord>& faces);

}  // namespace polar
