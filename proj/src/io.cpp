#include "polarfaces/io.hpp"

#include "polarfaces/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <cstdio>
#include <iterator>
#include <fstream>
#include <numbers>
#include <sstream>

namespace polar {

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_number_float()) {
    const std::string text = j.dump();
    if (text.find_first_of("eE") != std::string::npos)
      throw InputError(ErrorCode::malformed_input, "number " + text + " uses an exponent; write it as a \"p/q\" string");
    return parse_rational(text);
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError(ErrorCode::malformed_input, "expected a number or a \"p/q\" string, got " + j.dump());
}

RVec rvec_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError(ErrorCode::malformed_input, "expected a nonempty array of coordinates");
  RVec v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Json to_json(const Rational& q) {
  if (denominator(q) == 1) {
    const Integer num = numerator(q);
    if (abs(num) < Integer(1) << 52) return Json(static_cast<long long>(num));
  }
  return Json(to_string(q));
}

Json to_json(const RVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const SurdVec& v) {
  if (auto r = simplify(v).rational()) return to_json(*r);
  return Json{{"a", to_json(v.a)}, {"b", to_json(v.b)}, {"sqrt", to_json(v.d)}};
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(ErrorCode::malformed_input, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<RVec> points_from_json(const Json& j) {
  if (!j.is_array()) throw InputError(ErrorCode::malformed_input, "expected an array of points");
  std::vector<RVec> pts;
  for (const auto& p : j) pts.push_back(rvec_from_json(p));
  for (const auto& p : pts)
    if (p.size() != pts.front().size()) throw InputError(ErrorCode::dimension_mismatch, "points of different dimensions");
  return pts;
}

}  // namespace

Body body_from_json(const Json& j) {
  const auto type = field(j, "type");
  if (!type.is_string()) throw InputError(ErrorCode::malformed_input, "body type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "polytope") {
    auto pts = points_from_json(field(j, "vertices"));
    if (pts.empty()) throw InputError(ErrorCode::malformed_input, "polytope needs at least one vertex");
    return Polytope::hull(std::move(pts));
  }
  if (t == "diskhull2d") {
    std::vector<RVec> pts;
    if (j.contains("points")) pts = points_from_json(j.at("points"));
    std::vector<Disk> disks;
    if (j.contains("disks")) {
      if (!j.at("disks").is_array()) throw InputError(ErrorCode::malformed_input, "disks must be an array");
      for (const auto& d : j.at("disks")) disks.push_back({rvec_from_json(field(d, "center")), rational_from_json(field(d, "r"))});
    }
    for (const auto& p : pts)
      if (p.size() != 2) throw InputError(ErrorCode::dimension_mismatch, "disk hull points must be planar");
    for (const auto& d : disks)
      if (d.center.size() != 2) throw InputError(ErrorCode::dimension_mismatch, "disk centers must be planar");
    return DiskHull2D(std::move(pts), std::move(disks));
  }
  throw InputError(ErrorCode::unsupported_type, "unknown body type '" + t + "'");
}

FixedPointData fixed_points_from_json(const Json& j) {
  FixedPointData d;
  d.values = points_from_json(field(j, "values"));
  if (j.contains("labels")) {
    if (!j.at("labels").is_array()) throw InputError(ErrorCode::malformed_input, "labels must be an array");
    for (const auto& l : j.at("labels")) {
      if (!l.is_string()) throw InputError(ErrorCode::malformed_input, "labels must be strings");
      d.labels.push_back(l.get<std::string>());
    }
  }
  if (d.values.empty()) throw InputError(ErrorCode::malformed_input, "fixed-point data is empty");
  if (!d.labels.empty() && d.labels.size() != d.values.size())
    throw InputError(ErrorCode::malformed_input, "labels and values differ in length");
  return d;
}

namespace {

// Parsed doubles lose their spelling, so exponents are caught on the raw text.
void reject_exponents(const std::string& text, const std::string& where) {
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if ((c == 'e' || c == 'E') && i > 0 && (std::isdigit(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '.')) {
      throw InputError(ErrorCode::malformed_input, where + ": numbers with exponents are not accepted; write them as \"p/q\" strings");
    }
  }
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(ErrorCode::malformed_input, "cannot read " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  reject_exponents(text, path.string());
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(ErrorCode::malformed_input, path.string() + ": " + e.what());
  }
}

Json to_json(const RootSystem& rs) {
  Json factors = Json::array();
  for (const auto& f : rs.factors()) factors.push_back({{"family", std::string(1, family_letter(f.family))}, {"rank", f.rank}});
  Json roots = Json::array();
  for (const auto& r : rs.roots()) roots.push_back(to_json(r));
  return Json{{"factors", factors}, {"roots", roots}, {"positive", rs.positive()}};
}

Json to_json(const FaceRecord& f) {
  Json j{{"id", f.id}, {"kind", to_string(f.kind)}, {"dim", f.dim}, {"exposed", f.exposed}};
  Json w = Json::array();
  for (const auto& p : f.witness_points) w.push_back(to_json(p));
  j["witness_points"] = w;
  Json dir = Json::array();
  for (const auto& p : f.direction_basis) dir.push_back(to_json(p));
  j["direction_basis"] = dir;
  Json nc = Json::array();
  for (const auto& p : f.normal_cone_generators) nc.push_back(to_json(p));
  j["normal_cone_generators"] = nc;
  if (!f.vertex_ids.empty()) j["vertex_ids"] = f.vertex_ids;
  if (!f.generators.empty()) j["generators"] = f.generators;
  if (f.parametric) {
    j["parametric"] = true;
    j["full_circle"] = f.full_circle;
    Json ends = Json::array();
    for (const auto& e : f.arc_ends) ends.push_back(to_json(e));
    j["arc_ends"] = ends;
  }
  if (f.junction) j["junction"] = true;
  return j;
}

// ---- SVG ---------------------------------------------------------------------

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", std::abs(x) < 5e-5 ? 0.0 : x);
  return buf;
}

}  // namespace

std::string render_svg(const Body& body, const std::vector<FaceRecord>& faces) {
  if (ambient_dim(body) != 2) throw InputError(ErrorCode::dimension_mismatch, "figures are drawn for planar bodies only");

  // Boundary traced through the support points of 720 directions.
  std::vector<std::pair<double, double>> boundary;
  struct G {
    double x, y, r;
  };
  std::vector<G> gens;
  if (const auto* p = std::get_if<Polytope>(&body)) {
    for (const auto& v : p->vertices()) gens.push_back({to_double(v[0]), to_double(v[1]), 0.0});
  } else {
    const auto& b = std::get<DiskHull2D>(body);
    for (int g : b.essential()) {
      const auto& d = b.generators()[g];
      gens.push_back({to_double(d.center[0]), to_double(d.center[1]), to_double(d.r)});
    }
  }
  const int steps = 720;
  for (int k = 0; k < steps; ++k) {
    const double t = 2 * std::numbers::pi * k / steps;
    const double ux = std::cos(t), uy = std::sin(t);
    const G* best = nullptr;
    double hv = -1e300;
    for (const auto& g : gens) {
      const double v = g.x * ux + g.y * uy + g.r;
      if (v > hv + 1e-12) {
        hv = v;
        best = &g;
      }
    }
    std::pair<double, double> q{best->x + best->r * ux, best->y + best->r * uy};
    if (boundary.empty() || std::hypot(q.first - boundary.back().first, q.second - boundary.back().second) > 1e-9)
      boundary.push_back(q);
  }

  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& [x, y] : boundary) {
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
  const double margin = 0.1 * span;
  const double size = 400.0;
  const double s = size / (span + 2 * margin);
  auto px = [&](double x) { return fmt((x - lo_x + margin) * s); };
  auto py = [&](double y) { return fmt((hi_y - y + margin) * s); };
  const double w = (hi_x - lo_x + 2 * margin) * s;
  const double h = (hi_y - lo_y + 2 * margin) * s;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h) << "\" viewBox=\"0 0 "
      << fmt(w) << ' ' << fmt(h) << "\">\n";
  out << "  <path class=\"boundary\" fill=\"#e8eef7\" stroke=\"#1f3b63\" stroke-width=\"2\" d=\"";
  for (std::size_t i = 0; i < boundary.size(); ++i)
    out << (i ? " L " : "M ") << px(boundary[i].first) << ' ' << py(boundary[i].second);
  out << " Z\"/>\n";
  for (const auto& f : faces) {
    if (f.exposed || f.witness_points.empty()) continue;
    const auto c = f.witness().approx();
    out << "  <circle class=\"non-exposed\" cx=\"" << px(c[0]) << "\" cy=\"" << py(c[1])
        << "\" r=\"5\" fill=\"#c0392b\"><title>" << f.id << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace polar
