// polarfaces: face orbits of Weyl-invariant bodies, their K-orbit counterparts,
// exposedness checks and the parabolic data of gradient-map polytopes.

#include "polarfaces/errors.hpp"
#include "polarfaces/faceorbit.hpp"
#include "polarfaces/gradmap.hpp"
#include "polarfaces/io.hpp"
#include "polarfaces/matmodel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <iomanip>
#include <sstream>

using namespace polar;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string command;
  std::string rs;
  std::string model;
  std::string body;
  std::string fixedpoints;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string out = "out";
};

struct Failure {
  std::string check;
  Json witness;
};

struct Outcome {
  Json results = Json::object();
  std::vector<Failure> failures;
  std::vector<std::vector<std::string>> csv;
  std::optional<std::string> svg;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string yes(bool b) { return b ? "true" : "false"; }

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(ErrorCode::invalid_argument, what);
}

// The matrix model realizing a root system when none is named.
std::string default_model(const RootSystem& rs) {
  const auto label = rs.label();
  if (label == "A1xA1") return "a1xa1";
  if (rs.factors().size() == 1 && rs.factors()[0].family == Family::A && rs.factors()[0].rank <= 5)
    return "sym" + std::to_string(rs.factors()[0].rank + 1);
  throw InputError(ErrorCode::unknown_model, "no matrix model realizes " + label + "; pass --model");
}

MatrixModel model_for(const RunConfig& c, const RootSystem& rs) {
  auto m = MatrixModel::make(c.model.empty() ? default_model(rs) : c.model);
  if (m.root_system().label() != rs.label())
    throw InputError(ErrorCode::invalid_argument, "model " + m.name() + " realizes " + m.root_system().label() + ", not " + rs.label());
  return m;
}

Json record_json(const UpsilonRecord& r, const RootSystem& rs) {
  Json perp = Json::array();
  for (const auto& v : r.sigma_perp_basis) perp.push_back(to_json(v));
  Json roots = Json::array();
  for (int a : r.centralizer_roots) roots.push_back(to_json(rs.roots()[a]));
  Json wit = Json::array();
  for (const auto& w : r.generic_witnesses) wit.push_back(to_json(w));
  return Json{{"orbit_id", r.orbit_id},       {"sigma", to_json(r.sigma)},
              {"members", r.members},         {"orbit_size", r.orbit_size},
              {"stabilizer_order", r.stabilizer_order},
              {"sigma_perp_basis", perp},     {"centralizer_roots", roots},
              {"generic_witnesses", wit},     {"predicted_dim_F", r.predicted_dim_F},
              {"root_multiplicity", r.root_multiplicity},
              {"exposed_in_P", r.exposed_in_P}, {"exposed_in_E", r.exposed_in_E},
              {"proper", r.proper},           {"parametric", r.parametric}};
}

std::vector<std::string> csv_header() { return {"orbit_id", "dim_sigma", "dim_F", "exposed", "proper", "orbit_size"}; }

std::vector<std::string> csv_row(const UpsilonRecord& r) {
  return {std::to_string(r.orbit_id), std::to_string(r.sigma.dim), std::to_string(r.predicted_dim_F),
          yes(r.exposed_in_E),        yes(r.proper),               std::to_string(r.orbit_size)};
}

Body load_body(const RunConfig& c) {
  require(!c.body.empty(), "--body is required for command " + c.command);
  return body_from_json(read_json_file(c.body));
}

RootSystem load_rs(const RunConfig& c) {
  require(!c.rs.empty(), "--rs is required for command " + c.command);
  return RootSystem::build(c.rs);
}

void maybe_svg(Outcome& o, const Body& body) {
  if (ambient_dim(body) == 2) o.svg = render_svg(body, all_faces(body));
}

// ---- commands -----------------------------------------------------------------

Outcome cmd_faces(const RunConfig& c, bool with_model) {
  const auto rs = load_rs(c);
  const Body body = load_body(c);
  Outcome o;
  std::optional<MatrixModel> model;
  if (with_model && (!c.model.empty())) model = model_for(c, rs);
  if (with_model && c.model.empty()) {
    try {
      model = model_for(c, rs);
    } catch (const InputError&) {
      // No realization: the correspondence is reported without the numeric oracle.
    }
  }
  const auto records = correspondence(rs, model ? &*model : nullptr, body);
  o.results["root_system"] = to_json(rs);
  Json arr = Json::array();
  o.csv.push_back(csv_header());
  int non_exposed = 0;
  for (const auto& r : records) {
    Json j = record_json(r, rs);
    if (model) {
      const auto t = upsilon_tangent_dim(*model, r);
      j["tangent_ranks"] = t.ranks;
      j["tangent_rank_stable"] = t.stable;
      const bool agrees = t.stable && t.rank == r.predicted_dim_F;
      j["oracle_agrees"] = agrees;
      if (!agrees)
        o.failures.push_back({"dimension oracle", Json{{"orbit_id", r.orbit_id}, {"face", r.sigma.id}, {"predicted", r.predicted_dim_F}, {"ranks", t.ranks}}});
    }
    arr.push_back(j);
    o.csv.push_back(csv_row(r));
    if (!r.exposed_in_E) non_exposed += r.orbit_size;
  }
  o.results["model"] = model ? model->name() : "";
  o.results["orbits"] = arr;
  o.results["orbit_count"] = records.size();
  o.results["non_exposed_faces"] = non_exposed;
  maybe_svg(o, body);
  return o;
}

Outcome cmd_exposed(const RunConfig& c) {
  const auto rs = load_rs(c);
  const Body body = load_body(c);
  const auto model = model_for(c, rs);
  require(c.samples > 0, "--samples must be positive for the exposedness sampler");
  const auto records = correspondence(rs, &model, body);
  const auto rep = exposed_equivalence_check(rs, model, body, c.samples, c.seed, c.tol);
  Outcome o;
  o.csv.push_back(csv_header());
  Json arr = Json::array();
  int non_exposed_orbits = 0, non_exposed_faces = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto& ck = rep.checks[i];
    Json j = record_json(r, rs);
    j["check"] = Json{{"beta", ck.beta_exact},
                      {"haar_samples", ck.haar_samples},
                      {"centralizer_samples", ck.centralizer_samples},
                      {"max_excess", ck.max_excess},
                      {"max_projection_gap", ck.max_projection_gap},
                      {"max_bracket", ck.max_bracket},
                      {"max_value_gap", ck.max_value_gap},
                      {"counterexample", ck.counterexample},
                      {"inconclusive", ck.inconclusive},
                      {"note", ck.note}};
    if (ck.counterexample)
      o.failures.push_back({"exposedness sampler", Json{{"face", ck.face_id}, {"seed", c.seed}, {"sample_index", ck.witness_index}, {"sample_seed", ck.witness_seed}}});
    if (ck.inconclusive) o.failures.push_back({"exposedness sampler inconclusive", Json{{"face", ck.face_id}}});
    if (!r.exposed_in_E) {
      ++non_exposed_orbits;
      non_exposed_faces += r.orbit_size;
    }
    arr.push_back(j);
    o.csv.push_back(csv_row(r));
  }
  o.results["root_system"] = to_json(rs);
  o.results["model"] = model.name();
  o.results["orbits"] = arr;
  o.results["non_exposed_orbits"] = non_exposed_orbits;
  o.results["non_exposed_faces"] = non_exposed_faces;
  maybe_svg(o, body);
  return o;
}

struct GradInput {
  std::optional<ProjectiveModel> model;
  FixedPointData data;
};

GradInput grad_input(const RunConfig& c) {
  GradInput g;
  if (!c.model.empty()) g.model = ProjectiveModel::make(c.model);
  if (!c.fixedpoints.empty()) g.data = fixed_points_from_json(read_json_file(c.fixedpoints));
  else if (g.model) g.data = g.model->fixed_points();
  else throw InputError(ErrorCode::invalid_argument, "--fixedpoints or --model projN is required for command " + c.command);
  return g;
}

Outcome cmd_gradpoly(const RunConfig& c) {
  const auto in = grad_input(c);
  const auto P = momentum_polytope(in.data);
  Outcome o;
  Json verts = Json::array();
  for (const auto& v : P.vertices()) verts.push_back(to_json(v));
  o.results["vertices"] = verts;
  o.results["dim"] = P.dim();
  Json faces = Json::array();
  o.csv.push_back({"face_id", "dim", "exposed"});
  const Body body = P;
  for (const auto& f : face_lattice(P)) {
    const bool exposed = exposed_test(body, f);
    faces.push_back(Json{{"id", f.id}, {"dim", f.dim}, {"vertex_ids", f.vertex_ids}, {"exposed", exposed}});
    o.csv.push_back({f.id, std::to_string(f.dim), yes(exposed)});
    if (!exposed) o.failures.push_back({"momentum polytope face not exposed", Json{{"face", f.id}}});
  }
  o.results["faces"] = faces;
  if (in.model) {
    const auto simplex = momentum_polytope(in.model->fixed_points());
    const bool match = std::set<RVec>(P.vertices().begin(), P.vertices().end()) ==
                       std::set<RVec>(simplex.vertices().begin(), simplex.vertices().end());
    o.results["model"] = in.model->name();
    o.results["description"] = in.model->description();
    o.results["matches_standard_simplex"] = match;
    if (!match) o.failures.push_back({"momentum polytope differs from the standard simplex", Json::object()});
  }
  if (P.ambient_dim() == 2) o.svg = render_svg(body, face_lattice(P));
  return o;
}

ProjectiveModel require_projective(const RunConfig& c) {
  require(!c.model.empty(), "--model projN is required for command " + c.command);
  return ProjectiveModel::make(c.model);
}

Outcome cmd_parabolics(const RunConfig& c) {
  const auto m = require_projective(c);
  require(c.samples > 0, "--samples must be positive for the parabolic oracles");
  const auto P = momentum_polytope(m.fixed_points());
  const auto& rs = m.group().root_system();
  Outcome o;
  o.csv.push_back({"face_id", "coordinates", "blocks", "face_set", "parabolic", "passed"});
  Json arr = Json::array();
  std::uint64_t k = 0;
  for (const auto& f : face_lattice(P)) {
    const auto d = parabolic_of_face(rs, P, f);
    const auto coords = face_coordinates(m, P, f);
    const auto fs = face_set_check(m, d.beta, c.samples, splitmix64(c.seed + k), c.tol);
    const auto po = parabolic_oracle(m, d, c.samples, splitmix64(c.seed + 1000 + k), std::max(c.tol, 1e-8));
    ++k;
    Json blocks = d.blocks;
    arr.push_back(Json{{"face", f.id},
                       {"coordinates", coords},
                       {"beta", to_json(d.beta)},
                       {"improper", d.improper},
                       {"roots_pos", d.roots_pos.size()},
                       {"roots_zero", d.roots_zero.size()},
                       {"roots_neg", d.roots_neg.size()},
                       {"blocks", blocks},
                       {"face_set", Json{{"max_excess", fs.max_excess}, {"maximizers", fs.maximizers}, {"support_mismatches", fs.support_mismatches}, {"argmax_support", fs.argmax_support}, {"hull_vertices", fs.hull_vertices}, {"passed", fs.passed}}},
                       {"parabolic", Json{{"triangular", po.triangular}, {"preserving", po.preserving}, {"group_mismatches", po.group_mismatches}, {"block_orthogonal", po.block_orthogonal}, {"orthogonal_preserving", po.orthogonal_preserving}, {"orthogonal_mismatches", po.orthogonal_mismatches}, {"centralizer_mismatches", po.centralizer_mismatches}, {"passed", po.passed}}}});
    if (!fs.passed) o.failures.push_back({"face set", Json{{"face", f.id}, {"witness_seed", fs.witness_seed}}});
    if (!po.passed) o.failures.push_back({"parabolic oracle", Json{{"face", f.id}, {"sample_index", po.witness_index}}});
    std::string bl;
    for (const auto& b : d.blocks) {
      bl += "{";
      for (std::size_t i = 0; i < b.size(); ++i) bl += (i ? " " : "") + std::to_string(b[i]);
      bl += "}";
    }
    std::string cs;
    for (std::size_t i = 0; i < coords.size(); ++i) cs += (i ? " " : "") + std::to_string(coords[i]);
    o.csv.push_back({f.id, cs, bl, yes(fs.passed), yes(po.passed), yes(fs.passed && po.passed)});
  }
  o.results["model"] = m.name();
  o.results["faces"] = arr;
  return o;
}

Outcome cmd_retract(const RunConfig& c) {
  const auto m = require_projective(c);
  require(c.samples > 0, "--samples must be positive for the retraction check");
  const auto P = momentum_polytope(m.fixed_points());
  const auto& rs = m.group().root_system();
  Outcome o;
  o.csv.push_back({"face_id", "coordinates", "independence", "idempotence", "equivariance", "passed"});
  Json arr = Json::array();
  std::uint64_t k = 0;
  for (const auto& f : face_lattice(P)) {
    if (f.kind == FaceKind::whole) continue;
    const auto d = parabolic_of_face(rs, P, f);
    const auto coords = face_coordinates(m, P, f);
    std::vector<RVec> betas{d.beta, 2 * d.beta};
    const auto rep = retraction_check(m, coords, betas, c.samples, splitmix64(c.seed + k++), std::max(c.tol, 1e-8));
    Json bj = Json::array();
    for (const auto& b : betas) bj.push_back(to_json(b));
    arr.push_back(Json{{"face", f.id},
                       {"coordinates", coords},
                       {"betas", bj},
                       {"beta_fixed", rep.beta_fixed},
                       {"independence_gap", rep.independence_gap},
                       {"idempotence_gap", rep.idempotence_gap},
                       {"equivariance_gap", rep.equivariance_gap},
                       {"support_mismatches", rep.support_mismatches},
                       {"monotonicity_violations", rep.monotonicity_violations},
                       {"domain_misses", rep.domain_misses},
                       {"note", rep.note},
                       {"passed", rep.passed}});
    if (!rep.passed)
      o.failures.push_back({"retraction", Json{{"face", f.id}, {"sample_index", rep.witness_index}, {"sample_seed", rep.witness_seed}}});
    std::string cs;
    for (std::size_t i = 0; i < coords.size(); ++i) cs += (i ? " " : "") + std::to_string(coords[i]);
    o.csv.push_back({f.id, cs, std::to_string(rep.independence_gap), std::to_string(rep.idempotence_gap),
                     std::to_string(rep.equivariance_gap), yes(rep.passed)});
  }
  o.results["model"] = m.name();
  o.results["faces"] = arr;
  return o;
}

Polytope random_invariant(const RootSystem& rs, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-6, 6);
  std::vector<RVec> pts;
  const int seeds = 1 + static_cast<int>(rng() % 2);
  for (int s = 0; s < seeds; ++s) {
    RVec x(rs.ambient_dim());
    for (auto& v : x) v = d(rng);
    for (auto& y : rs.weyl_orbit(rs.project_to_a(x))) pts.push_back(y);
  }
  return Polytope::hull(pts);
}

Outcome cmd_verify(const RunConfig& c) {
  require(!c.model.empty(), "--model is required for command verify");
  require(c.samples > 0, "--samples must be positive for verify");
  const auto model = MatrixModel::make(c.model);
  const auto& rs = model.root_system();
  Outcome o;
  o.csv.push_back({"suite", "check", "value", "passed"});

  // Kostant projections.
  Json kost = Json::array();
  for (std::uint64_t i = 0; i < 5; ++i) {
    const Mat x = model.sample_p(splitmix64(c.seed + i));
    const auto rep = kostant_check(model, x, c.samples, splitmix64(c.seed + 100 + i), c.tol);
    kost.push_back(Json{{"dominant", rep.dominant}, {"max_violation", rep.max_violation}, {"passed", rep.passed}});
    o.csv.push_back({"kostant", "x" + std::to_string(i), std::to_string(rep.max_violation), yes(rep.passed)});
    if (!rep.passed)
      o.failures.push_back({"kostant", Json{{"x_seed", splitmix64(c.seed + i)}, {"sample_index", rep.worst_index}, {"sample_seed", rep.worst_seed}}});
  }
  o.results["kostant"] = kost;

  // Correspondence: dimension oracle and exposedness sampler on random invariant polytopes.
  Json corr = Json::array();
  std::mt19937_64 rng(c.seed);
  for (int t = 0; t < 3; ++t) {
    const Polytope p = random_invariant(rs, rng);
    int agree = 0, total = 0;
    for (const auto& r : correspondence(rs, &model, p)) {
      const auto td = upsilon_tangent_dim(model, r);
      ++total;
      if (td.stable && td.rank == r.predicted_dim_F) ++agree;
      else o.failures.push_back({"dimension oracle", Json{{"polytope", t}, {"face", r.sigma.id}}});
    }
    const auto ex = exposed_equivalence_check(rs, model, p, std::min<std::size_t>(c.samples, 2000), c.seed + t, c.tol);
    if (!ex.passed) o.failures.push_back({"exposedness sampler", Json{{"polytope", t}}});
    corr.push_back(Json{{"vertices", p.vertices().size()}, {"orbits", total}, {"oracle_agreement", agree}, {"exposed_check", ex.passed}});
    o.csv.push_back({"correspondence", "polytope" + std::to_string(t), std::to_string(agree) + "/" + std::to_string(total),
                     yes(agree == total && ex.passed)});
  }
  o.results["correspondence"] = corr;

  // Gradient-map suite on the projective model of the same size.
  if (model.kind() == ModelKind::sym && model.n() >= 3) {
    RunConfig pc = c;
    pc.model = "proj" + std::to_string(model.n());
    pc.samples = std::min<std::size_t>(c.samples, 2000);
    auto gp = cmd_gradpoly(pc);
    auto pa = cmd_parabolics(pc);
    auto re = cmd_retract(pc);
    o.results["gradmap"] = Json{{"polytope", gp.results}, {"parabolics", pa.results}, {"retraction", re.results}};
    for (auto* part : {&gp, &pa, &re})
      for (auto& f : part->failures) o.failures.push_back(std::move(f));
    o.csv.push_back({"gradmap", pc.model, "", yes(gp.failures.empty() && pa.failures.empty() && re.failures.empty())});
  } else {
    o.results["gradmap"] = Json{{"skipped", "no projective model for " + model.name()}};
  }
  return o;
}

Outcome dispatch(const RunConfig& c) {
  if (c.command == "faces") return cmd_faces(c, false);
  if (c.command == "correspondence") return cmd_faces(c, true);
  if (c.command == "exposed") return cmd_exposed(c);
  if (c.command == "gradpoly") return cmd_gradpoly(c);
  if (c.command == "parabolics") return cmd_parabolics(c);
  if (c.command == "retract") return cmd_retract(c);
  if (c.command == "verify") return cmd_verify(c);
  throw InputError(ErrorCode::invalid_argument, "unknown command " + c.command);
}

Json config_json(const RunConfig& c) {
  return Json{{"command", c.command}, {"rs", c.rs},     {"model", c.model}, {"body", c.body}, {"fixedpoints", c.fixedpoints},
              {"samples", c.samples}, {"seed", c.seed}, {"tol", c.tol}};
}

void write_outputs(const RunConfig& c, const Outcome& o, bool passed) {
  fs::create_directories(c.out);
  Json report{{"schema", 1}, {"config", config_json(c)}, {"passed", passed}};
  Json fails = Json::array();
  for (const auto& f : o.failures) fails.push_back(Json{{"check", f.check}, {"witness", f.witness}});
  report["failures"] = fails;
  report["results"] = o.results;
  // The hash covers everything except the timestamp (and itself).
  report["stability_hash"] = hex(fnv1a(report.dump()));
  report["timestamp"] = utc_now();
  std::ofstream(fs::path(c.out) / "report.json") << report.dump(2) << '\n';
  std::ofstream csv(fs::path(c.out) / "summary.csv");
  for (const auto& row : o.csv) {
    for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << row[i];
    csv << '\n';
  }
  if (o.svg) std::ofstream(fs::path(c.out) / "figure.svg") << *o.svg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faces of Weyl-invariant convex bodies and of their K-orbit hulls"};
  RunConfig c;
  app.add_option("--command", c.command, "faces | correspondence | exposed | gradpoly | parabolics | retract | verify")
      ->required()
      ->check(CLI::IsMember({"faces", "correspondence", "exposed", "gradpoly", "parabolics", "retract", "verify"}));
  app.add_option("--rs", c.rs, "root system, e.g. A1xA1 or A2");
  app.add_option("--model", c.model, "matrix model (sym3, a1xa1) or projective model (proj4)");
  app.add_option("--body", c.body, "body JSON file");
  app.add_option("--fixedpoints", c.fixedpoints, "fixed-point JSON file");
  app.add_option("--samples", c.samples, "samples per sampling check")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--tol", c.tol, "tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "output directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cout << Json{{"status", "input_error"}, {"code", "malformed_input"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  try {
    const Outcome o = dispatch(c);
    const bool passed = o.failures.empty();
    write_outputs(c, o, passed);
    Json summary{{"status", passed ? "pass" : "fail"}, {"command", c.command}, {"failures", o.failures.size()},
                 {"report", (fs::path(c.out) / "report.json").string()}};
    if (!passed) {
      Json fails = Json::array();
      for (const auto& f : o.failures) fails.push_back(Json{{"check", f.check}, {"witness", f.witness}});
      summary["details"] = fails;
    }
    std::cout << summary.dump() << '\n';
    return passed ? 0 : 1;
  } catch (const InputError& e) {
    std::cout << Json{{"status", "input_error"}, {"code", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
}
