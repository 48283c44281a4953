#include "polarfaces/faceorbit.hpp"

#include "polarfaces/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace polar {

namespace {

// ---- small helpers ---------------------------------------------------------

std::vector<long> first_primes(std::size_t count) {
  std::vector<long> primes;
  for (long c = 2; primes.size() < count; ++c) {
    bool prime = true;
    for (long p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

bool surd_dominant(const RootSystem& rs, const SurdVec& x) {
  for (const auto& a : rs.simple_roots())
    if (sign(dot(a, x)) < 0) return false;
  return true;
}

// Polygon fallback: a disk hull without disks is treated as its polygon.
Body canonical_body(const Body& body) {
  if (const auto* d = std::get_if<DiskHull2D>(&body)) {
    if (!d->has_disks()) {
      std::vector<RVec> pts;
      for (int g : d->essential()) pts.push_back(d->generators()[g].center);
      return Polytope::hull(pts);
    }
  }
  return body;
}

void check_body_in_a(const RootSystem& rs, const Body& body) {
  if (ambient_dim(body) != rs.ambient_dim())
    throw InputError(ErrorCode::dimension_mismatch, "body lives in dimension " + std::to_string(ambient_dim(body)) +
                                                        " but the root system " + rs.label() + " in dimension " +
                                                        std::to_string(rs.ambient_dim()));
}

std::vector<int> generator_permutation(const DiskHull2D& b, const WeylElement& w) {
  const auto& gens = b.generators();
  std::vector<int> perm(gens.size(), -1);
  for (int g : b.essential()) {
    const RVec img = w.apply(gens[g].center);
    for (int h : b.essential())
      if (gens[h].center == img && gens[h].r == gens[g].r) perm[g] = h;
  }
  return perm;
}

std::vector<int> vertex_permutation(const Polytope& p, const WeylElement& w) {
  std::map<RVec, int> index;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) index[p.vertices()[i]] = static_cast<int>(i);
  std::vector<int> perm(p.vertices().size(), -1);
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    auto it = index.find(w.apply(p.vertices()[i]));
    if (it != index.end()) perm[i] = it->second;
  }
  return perm;
}

FaceRecord transform_face(const Body& body, const WeylElement& w, const std::vector<int>& perm, const FaceRecord& f) {
  if (const auto* p = std::get_if<Polytope>(&body)) {
    std::vector<int> ids;
    for (int v : f.vertex_ids) ids.push_back(perm[v]);
    return p->face(ids);
  }
  FaceRecord g = f;
  auto map_all = [&](std::vector<SurdVec>& vs) {
    for (auto& v : vs) v = w.apply(v);
  };
  map_all(g.witness_points);
  map_all(g.direction_basis);
  map_all(g.normal_cone_generators);
  map_all(g.arc_ends);
  for (auto& x : g.generators) x = perm[x];
  std::sort(g.generators.begin(), g.generators.end());
  if (w.determinant() < 0) {
    if (g.arc_ends.size() == 2) std::swap(g.arc_ends[0], g.arc_ends[1]);
    if (g.kind == FaceKind::segment && g.witness_points.size() == 3) std::swap(g.witness_points[1], g.witness_points[2]);
    if (g.kind == FaceKind::vertex && g.normal_cone_generators.size() == 2)
      std::swap(g.normal_cone_generators[0], g.normal_cone_generators[1]);
  }
  return g;
}

bool same_body_face(const FaceRecord& a, const FaceRecord& b) { return a.junction == b.junction && same_face(a, b); }

int find_face(const std::vector<FaceRecord>& faces, const FaceRecord& f) {
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (same_body_face(faces[i], f)) return static_cast<int>(i);
  return -1;
}

// Generic relative-interior points of a face.
std::vector<SurdVec> generic_points(const RootSystem& rs, const FaceRecord& f, std::size_t count) {
  std::vector<SurdVec> out;
  auto unexpected_wall = [&](const SurdVec& x, const std::vector<SurdVec>& anchors) {
    for (const auto& a : rs.roots()) {
      if (sign(dot(a, x)) != 0) continue;
      // A wall containing the whole face is expected.
      bool contains_face = true;
      for (const auto& p : anchors)
        if (sign(dot(a, p)) != 0) contains_face = false;
      if (!contains_face) return true;
    }
    return false;
  };
  if (!f.extreme_points.empty()) {
    const auto& verts = f.extreme_points;
    const auto primes = first_primes(verts.size() * (count + 24) + 8);
    std::size_t shift = 0;
    while (out.size() < count && shift < 24 + count) {
      Rational total = 0;
      RVec x = zeros(rs.ambient_dim());
      for (std::size_t j = 0; j < verts.size(); ++j) {
        Rational wgt(1, primes[shift * verts.size() + j]);
        total += wgt;
        x = x + wgt * *verts[j].rational();
      }
      SurdVec cand((1 / total) * x);
      ++shift;
      if (!unexpected_wall(cand, verts)) out.push_back(cand);
    }
    if (out.empty()) out.push_back(f.witness());
    return out;
  }
  if (f.kind == FaceKind::segment) {
    const SurdVec& a = f.witness_points[1];
    const SurdVec& b = f.witness_points[2];
    const std::vector<SurdVec> anchors{a, b};
    for (long q = 2; out.size() < count && q < 64; ++q) {
      SurdVec cand = simplify(a + Rational(1, q) * (b - a));
      if (!unexpected_wall(cand, anchors)) out.push_back(cand);
    }
    if (out.empty()) out.push_back(f.witness());
    return out;
  }
  if (f.kind == FaceKind::whole) {
    // Points strictly inside: small perturbations of the centroid.
    const SurdVec c = f.witness();
    for (long q = 7; out.size() < count && q < 200; q += 3) {
      SurdVec cand = c + SurdVec(RVec{Rational(1, q), Rational(1, q * q + 1)});
      if (!unexpected_wall(cand, {})) out.push_back(cand);
    }
    return out;
  }
  // Point faces: the point itself; arc families keep their representatives.
  return f.witness_points;
}

std::vector<SurdVec> perp_inside_a(const RootSystem& rs, const FaceRecord& sigma) {
  const std::size_t n = rs.ambient_dim();
  bool rational = std::all_of(sigma.direction_basis.begin(), sigma.direction_basis.end(),
                              [](const SurdVec& v) { return v.is_rational(); });
  if (rational) {
    std::vector<RVec> constraints;
    for (const auto& v : sigma.direction_basis) constraints.push_back(simplify(v).a);
    for (auto& l : orthogonal_complement(rs.a_basis(), n)) constraints.push_back(std::move(l));
    std::vector<SurdVec> out;
    for (auto& v : orthogonal_complement(constraints, n)) out.emplace_back(std::move(v));
    return out;
  }
  if (n != 2 || rs.rank() != 2 || sigma.direction_basis.size() != 1)
    throw std::logic_error("irrational face directions are only supported for planar bodies");
  return {rot90(sigma.direction_basis.front())};
}

}  // namespace

// ---- invariance and orbits -------------------------------------------------

bool check_weyl_invariance(const RootSystem& rs, const Body& body) {
  check_body_in_a(rs, body);
  if (const auto* p = std::get_if<Polytope>(&body)) {
    const std::set<RVec> verts(p->vertices().begin(), p->vertices().end());
    for (const auto& w : rs.weyl()) {
      for (const auto& v : p->vertices())
        if (!verts.count(w.apply(v))) return false;
    }
    return true;
  }
  const auto& b = std::get<DiskHull2D>(body);
  std::set<std::pair<RVec, Rational>> gens;
  for (int g : b.essential()) gens.insert({b.generators()[g].center, b.generators()[g].r});
  for (const auto& w : rs.weyl())
    for (const auto& [c, r] : gens)
      if (!gens.count({w.apply(c), r})) return false;
  return true;
}

std::vector<UpsilonRecord> face_orbits(const RootSystem& rs, const Body& body_in) {
  if (!check_weyl_invariance(rs, body_in))
    throw InputError(ErrorCode::not_invariant, "body is not invariant under the Weyl group of " + rs.label());
  const Body body = canonical_body(body_in);
  if (const auto* p = std::get_if<Polytope>(&body)) {
    for (const auto& v : p->vertices())
      if (!rs.in_a(v))
        throw InputError(ErrorCode::invalid_argument, "body is not contained in the span of the roots");
  }
  const auto faces = all_faces(body);
  std::vector<std::vector<int>> perms;
  for (const auto& w : rs.weyl()) {
    if (const auto* p = std::get_if<Polytope>(&body)) perms.push_back(vertex_permutation(*p, w));
    else perms.push_back(generator_permutation(std::get<DiskHull2D>(body), w));
  }

  // Polytope faces are matched by their vertex sets.
  std::map<std::vector<int>, int> by_vertices;
  const bool polytope = std::holds_alternative<Polytope>(body);
  if (polytope)
    for (std::size_t i = 0; i < faces.size(); ++i) by_vertices[faces[i].vertex_ids] = static_cast<int>(i);
  auto image = [&](std::size_t wi, const FaceRecord& f) {
    if (!polytope) return find_face(faces, transform_face(body, rs.weyl()[wi], perms[wi], f));
    std::vector<int> ids;
    for (int v : f.vertex_ids) ids.push_back(perms[wi][v]);
    std::sort(ids.begin(), ids.end());
    auto it = by_vertices.find(ids);
    return it == by_vertices.end() ? -1 : it->second;
  };

  std::vector<int> orbit_of(faces.size(), -1);
  std::vector<UpsilonRecord> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (orbit_of[i] >= 0) continue;
    std::set<int> members;
    int fixing = 0;
    for (std::size_t wi = 0; wi < rs.weyl().size(); ++wi) {
      const int j = image(wi, faces[i]);
      if (j < 0) throw std::logic_error("Weyl image of a face is missing from the face list");
      members.insert(j);
      if (j == static_cast<int>(i)) ++fixing;
    }
    UpsilonRecord rec;
    rec.orbit_id = static_cast<int>(out.size());
    int rep = static_cast<int>(i);
    for (int j : members) {
      orbit_of[j] = rec.orbit_id;
      rec.members.push_back(faces[j].id);
    }
    for (int j : members) {
      if (surd_dominant(rs, faces[j].witness())) {
        rep = j;
        break;
      }
    }
    rec.sigma = faces[rep];
    rec.orbit_size = static_cast<int>(members.size());
    rec.stabilizer_order = fixing;
    if (static_cast<std::size_t>(fixing) * members.size() != rs.weyl_order())
      throw std::logic_error("orbit-stabilizer count mismatch");
    rec.exposed_in_P = exposed_test(body, rec.sigma);
    rec.exposed_in_E = rec.exposed_in_P;
    rec.proper = rec.sigma.kind != FaceKind::whole;
    rec.parametric = rec.sigma.parametric;
    rec.generic_witnesses = generic_points(rs, rec.sigma, 3);
    out.push_back(std::move(rec));
  }
  return out;
}

UpsilonRecord upsilon(const RootSystem& rs, const MatrixModel* model, UpsilonRecord rec) {
  if (model && model->root_system().label() != rs.label())
    throw InputError(ErrorCode::invalid_argument,
                     "model " + model->name() + " realizes " + model->root_system().label() + ", not " + rs.label());
  if (rec.sigma.witness_points.empty() || rec.sigma.witness().size() != rs.ambient_dim())
    throw InputError(ErrorCode::invalid_argument, "face record has no witness in the ambient space of " + rs.label());
  rec.sigma_perp_basis = perp_inside_a(rs, rec.sigma);
  rec.centralizer_roots = rs.roots_vanishing_on(std::span<const SurdVec>(rec.sigma_perp_basis));
  if (rec.generic_witnesses.empty()) rec.generic_witnesses = generic_points(rs, rec.sigma, 3);
  rec.root_multiplicity = model ? model->root_multiplicity() : 1;

  const std::set<int> positive(rs.positive().begin(), rs.positive().end());
  auto count_at = [&](const SurdVec& x) {
    int c = 0;
    for (int a : rec.centralizer_roots)
      if (positive.count(a) && sign(dot(rs.roots()[a], x)) != 0) ++c;
    return c;
  };
  const int c0 = count_at(rec.generic_witnesses.front());
  for (const auto& x : rec.generic_witnesses)
    if (count_at(x) != c0) throw std::logic_error("generic witnesses disagree on the nonvanishing centralizer roots");
  rec.predicted_dim_F = rec.sigma.dim + rec.root_multiplicity * c0;
  rec.proper = rec.sigma.kind != FaceKind::whole;
  rec.completed = true;
  return rec;
}

std::vector<UpsilonRecord> correspondence(const RootSystem& rs, const MatrixModel* model, const Body& body) {
  auto records = face_orbits(rs, body);
  for (auto& r : records) r = upsilon(rs, model, std::move(r));
  return records;
}

TangentDim upsilon_tangent_dim(const MatrixModel& model, const UpsilonRecord& record) {
  std::vector<std::vector<double>> ws;
  for (const auto& w : record.generic_witnesses) ws.push_back(w.approx());
  return tangent_dim_face(model, record.sigma, record.sigma_perp_basis, ws);
}

// ---- exposedness transfer --------------------------------------------------

namespace {

struct Exposer {
  SurdVec beta;
  bool ok = false;
  std::string note;
};

// beta in C_sigma fixed by the stabilizer of sigma, or a failure note.
Exposer choose_beta(const RootSystem& rs, const Body& body, const FaceRecord& sigma) {
  Exposer ex;
  std::vector<WeylElement> stab;
  for (const auto& w : rs.weyl()) {
    std::vector<int> perm;
    if (const auto* p = std::get_if<Polytope>(&body)) perm = vertex_permutation(*p, w);
    else perm = generator_permutation(std::get<DiskHull2D>(body), w);
    if (same_body_face(transform_face(body, w, perm, sigma), sigma)) stab.push_back(w);
  }
  if (const auto* p = std::get_if<Polytope>(&body)) {
    RVec sum = zeros(rs.ambient_dim());
    for (const auto& g : normal_cone(body, sigma)) sum = sum + *simplify(g).rational();
    RVec avg = zeros(rs.ambient_dim());
    for (const auto& w : stab) avg = avg + w.apply(sum);
    avg = rs.project_to_a(Rational(1, static_cast<long>(stab.size())) * avg);
    if (p->argmax(avg) != sigma.vertex_ids) {
      ex.note = "stabilizer-averaged normal exposes a larger face; using the plain normal sum";
      avg = rs.project_to_a(sum);
    }
    ex.beta = SurdVec(avg);
    ex.ok = p->argmax(avg) == sigma.vertex_ids;
    return ex;
  }
  const auto& b = std::get<DiskHull2D>(body);
  if (sigma.kind == FaceKind::segment) {
    ex.beta = sigma.normal_cone_generators.front();
    auto t = b.tied(ex.beta);
    ex.ok = t.size() >= 2;
    return ex;
  }
  RVec dir;
  if (sigma.kind == FaceKind::vertex && sigma.normal_cone_generators.size() == 2) {
    dir = rational_direction_between(sigma.normal_cone_generators[0], sigma.normal_cone_generators[1]);
    RVec avg = zeros(2);
    for (const auto& w : stab) avg = avg + w.apply(dir);
    if (!is_zero(avg)) dir = avg;
  } else {
    auto g = simplify(sigma.normal_cone_generators.front());
    if (!g.is_rational()) {
      ex.beta = g;
      ex.ok = b.tied(g).size() == 1;
      return ex;
    }
    dir = g.a;
  }
  ex.beta = SurdVec(dir);
  if (sigma.parametric) {
    ex.ok = b.tied(normalized(dir)) == sigma.generators;
  } else {
    ex.ok = same_face(support_face(body, dir), sigma);
  }
  return ex;
}

double dist_point_segment(const std::vector<double>& p, const std::vector<double>& a, const std::vector<double>& b) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy);
}

// Distance-like gap of a point of a from sigma (0 inside).
struct FaceGap {
  const Body& body;
  const FaceRecord& sigma;
  std::vector<double> beta_unit;  // in a coordinates
  double h = 0;                   // max_P <., beta_unit>
  std::vector<std::pair<std::vector<double>, double>> facets;  // unit normals
  std::vector<std::vector<double>> lineality;
  std::vector<double> base;
  std::vector<std::vector<double>> seg;  // disk: segment ends or the point

  double operator()(const std::vector<double>& y) const {
    if (std::holds_alternative<Polytope>(body)) {
      double gap = 0;
      for (const auto& [n, off] : facets) {
        double v = -off;
        for (std::size_t i = 0; i < y.size(); ++i) v += n[i] * y[i];
        gap = std::max(gap, v);
      }
      for (const auto& l : lineality) {
        double v = 0;
        for (std::size_t i = 0; i < y.size(); ++i) v += l[i] * (y[i] - base[i]);
        gap = std::max(gap, std::abs(v));
      }
      double on = h;
      for (std::size_t i = 0; i < y.size(); ++i) on -= beta_unit[i] * y[i];
      return std::max(gap, std::abs(on));
    }
    if (seg.size() == 2) return dist_point_segment(y, seg[0], seg[1]);
    return std::hypot(y[0] - seg[0][0], y[1] - seg[0][1]);
  }
};

Mat cayley(const Mat& z) {
  const Mat I = Mat::Identity(z.rows(), z.cols());
  return (I - 0.5 * z).lu().solve(I + 0.5 * z);
}

}  // namespace

ExposedReport exposed_equivalence_check(const RootSystem& rs, const MatrixModel& model, const Body& body_in,
                                        std::size_t samples, std::uint64_t seed, double tol, ExecPolicy policy) {
  const Body body = canonical_body(body_in);
  auto records = correspondence(rs, &model, body_in);
  ExposedReport rep;
  const double scale = model.scale();

  for (const auto& rec : records) {
    ExposedCheck chk;
    chk.orbit_id = rec.orbit_id;
    chk.face_id = rec.sigma.id;
    chk.exposed_in_P = rec.exposed_in_P;
    chk.exposed_in_E = rec.exposed_in_P;
    if (!rec.proper) {
      chk.note = "beta = 0 exposes E itself";
      rep.checks.push_back(std::move(chk));
      continue;
    }
    if (!rec.exposed_in_P) {
      // The only candidate normals at a non-exposed point expose a larger face of P,
      // hence (by the correspondence) a larger face of E.
      const auto& b = std::get<DiskHull2D>(body);
      const SurdVec e = rec.sigma.witness();
      std::string evidence;
      for (int g : rec.sigma.generators) {
        const Disk& d = b.generators()[g];
        if (d.r == 0) continue;
        const SurdVec n = simplify((1 / d.r) * (e - SurdVec(d.center)));
        const auto t = b.tied(n);
        evidence += "unique supporting direction " + n.to_string() + " touches " + std::to_string(t.size()) +
                    " generators (a segment strictly containing the point)";
      }
      chk.note = evidence.empty() ? "not exposed in P" : evidence;
      rep.checks.push_back(std::move(chk));
      continue;
    }
    if (samples == 0) {
      chk.inconclusive = true;
      chk.note = "no samples drawn";
      rep.passed = false;
      rep.checks.push_back(std::move(chk));
      continue;
    }

    const Exposer ex = choose_beta(rs, body, rec.sigma);
    chk.beta_exact = ex.beta.to_string();
    if (!ex.note.empty()) chk.note = ex.note;
    if (!ex.ok) {
      chk.counterexample = true;
      chk.note += (chk.note.empty() ? "" : "; ") + std::string("no exposing direction found for an exposed face");
      rep.passed = false;
      rep.checks.push_back(std::move(chk));
      continue;
    }
    const std::vector<double> beta_a = ex.beta.approx();
    double beta_norm = 0;
    for (double v : beta_a) beta_norm += v * v;
    beta_norm = std::sqrt(beta_norm);
    std::vector<double> beta_unit(beta_a.size());
    for (std::size_t i = 0; i < beta_a.size(); ++i) beta_unit[i] = beta_a[i] / beta_norm;
    const Mat B = model.embed_a(std::span<const double>(beta_unit)) / std::sqrt(scale);
    chk.beta = beta_unit;

    // Support values in a and the generators of P.
    struct Gen {
      std::vector<double> c;
      double r;
    };
    std::vector<Gen> gens;
    double hP = -1e300;
    if (const auto* p = std::get_if<Polytope>(&body)) {
      for (const auto& v : p->vertices()) gens.push_back({to_double(v), 0.0});
    } else {
      const auto& b = std::get<DiskHull2D>(body);
      for (int g : b.essential()) gens.push_back({to_double(b.generators()[g].center), to_double(b.generators()[g].r)});
    }
    for (const auto& g : gens) {
      double v = g.r;
      for (std::size_t i = 0; i < g.c.size(); ++i) v += g.c[i] * beta_unit[i];
      hP = std::max(hP, v);
    }
    // <embed(x), B> = sqrt(scale) <x, beta_unit>.
    const double hE = std::sqrt(scale) * hP;

    FaceGap gap{body, rec.sigma, beta_unit, hP, {}, {}, {}, {}};
    if (const auto* p = std::get_if<Polytope>(&body)) {
      for (const auto& f : p->facets()) {
        auto n = to_double(f.normal);
        double len = 0;
        for (double v : n) len += v * v;
        len = std::sqrt(len);
        for (auto& v : n) v /= len;
        gap.facets.push_back({n, to_double(f.offset) / len});
      }
      for (const auto& l : p->lineality_basis()) {
        auto v = to_double(l);
        double len = 0;
        for (double x : v) len += x * x;
        for (auto& x : v) x /= std::sqrt(len);
        gap.lineality.push_back(v);
      }
      gap.base = to_double(p->vertices().front());
    } else if (rec.sigma.kind == FaceKind::segment) {
      gap.seg = {rec.sigma.witness_points[1].approx(), rec.sigma.witness_points[2].approx()};
    } else {
      gap.seg = {rec.sigma.witness().approx()};
    }

    // Points of sigma to push around with K^beta.
    std::vector<std::vector<double>> sigma_pts;
    if (const auto* p = std::get_if<Polytope>(&body)) {
      for (int v : rec.sigma.vertex_ids) sigma_pts.push_back(to_double(p->vertices()[v]));
    } else {
      for (const auto& s : gap.seg) sigma_pts.push_back(s);
    }

    // Haar samples: nothing in K.P beats the support value of P.
    auto excess = [&](std::size_t i) {
      const Mat k = model.sample_K(sample_seed(seed, i));
      const auto m = model.project_a(k.transpose() * B * k);
      double mn = 0;
      for (double v : m) mn += v * v;
      mn = std::sqrt(mn);
      double best = -1e300;
      for (const auto& g : gens) {
        double v = g.r * mn;
        for (std::size_t j = 0; j < m.size(); ++j) v += g.c[j] * m[j];
        best = std::max(best, scale * v);
      }
      return best - hE;
    };
    const auto worst = worst_sample(samples, policy, excess);
    chk.haar_samples = samples;
    chk.max_excess = worst.value;
    if (worst.value > tol) {
      chk.counterexample = true;
      chk.witness_index = worst.index;
      chk.witness_seed = sample_seed(seed, worst.index);
    }

    // Centralizer samples: maximizers K^beta . sigma project into sigma and commute with beta.
    const auto kbeta = model.centralizer_k(std::vector<Mat>{B});
    std::vector<std::array<double, 3>> parts(samples);
    const std::uint64_t cseed = splitmix64(seed ^ 0xC3A5C85C97CB3127ull);
    auto maxim = [&](std::size_t i) {
      std::mt19937_64 rng(sample_seed(cseed, i));
      std::normal_distribution<double> g(0.0, 1.0);
      std::exponential_distribution<double> e(1.0);
      Mat z = Mat::Zero(model.matrix_size(), model.matrix_size());
      const double amp = 0.5 + 2.5 * std::uniform_real_distribution<double>(0, 1)(rng);
      for (const auto& kb : kbeta) z += amp * g(rng) * kb;
      const Mat k = cayley(z);
      std::vector<double> x(sigma_pts.front().size(), 0.0);
      double total = 0;
      std::vector<double> wts(sigma_pts.size());
      for (auto& w : wts) total += (w = e(rng));
      for (std::size_t j = 0; j < sigma_pts.size(); ++j)
        for (std::size_t c = 0; c < x.size(); ++c) x[c] += wts[j] / total * sigma_pts[j][c];
      const Mat y = model.act(k, model.embed_a(std::span<const double>(x)));
      const double value_gap = std::abs(model.inner(y, B) - hE);
      const double bracket = MatrixModel::bracket(y, B).norm();
      const double proj = gap(model.project_a(y));
      parts[i] = {value_gap, bracket, proj};
      return std::max({value_gap, bracket, proj});
    };
    const auto worst_max = worst_sample(samples, policy, maxim);
    chk.centralizer_samples = samples;
    for (const auto& p : parts) {
      chk.max_value_gap = std::max(chk.max_value_gap, p[0]);
      chk.max_bracket = std::max(chk.max_bracket, p[1]);
      chk.max_projection_gap = std::max(chk.max_projection_gap, p[2]);
    }
    if (worst_max.value > tol && !chk.counterexample) {
      chk.counterexample = true;
      chk.witness_index = worst_max.index;
      chk.witness_seed = sample_seed(cseed, worst_max.index);
    }
    if (chk.counterexample) rep.passed = false;
    rep.checks.push_back(std::move(chk));
  }
  return rep;
}

// ---- abelian witness -------------------------------------------------------

bool face_contains(const Body& body, const FaceRecord& big, const FaceRecord& small) {
  if (big.kind == FaceKind::whole) return true;
  if (std::holds_alternative<Polytope>(body) || !big.vertex_ids.empty() || !small.vertex_ids.empty())
    return std::includes(big.vertex_ids.begin(), big.vertex_ids.end(), small.vertex_ids.begin(), small.vertex_ids.end());
  if (same_body_face(big, small)) return true;
  if (big.kind != FaceKind::segment || small.dim != 0 || small.parametric) return false;
  const SurdVec& a = big.witness_points[1];
  const SurdVec& b = big.witness_points[2];
  const SurdVec e = small.witness();
  if (!e.is_rational() && !a.is_rational() && e.d != a.d) return false;
  const SurdVec u = big.normal_cone_generators.front();
  const SurdVec t = rot90(u);
  const SurdVec ea = e - a;
  if (sign(dot(ea, u)) != 0) return false;
  const Surd along = dot(ea, t);
  return sign(along) >= 0 && compare(along, dot(b - a, t)) <= 0;
}

AbelianWitness abelian_witness(const MatrixModel& model, const Body& body_in, const std::vector<FaceRecord>& chain) {
  const Body body = canonical_body(body_in);
  if (chain.empty() || chain.back().kind != FaceKind::whole)
    throw InputError(ErrorCode::invalid_argument, "chain must end at the whole body");
  const auto faces = all_faces(body);
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    const auto& lo = chain[j];
    const auto& hi = chain[j + 1];
    if (!face_contains(body, hi, lo) || same_body_face(hi, lo))
      throw InputError(ErrorCode::invalid_argument, "chain is not strictly increasing at step " + std::to_string(j));
    for (const auto& g : faces) {
      if (g.parametric || same_body_face(g, lo) || same_body_face(g, hi)) continue;
      if (face_contains(body, g, lo) && face_contains(body, hi, g))
        throw InputError(ErrorCode::invalid_argument, "chain is not maximal: face " + g.id + " fits between steps " +
                                                          std::to_string(j) + " and " + std::to_string(j + 1));
    }
  }

  AbelianWitness out;
  out.chain = chain;
  for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
    const auto& lo = chain[j];
    const auto& hi = chain[j + 1];
    SurdVec beta;
    if (const auto* p = std::get_if<Polytope>(&body)) {
      // Expose lo inside the polytope hi.
      std::vector<RVec> pts;
      for (int v : hi.vertex_ids) pts.push_back(p->vertices()[v]);
      const auto sub = Polytope::hull(pts);
      std::set<RVec> lo_pts;
      for (int v : lo.vertex_ids) lo_pts.insert(p->vertices()[v]);
      std::vector<int> local;
      for (std::size_t i = 0; i < sub.vertices().size(); ++i)
        if (lo_pts.count(sub.vertices()[i])) local.push_back(static_cast<int>(i));
      RVec sum = zeros(p->ambient_dim());
      for (const auto& f : sub.facets())
        if (std::includes(f.vertex_ids.begin(), f.vertex_ids.end(), local.begin(), local.end())) sum = sum + f.normal;
      if (sub.argmax(sum) != local) throw std::logic_error("failed to expose a face inside its parent");
      beta = SurdVec(sum);
    } else if (hi.kind == FaceKind::whole) {
      if (!lo.exposed) throw InputError(ErrorCode::invalid_argument, "chain step below the whole body is not exposed");
      beta = lo.normal_cone_generators.front();
    } else {
      const SurdVec t = rot90(hi.normal_cone_generators.front());
      beta = equal(lo.witness(), hi.witness_points[2]) ? t : Rational(-1) * t;
    }
    out.betas.push_back(beta);
    auto d = beta.approx();
    out.basis.push_back(model.embed_a(std::span<const double>(d)));
  }
  for (const auto& a : out.basis)
    for (const auto& b : out.basis) out.max_bracket = std::max(out.max_bracket, MatrixModel::bracket(a, b).norm());
  for (const auto& w : chain.front().witness_points) {
    auto d = w.approx();
    const Mat x = model.embed_a(std::span<const double>(d));
    for (const auto& s : out.basis) out.max_witness_bracket = std::max(out.max_witness_bracket, MatrixModel::bracket(x, s).norm());
  }
  return out;
}

}  // namespace polar
