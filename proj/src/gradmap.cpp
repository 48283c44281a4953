#include "polarfaces/gradmap.hpp"

#include "polarfaces/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>
#include <regex>
#include <set>

namespace polar {

Polytope momentum_polytope(const FixedPointData& data) {
  if (data.values.empty()) throw InputError(ErrorCode::malformed_input, "fixed-point data is empty");
  const std::size_t n = data.values.front().size();
  for (const auto& v : data.values)
    if (v.size() != n) throw InputError(ErrorCode::dimension_mismatch, "fixed-point values of different dimensions");
  if (!data.labels.empty() && data.labels.size() != data.values.size())
    throw InputError(ErrorCode::malformed_input, "labels and values differ in length");
  return Polytope::hull(data.values);
}

// ---- projective model ------------------------------------------------------

ProjectiveModel ProjectiveModel::make(std::string_view name_in) {
  std::string name(name_in);
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  static const std::regex re(R"(proj\(?(\d+)\)?)");
  std::smatch m;
  if (!std::regex_match(name, m, re))
    throw InputError(ErrorCode::unknown_model, "unknown projective model '" + std::string(name_in) + "' (expected projN)");
  return ProjectiveModel(std::stoi(m[1]));
}

ProjectiveModel::ProjectiveModel(int n)
    : n_(n), group_(n >= 3 && n <= 6 ? MatrixModel::make("sym" + std::to_string(n)) : MatrixModel::make("sym3")) {
  if (n < 3 || n > 6) throw InputError(ErrorCode::unknown_model, "projective model requires 3 <= n <= 6");
}

std::string ProjectiveModel::description() const {
  return "real projective space RP^" + std::to_string(n_ - 1) + " under SO(" + std::to_string(n_) +
         "), mu([v]) = v v^T / |v|^2 - I/" + std::to_string(n_);
}

Mat ProjectiveModel::mu(const Vec& v) const {
  if (v.size() != n_) throw InputError(ErrorCode::dimension_mismatch, "point has the wrong dimension");
  return v * v.transpose() / v.squaredNorm() - Mat::Identity(n_, n_) / n_;
}

std::vector<double> ProjectiveModel::mu_a(const Vec& v) const {
  const Mat m = mu(v);
  std::vector<double> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = m(i, i);
  return out;
}

RVec ProjectiveModel::mu_a(const RVec& v) const {
  if (v.size() != static_cast<std::size_t>(n_)) throw InputError(ErrorCode::dimension_mismatch, "point has the wrong dimension");
  const Rational len = norm2(v);
  if (len == 0) throw InputError(ErrorCode::invalid_argument, "zero vector is not a projective point");
  RVec out(n_);
  for (int i = 0; i < n_; ++i) out[i] = v[i] * v[i] / len - Rational(1, n_);
  return out;
}

FixedPointData ProjectiveModel::fixed_points() const {
  FixedPointData d;
  for (int i = 0; i < n_; ++i) {
    d.values.push_back(mu_a(unit_vector(n_, i)));
    d.labels.push_back("[e" + std::to_string(i + 1) + "]");
  }
  return d;
}

double ProjectiveModel::mu_beta(const Vec& v, std::span<const double> beta) const {
  const double len = v.squaredNorm();
  double val = 0, mean = 0;
  for (int i = 0; i < n_; ++i) {
    val += beta[i] * v[i] * v[i] / len;
    mean += beta[i];
  }
  return val - mean / n_;
}

Vec ProjectiveModel::sample_point(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(n_);
  for (auto& x : v) x = g(rng);
  return v / v.norm();
}

double line_distance(const Vec& u, const Vec& v) {
  // Sine of the angle, from the rejection of u off v (stable near 0).
  const Vec a = u / u.norm();
  const Vec b = v / v.norm();
  return (a - a.dot(b) * b).norm();
}

FaceMaxSet face_max_set(const ProjectiveModel& model, const RVec& beta) {
  if (beta.size() != static_cast<std::size_t>(model.n()))
    throw InputError(ErrorCode::dimension_mismatch, "beta has the wrong dimension");
  FaceMaxSet out;
  const Rational top = *std::max_element(beta.begin(), beta.end());
  Rational sum = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    sum += beta[i];
    if (beta[i] == top) out.coordinates.push_back(static_cast<int>(i));
  }
  out.max_value = top - sum / model.n();
  out.whole = out.coordinates.size() == beta.size();
  return out;
}

// ---- face sets ---------------------------------------------------------------

FaceSetReport face_set_check(const ProjectiveModel& model, const RVec& beta, std::size_t samples, std::uint64_t seed,
                             double tol, ExecPolicy policy) {
  const int n = model.n();
  const FaceMaxSet fm = face_max_set(model, beta);
  FaceSetReport rep;
  rep.coordinates = fm.coordinates;
  rep.samples = samples;
  const std::vector<double> bd = to_double(beta);
  const double maxd = to_double(fm.max_value);
  std::vector<bool> in_block(n, false);
  for (int i : fm.coordinates) in_block[i] = true;

  // Uniform samples of X never beat the predicted maximum.
  const auto worst = worst_sample(samples, policy, [&](std::size_t i) {
    return model.mu_beta(model.sample_point(sample_seed(seed, i)), bd) - maxd;
  });
  rep.max_excess = worst.found() ? worst.value : 0.0;

  // Integer points with random supports: exact maximality versus support.
  struct Exact {
    bool maximal = false;
    bool inside = false;
    unsigned support = 0;
    RVec mu;
  };
  std::vector<Exact> res(samples);
  const std::uint64_t iseed = splitmix64(seed ^ 0x5EEDF00Dull);
  worst_sample(samples, policy, [&](std::size_t i) {
    std::mt19937_64 rng(sample_seed(iseed, i));
    std::uniform_int_distribution<unsigned> mask_d(1, (1u << n) - 1);
    std::uniform_int_distribution<int> val(1, 3);
    std::bernoulli_distribution neg(0.5);
    const unsigned mask = mask_d(rng);
    RVec x = zeros(n);
    bool inside = true;
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1u)) continue;
      x[j] = val(rng) * (neg(rng) ? -1 : 1);
      if (!in_block[j]) inside = false;
    }
    const RVec m = model.mu_a(x);
    const bool maximal = dot(m, beta) == fm.max_value;
    res[i] = {maximal, inside, mask, maximal ? m : RVec{}};
    return maximal == inside ? 0.0 : 1.0;
  });
  std::set<RVec> images;
  unsigned support = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    if (res[i].maximal != res[i].inside) {
      if (rep.support_mismatches++ == 0) rep.witness_seed = sample_seed(iseed, i);
    }
    if (res[i].maximal) {
      ++rep.maximizers;
      support |= res[i].support;
      images.insert(res[i].mu);
    }
  }
  for (int j = 0; j < n; ++j)
    if (support >> j & 1u) rep.argmax_support.push_back(j);
  if (!images.empty()) {
    const auto hull = Polytope::hull(std::vector<RVec>(images.begin(), images.end()));
    const auto fixed = model.fixed_points().values;
    bool all_fixed = true;
    for (const auto& v : hull.vertices()) {
      auto it = std::find(fixed.begin(), fixed.end(), v);
      if (it == fixed.end()) all_fixed = false;
      else rep.hull_vertices.push_back(static_cast<int>(it - fixed.begin()));
    }
    std::sort(rep.hull_vertices.begin(), rep.hull_vertices.end());
    rep.hull_matches = all_fixed && rep.hull_vertices == fm.coordinates;
  }
  rep.passed = rep.max_excess <= tol && rep.support_mismatches == 0 && rep.argmax_support == fm.coordinates &&
               rep.hull_matches;
  return rep;
}

// ---- parabolics --------------------------------------------------------------

std::vector<int> ParabolicDescriptor::block_of() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  std::vector<int> out(n, -1);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (int i : blocks[k]) out[i] = static_cast<int>(k);
  return out;
}

ParabolicDescriptor parabolic_of_beta(const RootSystem& rs, const RVec& beta) {
  if (beta.size() != rs.ambient_dim()) throw InputError(ErrorCode::dimension_mismatch, "beta has the wrong dimension");
  ParabolicDescriptor d;
  d.beta = beta;
  d.improper = is_zero(beta);
  for (std::size_t i = 0; i < rs.roots().size(); ++i) {
    const int s = sign(dot(rs.roots()[i], beta));
    (s > 0 ? d.roots_pos : s < 0 ? d.roots_neg : d.roots_zero).push_back(static_cast<int>(i));
  }
  const auto& f = rs.factors();
  if (f.size() == 1 && f[0].family == Family::A && rs.ambient_dim() == f[0].rank + 1u) {
    std::map<Rational, std::vector<int>, std::greater<>> groups;
    for (std::size_t i = 0; i < beta.size(); ++i) groups[beta[i]].push_back(static_cast<int>(i));
    for (auto& [v, idx] : groups) d.blocks.push_back(std::move(idx));
  }
  return d;
}

ParabolicDescriptor parabolic_of_face(const RootSystem& rs, const Polytope& P, const FaceRecord& F) {
  if (P.ambient_dim() != rs.ambient_dim()) throw InputError(ErrorCode::dimension_mismatch, "polytope and root system differ in dimension");
  if (F.vertex_ids.size() == P.vertices().size()) {
    auto d = parabolic_of_beta(rs, zeros(rs.ambient_dim()));
    d.note = "improper face: beta = 0 and Q^F = G";
    return d;
  }
  std::vector<const WeylElement*> stab;
  const std::set<RVec> face_pts = [&] {
    std::set<RVec> s;
    for (int v : F.vertex_ids) s.insert(P.vertices()[v]);
    return s;
  }();
  for (const auto& w : rs.weyl()) {
    bool fixes = true;
    for (const auto& v : face_pts)
      if (!face_pts.count(w.apply(v))) fixes = false;
    if (fixes) stab.push_back(&w);
  }
  auto average = [&](const RVec& x) {
    RVec s = zeros(x.size());
    for (const auto* w : stab) s = s + w->apply(x);
    return rs.project_to_a(Rational(1, static_cast<long>(stab.size())) * s);
  };
  std::vector<RVec> gens;
  RVec sum = zeros(rs.ambient_dim());
  for (const auto& f : P.facets())
    if (std::includes(f.vertex_ids.begin(), f.vertex_ids.end(), F.vertex_ids.begin(), F.vertex_ids.end())) {
      gens.push_back(f.normal);
      sum = sum + f.normal;
    }
  RVec beta = average(sum);
  std::string note;
  if (P.argmax(beta) != F.vertex_ids) {
    // Interior point of the fixed subcone: prime-weighted averaged generators.
    note = "stabilizer average exposes a larger face; used a weighted interior point of the fixed subcone";
    const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    beta = zeros(rs.ambient_dim());
    for (std::size_t i = 0; i < gens.size(); ++i) beta = beta + Rational(1, primes[i % 15]) * average(gens[i]);
    if (P.argmax(beta) != F.vertex_ids) throw std::logic_error("no stabilizer-fixed exposing direction found");
  }
  auto d = parabolic_of_beta(rs, primitive(beta));
  d.note = note;
  return d;
}

double parabolic_defect(const ParabolicDescriptor& d, const Mat& g, Side side) {
  const auto b = d.block_of();
  if (b.empty()) throw InputError(ErrorCode::unsupported_type, "block structure is only available for type A realizations");
  if (g.rows() != static_cast<Eigen::Index>(b.size()) || g.cols() != g.rows())
    throw InputError(ErrorCode::dimension_mismatch, "matrix does not match the block structure");
  double worst = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const bool forbidden = side == Side::plus ? b[i] > b[j] : b[i] < b[j];
      if (forbidden) worst = std::max(worst, std::abs(g(i, j)));
    }
  return worst;
}

Mat levi_projection(const ParabolicDescriptor& d, const Mat& g, Side side) {
  if (parabolic_defect(d, g, side) > 1e-12)
    throw InputError(ErrorCode::invalid_argument, std::string("matrix is not block ") +
                                                      (side == Side::plus ? "upper" : "lower") + " triangular");
  const auto b = d.block_of();
  Mat out = g;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[i] != b[j]) out(i, j) = 0;
  return out;
}

// ---- limits and retraction ---------------------------------------------------

LimitPoint limit_map(const ProjectiveModel& model, const RVec& beta, const Vec& x) {
  if (x.size() != model.n() || beta.size() != static_cast<std::size_t>(model.n()))
    throw InputError(ErrorCode::dimension_mismatch, "point or beta has the wrong dimension");
  const double cutoff = 1e-13 * x.norm();
  std::optional<Rational> top;
  for (int i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > cutoff && (!top || beta[i] > *top)) top = beta[i];
  if (!top) throw InputError(ErrorCode::invalid_argument, "zero vector is not a projective point");
  LimitPoint out;
  out.point = Vec::Zero(x.size());
  for (int i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > cutoff && beta[i] == *top) {
      out.point[i] = x[i];
      out.support.push_back(i);
    }
  out.point /= out.point.norm();
  out.in_domain = *top == *std::max_element(beta.begin(), beta.end());
  return out;
}

namespace {

// Random invertible matrix with the forbidden blocks of the given side set to zero.
Mat random_parabolic(const std::vector<int>& block_of, Side side, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const int n = static_cast<int>(block_of.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const bool forbidden = side == Side::plus ? block_of[i] > block_of[j] : block_of[i] < block_of[j];
      m(i, j) = forbidden ? 0.0 : g(rng);
    }
  // Keep the diagonal blocks well conditioned.
  m += 2.0 * n * Mat::Identity(n, n);
  return m;
}

double off_block_sine(const Vec& y, const std::vector<bool>& inside) {
  double out = 0;
  for (int i = 0; i < y.size(); ++i)
    if (!inside[i]) out += y[i] * y[i];
  return std::sqrt(out) / y.norm();
}

}  // namespace

RetractionReport retraction_check(const ProjectiveModel& model, const std::vector<int>& face_coordinates,
                                  const std::vector<RVec>& betas, std::size_t samples, std::uint64_t seed, double tol,
                                  ExecPolicy policy) {
  const int n = model.n();
  if (betas.size() < 2) throw InputError(ErrorCode::invalid_argument, "retraction check needs at least two betas");
  for (std::size_t i = 0; i < betas.size(); ++i)
    for (std::size_t j = i + 1; j < betas.size(); ++j)
      if (betas[i] == betas[j]) throw InputError(ErrorCode::invalid_argument, "betas must be distinct");
  std::vector<int> coords = face_coordinates;
  std::sort(coords.begin(), coords.end());
  if (coords.empty() || coords.back() >= n || coords.front() < 0)
    throw InputError(ErrorCode::invalid_argument, "face coordinates out of range");
  std::vector<bool> inside(n, false);
  for (int i : coords) inside[i] = true;

  RetractionReport rep;
  rep.coordinates = coords;
  rep.samples = samples;
  for (const auto& b : betas) {
    rep.beta_exposes.push_back(face_max_set(model, b).coordinates == coords);
    std::set<Rational> in, out;
    for (int i = 0; i < n; ++i) (inside[i] ? in : out).insert(b[i]);
    rep.beta_fixed.push_back(in.size() == 1 && out.size() <= 1);
  }
  if (std::find(rep.beta_fixed.begin(), rep.beta_fixed.end(), false) != rep.beta_fixed.end())
    rep.note = "some beta is not fixed by the stabilizer of the face";

  const auto rs = RootSystem::build("A" + std::to_string(n - 1));
  const auto desc = parabolic_of_beta(rs, betas.front());
  const auto block_of = desc.block_of();
  const std::vector<double> b0 = to_double(betas.front());
  const double top = *std::max_element(b0.begin(), b0.end());

  struct Result {
    double independence = 0;
    bool support_mismatch = false;
    double idempotence = 0;
    double equivariance = 0;
    int monotone = 0;
    bool miss = false;
  };
  std::vector<Result> res(samples);
  auto run = [&](std::size_t i) {
    std::mt19937_64 rng(sample_seed(seed, i));
    std::normal_distribution<double> g(0.0, 1.0);
    Vec x(n);
    for (auto& c : x) c = g(rng);
    if (i % 2 == 1) {
      // Partial support that still meets the face block.
      std::uniform_int_distribution<unsigned> mask_d(1, (1u << n) - 1);
      unsigned mask = mask_d(rng);
      mask |= 1u << coords[std::uniform_int_distribution<std::size_t>(0, coords.size() - 1)(rng)];
      for (int j = 0; j < n; ++j)
        if (!(mask >> j & 1u)) x[j] = 0;
    }
    Result r;
    const auto p0 = limit_map(model, betas.front(), x);
    r.miss = !p0.in_domain;
    for (std::size_t k = 1; k < betas.size(); ++k) {
      const auto pk = limit_map(model, betas[k], x);
      r.independence = std::max(r.independence, line_distance(p0.point, pk.point));
      if (pk.support != p0.support) r.support_mismatch = true;
    }
    const auto pp = limit_map(model, betas.front(), p0.point);
    if (pp.support != p0.support) r.support_mismatch = true;
    r.idempotence = line_distance(pp.point, p0.point);

    const Mat q = random_parabolic(block_of, Side::minus, rng);
    const Vec y = q * x;
    const auto py = limit_map(model, betas.front(), y);
    const Vec levi = levi_projection(desc, q, Side::minus) * p0.point;
    r.equivariance = line_distance(py.point, levi);

    // Distance of exp(t beta) . x to the limit along a time grid.
    double prev = 1e300;
    for (int step = 0; step <= 48; ++step) {
      const double t = 0.25 * step;
      Vec z(n);
      for (int j = 0; j < n; ++j) z[j] = std::exp(t * (b0[j] - top)) * x[j];
      const double dist = line_distance(z, p0.point);
      if (dist > prev + 1e-12) ++r.monotone;
      prev = dist;
    }
    res[i] = r;
    return std::max({r.independence, r.idempotence, r.equivariance}) + (r.support_mismatch || r.miss || r.monotone ? 1.0 : 0.0);
  };
  const auto worst = worst_sample(samples, policy, run);
  for (const auto& r : res) {
    rep.independence_gap = std::max(rep.independence_gap, r.independence);
    rep.idempotence_gap = std::max(rep.idempotence_gap, r.idempotence);
    rep.equivariance_gap = std::max(rep.equivariance_gap, r.equivariance);
    rep.support_mismatches += r.support_mismatch;
    rep.monotonicity_violations += r.monotone;
    rep.domain_misses += r.miss;
  }
  if (worst.found()) {
    rep.witness_index = worst.index;
    rep.witness_seed = sample_seed(seed, worst.index);
  }
  const bool exposes = std::all_of(rep.beta_exposes.begin(), rep.beta_exposes.end(), [](bool b) { return b; });
  rep.passed = exposes && rep.independence_gap <= tol && rep.idempotence_gap <= tol && rep.equivariance_gap <= tol &&
               rep.support_mismatches == 0 && rep.monotonicity_violations == 0 && rep.domain_misses == 0;
  return rep;
}

ParabolicOracleReport parabolic_oracle(const ProjectiveModel& model, const ParabolicDescriptor& d,
                                       std::size_t samples, std::uint64_t seed, double tol, ExecPolicy policy) {
  const int n = model.n();
  const auto block_of = d.block_of();
  if (static_cast<int>(block_of.size()) != n)
    throw InputError(ErrorCode::dimension_mismatch, "block structure does not match the model");
  ParabolicOracleReport rep;
  rep.coordinates = d.blocks.front();
  std::vector<bool> inside(n, false);
  for (int i : rep.coordinates) inside[i] = true;
  std::vector<double> bd = to_double(d.beta);
  Mat B = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) B(i, i) = bd[i];
  if (B.norm() > 0) B /= B.norm();

  auto preserves = [&](const Mat& g, std::mt19937_64& rng) {
    std::normal_distribution<double> gd(0.0, 1.0);
    double worst = 0;
    for (int s = 0; s < 3; ++s) {
      Vec x = Vec::Zero(n);
      for (int i : rep.coordinates) x[i] = gd(rng);
      worst = std::max(worst, off_block_sine(g * x, inside));
    }
    return worst <= tol;
  };

  struct Group {
    bool triangular = false, preserving = false;
  };
  std::vector<Group> gres(samples);
  const std::uint64_t gseed = splitmix64(seed ^ 0x9A7AB0C1ull);
  worst_sample(samples, policy, [&](std::size_t i) {
    std::mt19937_64 rng(sample_seed(gseed, i));
    std::normal_distribution<double> gd(0.0, 1.0);
    Mat g;
    switch (i % 3) {
      case 0: g = random_parabolic(block_of, Side::plus, rng); break;
      case 1:
        g = Mat(n, n);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) g(r, c) = gd(rng);
        break;
      default: {
        // Block upper triangular except for one small entry below the diagonal blocks.
        g = random_parabolic(block_of, Side::plus, rng);
        std::vector<std::pair<int, int>> slots;
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c)
            if (block_of[r] > block_of[c]) slots.emplace_back(r, c);
        if (!slots.empty()) {
          const auto [r, c] = slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng)];
          g(r, c) = std::pow(10.0, std::uniform_real_distribution<double>(-3, 0)(rng)) * (gd(rng) < 0 ? -1 : 1);
        }
      }
    }
    Group r{parabolic_defect(d, g, Side::plus) <= tol, preserves(g, rng)};
    gres[i] = r;
    return r.triangular == r.preserving ? 0.0 : 1.0;
  });

  struct Orth {
    bool block = false, preserving = false, centralizes = false;
  };
  std::vector<Orth> ores(samples);
  const std::uint64_t oseed = splitmix64(seed ^ 0x0A7B0C1Dull);
  worst_sample(samples, policy, [&](std::size_t i) {
    std::mt19937_64 rng(sample_seed(oseed, i));
    Mat k;
    if (i % 2 == 0) {
      k = Mat::Zero(n, n);
      for (const auto& blk : d.blocks) {
        const Mat q = haar_orthogonal(static_cast<int>(blk.size()), rng, false);
        for (std::size_t a = 0; a < blk.size(); ++a)
          for (std::size_t b = 0; b < blk.size(); ++b) k(blk[a], blk[b]) = q(a, b);
      }
      if (k.determinant() < 0) k.col(d.blocks.front().front()) *= -1;
    } else {
      k = model.group().sample_K(sample_seed(oseed, i) ^ 0xA5A5A5A5ull);
    }
    Orth r;
    double off = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (block_of[a] != block_of[b]) off = std::max(off, std::abs(k(a, b)));
    r.block = off <= tol;
    r.preserving = preserves(k, rng);
    r.centralizes = (k * B * k.transpose() - B).norm() <= tol;
    ores[i] = r;
    return r.block == r.preserving && r.block == r.centralizes ? 0.0 : 1.0;
  });

  rep.group_samples = samples;
  rep.orthogonal_samples = samples;
  bool witness = false;
  for (std::size_t i = 0; i < samples; ++i) {
    rep.triangular += gres[i].triangular;
    rep.preserving += gres[i].preserving;
    if (gres[i].triangular != gres[i].preserving) {
      ++rep.group_mismatches;
      if (!witness) rep.witness_index = i, witness = true;
    }
    rep.block_orthogonal += ores[i].block;
    rep.orthogonal_preserving += ores[i].preserving;
    if (ores[i].block != ores[i].preserving) ++rep.orthogonal_mismatches;
    // With beta = 0 every k centralizes; only the block-orthogonal direction is meaningful then.
    if (!d.improper && ores[i].block != ores[i].centralizes) ++rep.centralizer_mismatches;
  }
  rep.passed = rep.group_mismatches == 0 && rep.orthogonal_mismatches == 0 && rep.centralizer_mismatches == 0;
  return rep;
}

std::vector<int> face_coordinates(const ProjectiveModel& model, const Polytope& P, const FaceRecord& F) {
  const auto fixed = model.fixed_points().values;
  std::vector<int> out;
  for (int v : F.vertex_ids) {
    auto it = std::find(fixed.begin(), fixed.end(), P.vertices().at(v));
    if (it == fixed.end()) throw InputError(ErrorCode::invalid_argument, "face vertex is not a fixed point of the model");
    out.push_back(static_cast<int>(it - fixed.begin()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace polar
