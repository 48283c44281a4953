#include "polarfaces/matmodel.hpp"

#include "polarfaces/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <regex>

namespace polar {

namespace {

Mat unit(int size, int i, int j) {
  Mat m = Mat::Zero(size, size);
  m(i, j) = 1;
  return m;
}

}  // namespace

Mat haar_orthogonal(int n, std::mt19937_64& rng, bool special) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1;
  if (special && q.determinant() < 0) q.col(0) *= -1;
  return q;
}

MatrixModel MatrixModel::make(std::string_view name_in) {
  std::string name(name_in);
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  MatrixModel m;
  if (name == "a1xa1" || name == "a1*a1") {
    m.kind_ = ModelKind::a1xa1;
    m.n_ = 4;
    m.size_ = 8;
    m.scale_ = 2;
    m.rs_ = RootSystem::build("A1xA1");
    for (int b = 0; b < 2; ++b) {
      for (int i = 0; i < 3; ++i)
        m.p_basis_.push_back((unit(8, 4 * b + i, 4 * b + 3) + unit(8, 4 * b + 3, 4 * b + i)) / std::sqrt(2.0));
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) m.k_basis_.push_back(unit(8, 4 * b + i, 4 * b + j) - unit(8, 4 * b + j, 4 * b + i));
    }
    return m;
  }
  static const std::regex sym_re(R"(sym\(?(\d+)\)?)");
  std::smatch match;
  if (!std::regex_match(name, match, sym_re))
    throw InputError(ErrorCode::unknown_model, "unknown matrix model '" + std::string(name_in) + "' (expected symN or a1xa1)");
  const int n = std::stoi(match[1]);
  if (n < 2 || n > 6) throw InputError(ErrorCode::unknown_model, "sym(n) requires 2 <= n <= 6");
  m.kind_ = ModelKind::sym;
  m.n_ = n;
  m.size_ = n;
  m.scale_ = n == 2 ? 2 : 1;
  m.rs_ = RootSystem::build("A" + std::to_string(n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.p_basis_.push_back((unit(n, i, j) + unit(n, j, i)) / std::sqrt(2.0));
  // Helmert basis of the traceless diagonal.
  for (int k = 1; k < n; ++k) {
    Mat d = Mat::Zero(n, n);
    for (int i = 0; i < k; ++i) d(i, i) = 1;
    d(k, k) = -k;
    m.p_basis_.push_back(d / std::sqrt(static_cast<double>(k * (k + 1))));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.k_basis_.push_back(unit(n, i, j) - unit(n, j, i));
  return m;
}

std::string MatrixModel::name() const {
  if (kind_ == ModelKind::a1xa1) return "a1xa1";
  return "sym" + std::to_string(n_);
}

std::string MatrixModel::inner_product_note() const {
  if (kind_ == ModelKind::a1xa1)
    return "<x,y> = tr(xy) on 8x8 block boosts; a = boosts along e1 in each block, tr form = 2 * standard";
  if (n_ == 2) return "<x,y> = tr(xy); a = diag(t,-t), tr form = 2 * standard on the coordinate t";
  return "<x,y> = tr(xy); a = traceless diagonal, isometric to the sum-zero hyperplane";
}

Mat MatrixModel::embed_a(std::span<const double> x) const {
  if (x.size() != rs_.ambient_dim())
    throw InputError(ErrorCode::dimension_mismatch, "vector does not match the model's Cartan subspace");
  Mat m = Mat::Zero(size_, size_);
  if (kind_ == ModelKind::a1xa1) {
    for (int b = 0; b < 2; ++b) m(4 * b, 4 * b + 3) = m(4 * b + 3, 4 * b) = x[b];
  } else if (n_ == 2) {
    m(0, 0) = x[0];
    m(1, 1) = -x[0];
  } else {
    for (int i = 0; i < n_; ++i) m(i, i) = x[i];
  }
  return m;
}

Mat MatrixModel::embed_a(const RVec& x) const {
  auto d = to_double(x);
  return embed_a(std::span<const double>(d));
}

std::vector<double> MatrixModel::project_a(const Mat& x) const {
  if (x.rows() != size_ || x.cols() != size_) throw InputError(ErrorCode::dimension_mismatch, "matrix shape mismatch");
  if (kind_ == ModelKind::a1xa1) return {x(0, 3), x(4, 7)};
  if (n_ == 2) return {(x(0, 0) - x(1, 1)) / 2};
  std::vector<double> d(n_);
  const double mean = x.trace() / n_;
  for (int i = 0; i < n_; ++i) d[i] = x(i, i) - mean;
  return d;
}

Vec MatrixModel::p_coords(const Mat& x) const {
  Vec c(p_basis_.size());
  for (std::size_t i = 0; i < p_basis_.size(); ++i) c[static_cast<Eigen::Index>(i)] = inner(p_basis_[i], x);
  return c;
}

Mat MatrixModel::from_p_coords(const Vec& c) const {
  Mat m = Mat::Zero(size_, size_);
  for (std::size_t i = 0; i < p_basis_.size(); ++i) m += c[static_cast<Eigen::Index>(i)] * p_basis_[i];
  return m;
}

Mat MatrixModel::sample_K(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  if (kind_ == ModelKind::sym) return haar_orthogonal(n_, rng, true);
  Mat k = Mat::Identity(8, 8);
  k.block(0, 0, 3, 3) = haar_orthogonal(3, rng, true);
  k.block(4, 4, 3, 3) = haar_orthogonal(3, rng, true);
  return k;
}

Mat MatrixModel::sample_p(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Vec c(p_basis_.size());
  for (auto& v : c) v = g(rng);
  return from_p_coords(c);
}

std::vector<Mat> MatrixModel::centralizer_k(std::span<const Mat> B, double tol) const {
  if (B.empty()) return k_basis_;
  const Eigen::Index block = static_cast<Eigen::Index>(size_) * size_;
  Mat op(block * static_cast<Eigen::Index>(B.size()), static_cast<Eigen::Index>(k_basis_.size()));
  for (std::size_t j = 0; j < k_basis_.size(); ++j) {
    for (std::size_t b = 0; b < B.size(); ++b) {
      if (B[b].rows() != size_ || B[b].cols() != size_) throw InputError(ErrorCode::dimension_mismatch, "matrix shape mismatch");
      Mat c = bracket(k_basis_[j], B[b]);
      op.block(block * static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(j), block, 1) =
          Eigen::Map<const Vec>(c.data(), block);
    }
  }
  Eigen::JacobiSVD<Mat> svd(op, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = tol * std::max(1.0, s.size() ? s[0] : 0.0);
  std::vector<Mat> out;
  const Mat& V = svd.matrixV();
  for (Eigen::Index c = 0; c < V.cols(); ++c) {
    const double sv = c < s.size() ? s[c] : 0.0;
    if (sv > cutoff) continue;
    Mat k = Mat::Zero(size_, size_);
    for (std::size_t j = 0; j < k_basis_.size(); ++j) k += V(static_cast<Eigen::Index>(j), c) * k_basis_[j];
    out.push_back(std::move(k));
  }
  return out;
}

std::vector<double> MatrixModel::dominant_a(const Mat& x) const {
  if (kind_ == ModelKind::a1xa1) {
    return {std::hypot(x(0, 3), x(1, 3), x(2, 3)), std::hypot(x(4, 7), x(5, 7), x(6, 7))};
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (x + x.transpose()), Eigen::EigenvaluesOnly);
  Vec ev = es.eigenvalues();
  std::vector<double> d(ev.data(), ev.data() + ev.size());
  std::sort(d.begin(), d.end(), std::greater<>());
  if (n_ == 2) return {d[0]};
  return d;
}

int numeric_rank(const Mat& columns, double rel_cutoff) {
  if (columns.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(columns);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_cutoff * s[0]) ++r;
  return r;
}

TangentDim tangent_dim_face(const MatrixModel& model, const FaceRecord& sigma, std::span<const SurdVec> sigma_perp,
                            std::span<const std::vector<double>> witnesses) {
  std::vector<std::vector<double>> pts(witnesses.begin(), witnesses.end());
  if (pts.empty())
    for (const auto& w : sigma.witness_points) pts.push_back(w.approx());
  std::vector<Mat> perp;
  for (const auto& v : sigma_perp) {
    auto d = v.approx();
    perp.push_back(model.embed_a(std::span<const double>(d)));
  }
  const auto kperp = model.centralizer_k(perp);
  std::vector<Vec> dir;
  for (const auto& v : sigma.direction_basis) {
    auto d = v.approx();
    dir.push_back(model.p_coords(model.embed_a(std::span<const double>(d))));
  }
  TangentDim out;
  for (const auto& x : pts) {
    const Mat X = model.embed_a(std::span<const double>(x));
    Mat cols(model.p_dim(), static_cast<Eigen::Index>(dir.size() + kperp.size()));
    Eigen::Index c = 0;
    for (const auto& d : dir) cols.col(c++) = d;
    for (const auto& k : kperp) cols.col(c++) = model.p_coords(MatrixModel::bracket(k, X));
    out.ranks.push_back(numeric_rank(cols));
  }
  out.rank = out.ranks.empty() ? 0 : out.ranks.front();
  out.stable = std::all_of(out.ranks.begin(), out.ranks.end(), [&](int r) { return r == out.rank; });
  return out;
}

KostantReport kostant_check(const MatrixModel& model, const Mat& x, std::size_t samples, std::uint64_t seed, double tol,
                            ExecPolicy policy) {
  const auto& rs = model.root_system();
  KostantReport rep;
  rep.samples = samples;
  rep.tol = tol;
  rep.dominant = model.dominant_a(x);

  struct Weight {
    std::vector<std::vector<double>> orbit;
    double bound;
  };
  std::vector<Weight> weights;
  for (const auto& w : rs.fundamental_weights()) {
    const double norm = std::sqrt(to_double(norm2(w)));
    Weight wt;
    for (const auto& o : rs.weyl_orbit(w)) {
      auto d = to_double(o);
      for (auto& v : d) v /= norm;
      wt.orbit.push_back(std::move(d));
    }
    auto wd = to_double(w);
    wt.bound = 0;
    for (std::size_t i = 0; i < wd.size(); ++i) wt.bound += wd[i] / norm * rep.dominant[i];
    weights.push_back(std::move(wt));
  }
  auto violation = [&](const std::vector<double>& y) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& wt : weights) {
      for (const auto& o : wt.orbit) {
        double v = -wt.bound;
        for (std::size_t i = 0; i < y.size(); ++i) v += o[i] * y[i];
        worst = std::max(worst, v);
      }
    }
    return worst;
  };
  auto score = [&](std::size_t i) {
    const Mat k = model.sample_K(sample_seed(seed, i));
    return violation(model.project_a(model.act(k, x)));
  };
  const auto worst = worst_sample(samples, policy, score);
  if (worst.found()) {
    rep.max_violation = std::max(0.0, worst.value);
    rep.worst_index = worst.index;
    rep.worst_seed = sample_seed(seed, worst.index);
    rep.worst_projection = model.project_a(model.act(model.sample_K(rep.worst_seed), x));
  }
  rep.passed = rep.max_violation <= tol;
  return rep;
}

}  // namespace polar
