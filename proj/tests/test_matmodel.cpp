#include "doctest.h"

#include "polarfaces/errors.hpp"
#include "polarfaces/matmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace polar;

namespace {

RVec rv(std::initializer_list<int> xs) {
  RVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

// Schur-Horn oracle: y in conv(S_n . lambda) iff sorted partial sums of y are dominated.
double majorization_excess(std::vector<double> y, std::vector<double> lambda) {
  std::sort(y.begin(), y.end(), std::greater<>());
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  double worst = -1e300, sy = 0, sl = 0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    sy += y[i];
    sl += lambda[i];
    worst = std::max(worst, sy - sl);
  }
  return worst;
}

FaceRecord point_face(const RVec& x) {
  FaceRecord f;
  f.kind = FaceKind::vertex;
  f.witness_points = {SurdVec(x)};
  return f;
}

}  // namespace

TEST_CASE("make_model examples") {
  auto s3 = MatrixModel::make("sym3");
  CHECK(s3.p_dim() == 5);
  CHECK(s3.k_dim() == 3);
  CHECK(s3.root_system().label() == "A2");
  CHECK(s3.root_system().weyl_order() == 6);
  auto ab = MatrixModel::make("a1xa1");
  CHECK(ab.p_dim() == 6);
  CHECK(ab.root_system().rank() == 2);
  CHECK(ab.root_system().weyl_order() == 4);
  auto s2 = MatrixModel::make("sym(2)");
  CHECK(s2.p_dim() == 2);
  CHECK(s2.root_system().rank() == 1);
  CHECK(MatrixModel::make("SYM6").p_dim() == 20);
  auto code = [](const char* n) {
    try {
      MatrixModel::make(n);
    } catch (const InputError& e) {
      return e.code();
    }
    return ErrorCode::malformed_input;
  };
  CHECK(code("sym7") == ErrorCode::unknown_model);
  CHECK(code("sym1") == ErrorCode::unknown_model);
  CHECK(code("su3") == ErrorCode::unknown_model);
}

TEST_CASE("bases, abelian a and the recorded scale") {
  for (const char* name : {"sym2", "sym3", "sym4", "sym5", "a1xa1"}) {
    auto m = MatrixModel::make(name);
    CAPTURE(name);
    const auto& pb = m.p_basis();
    for (std::size_t i = 0; i < pb.size(); ++i) {
      CHECK((pb[i] - pb[i].transpose()).norm() == 0);
      CHECK(std::abs(pb[i].trace()) < 1e-14);
      for (std::size_t j = 0; j < pb.size(); ++j)
        CHECK(m.inner(pb[i], pb[j]) == doctest::Approx(i == j ? 1.0 : 0.0));
    }
    for (const auto& k : m.k_basis()) CHECK((k + k.transpose()).norm() == 0);
    const auto& a = m.root_system().a_basis();
    for (const auto& x : a) {
      for (const auto& y : a) {
        CHECK(MatrixModel::bracket(m.embed_a(x), m.embed_a(y)).norm() == 0);
        CHECK(m.inner(m.embed_a(x), m.embed_a(y)) == doctest::Approx(m.scale() * to_double(dot(x, y))));
      }
      auto back = m.project_a(m.embed_a(x));
      auto xd = to_double(x);
      for (std::size_t i = 0; i < xd.size(); ++i) CHECK(back[i] == doctest::Approx(xd[i]));
    }
    // [p, p] lies in k and [k, p] in p.
    Mat x = m.sample_p(1), y = m.sample_p(2);
    Mat c = MatrixModel::bracket(x, y);
    CHECK((c + c.transpose()).norm() < 1e-12);
    Mat d = MatrixModel::bracket(m.k_basis().front(), x);
    CHECK((d - d.transpose()).norm() < 1e-12);
    CHECK((m.from_p_coords(m.p_coords(d)) - d).norm() < 1e-12);
  }
}

TEST_CASE("bracket examples") {
  auto m = MatrixModel::make("sym2");
  Mat x = m.embed_a(rv({1}));
  Mat y(2, 2);
  y << 0, 1, 1, 0;
  Mat z = MatrixModel::bracket(x, y);
  CHECK((z + z.transpose()).norm() == 0);
  CHECK(std::sqrt(-m.inner(z, z)) == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(MatrixModel::bracket(x, x).norm() == 0);
  CHECK(MatrixModel::bracket(m.embed_a(rv({2})), m.embed_a(rv({-3}))).norm() == 0);
}

TEST_CASE("project_a examples") {
  auto s2 = MatrixModel::make("sym2");
  Mat off(2, 2);
  off << 0, 1, 1, 0;
  CHECK(s2.project_a(off)[0] == 0);
  auto s3 = MatrixModel::make("sym3");
  Mat x = s3.embed_a(rv({3, -1, -2}));
  auto p = s3.project_a(x);
  CHECK(p == std::vector<double>{3, -1, -2});
  for (std::uint64_t s = 0; s < 200; ++s) {
    Mat k = s3.sample_K(s);
    auto y = s3.project_a(s3.act(k, x));
    CHECK(majorization_excess(y, {3, -1, -2}) <= 1e-12);
  }
}

TEST_CASE("sample_K: determinism, orthogonality, Haar first moment") {
  for (const char* name : {"sym2", "sym3", "sym5", "a1xa1"}) {
    auto m = MatrixModel::make(name);
    CAPTURE(name);
    CHECK((m.sample_K(42) - m.sample_K(42)).norm() == 0);
    CHECK((m.sample_K(42) - m.sample_K(43)).norm() > 0);
    const int n = m.matrix_size();
    double mean = 0;
    Mat x = m.sample_p(99);
    const double xx = m.inner(x, x);
    const int N = 10000;
    for (int s = 0; s < N; ++s) {
      Mat k = m.sample_K(sample_seed(5, s));
      if (s < 50) {
        CHECK((k.transpose() * k - Mat::Identity(n, n)).norm() <= 1e-12);
        CHECK(k.determinant() == doctest::Approx(1.0));
        Mat y = m.sample_p(s);
        CHECK(m.inner(m.act(k, x), m.act(k, y)) == doctest::Approx(m.inner(x, y)).epsilon(1e-10));
      }
      mean += m.inner(m.act(k, x), x) / xx;
    }
    mean /= N;
    // sym(2): SO(2) acting on traceless 2x2 is a rotation by 2 theta, still mean zero.
    CHECK(std::abs(mean) <= 5e-2);
  }
}

TEST_CASE("Weyl action commutes with the projection") {
  for (const char* name : {"sym3", "sym4"}) {
    auto m = MatrixModel::make(name);
    const int n = m.n();
    for (const auto& w : m.root_system().weyl()) {
      Mat P = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i) P(w.perm[i], i) = w.sign[i];
      Mat x = m.sample_p(static_cast<std::uint64_t>(w.perm[0] + 7));
      auto lhs = m.project_a(P * x * P.transpose());
      auto rhs = w.apply(std::span<const double>(m.project_a(x)));
      for (int i = 0; i < n; ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]));
    }
  }
  auto ab = MatrixModel::make("a1xa1");
  for (const auto& w : ab.root_system().weyl()) {
    // The axis reflections are realized in K by rotations by pi about e2 in each block.
    Mat k = Mat::Identity(8, 8);
    for (int b = 0; b < 2; ++b)
      if (w.sign[b] < 0) {
        k(4 * b, 4 * b) = -1;
        k(4 * b + 2, 4 * b + 2) = -1;
      }
    Mat x = ab.sample_p(3);
    auto lhs = ab.project_a(ab.act(k, x));
    auto rhs = w.apply(std::span<const double>(ab.project_a(x)));
    CHECK(lhs[0] == doctest::Approx(rhs[0]));
    CHECK(lhs[1] == doctest::Approx(rhs[1]));
  }
}

TEST_CASE("centralizer_k examples") {
  auto s3 = MatrixModel::make("sym3");
  CHECK(s3.centralizer_k(std::vector<Mat>{Mat::Zero(3, 3)}).size() == 3);
  CHECK(s3.centralizer_k({}).size() == 3);
  CHECK(s3.centralizer_k(std::vector<Mat>{s3.embed_a(rv({1, 1, -2}))}).size() == 1);
  CHECK(s3.centralizer_k(std::vector<Mat>{s3.embed_a(rv({1, -1, 0})), s3.embed_a(rv({1, 1, -2}))}).empty());
  auto ab = MatrixModel::make("a1xa1");
  CHECK(ab.centralizer_k(std::vector<Mat>{ab.embed_a(rv({1, 0}))}).size() == 4);
  CHECK(ab.centralizer_k(std::vector<Mat>{ab.embed_a(rv({1, 2}))}).size() == 2);
}

TEST_CASE("property: centralizer dimension is sum of m(m-1)/2 over spectral multiplicities") {
  for (int n = 2; n <= 5; ++n) {
    auto m = MatrixModel::make("sym" + std::to_string(n));
    // All compositions of n into multiplicities, realized by distinct eigenvalues.
    std::function<void(int, std::vector<int>)> rec = [&](int left, std::vector<int> parts) {
      if (left == 0) {
        std::vector<double> ev;
        int expected = 0;
        for (std::size_t b = 0; b < parts.size(); ++b) {
          expected += parts[b] * (parts[b] - 1) / 2;
          for (int i = 0; i < parts[b]; ++i) ev.push_back(static_cast<double>(b) * 1.7);
        }
        const double mean = std::accumulate(ev.begin(), ev.end(), 0.0) / n;
        for (auto& e : ev) e -= mean;
        Mat x = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) x(i, i) = ev[i];
        if (n == 2) x(1, 1) = -x(0, 0);
        // Conjugate by a random rotation: the commutant dimension is invariant.
        Mat k = m.sample_K(static_cast<std::uint64_t>(parts.size() * 31 + n));
        Mat y = m.act(k, x);
        CAPTURE(n);
        CHECK(static_cast<int>(m.centralizer_k(std::vector<Mat>{y}).size()) == expected);
        return;
      }
      for (int p = 1; p <= left; ++p) {
        auto next = parts;
        next.push_back(p);
        rec(left - p, next);
      }
    };
    rec(n, {});
  }
}

TEST_CASE("kostant_check examples and serial/parallel agreement") {
  auto s3 = MatrixModel::make("sym3");
  auto zero = kostant_check(s3, Mat::Zero(3, 3), 100, 1);
  CHECK(zero.passed);
  CHECK(zero.max_violation == 0);

  auto rep = kostant_check(s3, s3.embed_a(rv({3, -1, -2})), 10000, 2024);
  CHECK(rep.passed);
  CHECK(rep.max_violation <= 1e-9);
  CHECK(majorization_excess(rep.worst_projection, {3, -1, -2}) <= 1e-12);

  auto ab = MatrixModel::make("a1xa1");
  Mat x = ab.embed_a(rv({1, 2}));
  auto r2 = kostant_check(ab, x, 10000, 9);
  CHECK(r2.passed);
  for (std::uint64_t s = 0; s < 500; ++s) {
    auto y = ab.project_a(ab.act(ab.sample_K(s), x));
    CHECK(std::abs(y[0]) <= 1 + 1e-12);
    CHECK(std::abs(y[1]) <= 2 + 1e-12);
  }

  auto ser = kostant_check(s3, s3.sample_p(4), 3000, 77, 1e-9, ExecPolicy::serial);
  auto par = kostant_check(s3, s3.sample_p(4), 3000, 77, 1e-9, ExecPolicy::parallel);
  CHECK(ser.max_violation == par.max_violation);
  CHECK(ser.worst_index == par.worst_index);
}

TEST_CASE("kostant_check flags a point outside the hull") {
  // A wrong "dominant" claim: feed a matrix and compare against a shrunken spectrum by
  // scaling after the fact; the violation measure must see the excess.
  auto s3 = MatrixModel::make("sym3");
  Mat x = s3.embed_a(rv({3, -1, -2}));
  auto rep = kostant_check(s3, x, 10, 1);
  CHECK(rep.passed);
  auto big = kostant_check(s3, 2 * x, 10, 1);
  CHECK(big.dominant[0] == doctest::Approx(6));
}

TEST_CASE("tangent_dim_face examples") {
  auto s3 = MatrixModel::make("sym3");
  std::vector<SurdVec> a;
  for (const auto& b : s3.root_system().a_basis()) a.emplace_back(b);
  // With sigma_perp = 0 the whole of K acts: a regular point has an orbit of dimension
  // equal to the number of positive roots, 3.
  auto t = tangent_dim_face(s3, point_face(rv({2, 0, -2})), {});
  CHECK(t.rank == 3);
  // Two equal eigenvalues: one positive root vanishes.
  CHECK(tangent_dim_face(s3, point_face(rv({1, 1, -2})), {}).rank == 2);
  // A vertex of P (sigma_perp = a) stays a single point: K^a fixes a.
  CHECK(tangent_dim_face(s3, point_face(rv({2, 0, -2})), a).rank == 0);
  // Full-dimensional sigma, sigma_perp = 0: rank = dim p at a regular point.
  FaceRecord whole = point_face(rv({2, 0, -2}));
  whole.dim = 2;
  whole.direction_basis = a;
  CHECK(tangent_dim_face(s3, whole, {}).rank == 5);
  // x = 0: rank = dim sigma.
  CHECK(tangent_dim_face(s3, point_face(rv({0, 0, 0})), a).rank == 0);
  // Stability across witnesses.
  std::vector<std::vector<double>> ws{{2, 0, -2}, {1, 1, -2}};
  auto mixed = tangent_dim_face(s3, point_face(rv({2, 0, -2})), {}, ws);
  CHECK_FALSE(mixed.stable);
  // a1xa1: a regular point has an orbit S^2 x S^2 of dimension 4.
  auto ab = MatrixModel::make("a1xa1");
  CHECK(tangent_dim_face(ab, point_face(rv({1, 2})), {}).rank == 4);
  CHECK(tangent_dim_face(ab, point_face(rv({1, 0})), {}).rank == 2);
}
