#include "polarfaces/exact.hpp"

#include "polarfaces/errors.hpp"

#include <cmath>
#include <sstream>

namespace polar {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_input: return "malformed_input";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::unknown_model: return "unknown_model";
    case ErrorCode::unsupported_type: return "unsupported_type";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::not_invariant: return "not_invariant";
    case ErrorCode::not_exposed: return "not_exposed";
  }
  return "unknown";
}

int sign(const Rational& q) { return q.sign(); }

Rational parse_rational(const std::string& text) {
  auto fail = [&]() -> Rational {
    throw InputError(ErrorCode::malformed_input, "cannot parse rational '" + text + "'");
  };
  if (text.empty()) return fail();
  if (auto slash = text.find('/'); slash != std::string::npos) {
    try {
      Integer num(text.substr(0, slash));
      Integer den(text.substr(slash + 1));
      if (den == 0) return fail();
      return Rational(num, den);
    } catch (const std::exception&) {
      return fail();
    }
  }
  auto dot_pos = text.find('.');
  auto exp_pos = text.find_first_of("eE");
  if (exp_pos != std::string::npos) return fail();
  try {
    if (dot_pos == std::string::npos) return Rational(Integer(text));
    std::string digits = text.substr(0, dot_pos) + text.substr(dot_pos + 1);
    if (digits == "-" || digits == "+" || digits.empty()) return fail();
    std::size_t frac = text.size() - dot_pos - 1;
    Integer den = 1;
    for (std::size_t i = 0; i < frac; ++i) den *= 10;
    return Rational(Integer(digits), den);
  } catch (const std::exception&) {
    return fail();
  }
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational rational_from_double(double x, int bits) {
  const double scale = std::ldexp(1.0, bits);
  Integer num(std::llround(x * scale));
  Integer den = Integer(1) << bits;
  return Rational(num, den);
}

RVec zeros(std::size_t n) { return RVec(n, Rational(0)); }

RVec unit_vector(std::size_t n, std::size_t i) {
  RVec e = zeros(n);
  e[i] = 1;
  return e;
}

Rational dot(const RVec& a, const RVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational norm2(const RVec& a) { return dot(a, a); }

RVec operator+(const RVec& a, const RVec& b) {
  RVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

RVec operator-(const RVec& a, const RVec& b) {
  RVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

RVec operator-(const RVec& a) {
  RVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

RVec operator*(const Rational& s, const RVec& a) {
  RVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

bool is_zero(const RVec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

std::vector<double> to_double(const RVec& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = to_double(a[i]);
  return out;
}

std::string to_string(const RVec& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? ", " : "") << a[i].str();
  os << ')';
  return os.str();
}

RVec primitive(const RVec& a) {
  Integer lcm_den = 1;
  for (const auto& x : a)
    if (x != 0) lcm_den = boost::multiprecision::lcm(lcm_den, Integer(boost::multiprecision::denominator(x)));
  Integer g = 0;
  std::vector<Integer> ints;
  ints.reserve(a.size());
  for (const auto& x : a) {
    Integer v = Integer(boost::multiprecision::numerator(x)) * (lcm_den / Integer(boost::multiprecision::denominator(x)));
    ints.push_back(v);
    g = boost::multiprecision::gcd(g, v);
  }
  if (g == 0) return a;
  RVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = Rational(ints[i] / g);
  return out;
}

std::vector<RVec> row_basis(std::span<const RVec> vectors) {
  std::vector<RVec> rows(vectors.begin(), vectors.end());
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

int rank(std::span<const RVec> vectors) { return static_cast<int>(row_basis(vectors).size()); }

std::vector<RVec> orthogonal_complement(std::span<const RVec> vectors, std::size_t dim) {
  // Nullspace of the matrix whose rows are the vectors.
  auto rref = row_basis(vectors);
  std::vector<int> pivot_of_col(dim, -1);
  for (std::size_t i = 0; i < rref.size(); ++i) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (rref[i][c] != 0) {
        pivot_of_col[c] = static_cast<int>(i);
        break;
      }
    }
  }
  std::vector<RVec> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    RVec v = zeros(dim);
    v[free] = 1;
    for (std::size_t c = 0; c < dim; ++c) {
      if (pivot_of_col[c] >= 0) v[c] = -rref[pivot_of_col[c]][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RVec> solve(std::vector<RVec> rows, RVec rhs) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) rows[i].push_back(rhs[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && rows[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(rows[c], rows[piv]);
    Rational inv = 1 / rows[c][c];
    for (auto& x : rows[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t k = c; k <= n; ++k) rows[i][k] -= f * rows[c][k];
    }
  }
  RVec y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = rows[i][n];
  return y;
}

RVec project_onto(std::span<const RVec> basis_in, const RVec& x) {
  auto basis = row_basis(basis_in);
  if (basis.empty()) return zeros(x.size());
  const std::size_t k = basis.size();
  std::vector<RVec> gram(k, RVec(k));
  RVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], x);
  }
  auto coef = solve(gram, rhs);
  RVec out = zeros(x.size());
  for (std::size_t i = 0; i < k; ++i) out = out + (*coef)[i] * basis[i];
  return out;
}

bool in_span(std::span<const RVec> basis, const RVec& x) {
  std::vector<RVec> ext(basis.begin(), basis.end());
  int r0 = rank(ext);
  ext.push_back(x);
  return rank(ext) == r0;
}

// ---- surds ----------------------------------------------------------------

double Surd::approx() const {
  double v = to_double(a);
  if (!is_rational()) v += to_double(b) * std::sqrt(to_double(d));
  return v;
}

namespace {

// sign(a + b*sqrt(d)) for d >= 0.
int sign_surd(const Rational& a, const Rational& b, const Rational& d) {
  const int sa = a.sign();
  const int sb = (d == 0) ? 0 : b.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const int c = (a * a - b * b * d).sign();
  if (c > 0) return sa;
  if (c < 0) return sb;
  return 0;
}

}  // namespace

int sign(const Surd& x) { return sign_surd(x.a, x.b, x.d); }

namespace {

const Rational& common_radicand(const Surd& x, const Surd& y) {
  if (x.is_rational()) return y.d;
  if (y.is_rational()) return x.d;
  if (x.d != y.d) throw std::logic_error("surd arithmetic across different radicands");
  return x.d;
}

}  // namespace

Surd operator+(const Surd& x, const Surd& y) {
  const Rational& d = common_radicand(x, y);
  Rational xb = x.is_rational() ? Rational(0) : x.b;
  Rational yb = y.is_rational() ? Rational(0) : y.b;
  return {x.a + y.a, xb + yb, d};
}

Surd operator-(const Surd& x) { return {-x.a, -x.b, x.d}; }

Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }

Surd operator*(const Surd& x, const Surd& y) {
  const Rational& d = common_radicand(x, y);
  Rational xb = x.is_rational() ? Rational(0) : x.b;
  Rational yb = y.is_rational() ? Rational(0) : y.b;
  return {x.a * y.a + xb * yb * d, x.a * yb + xb * y.a, d};
}

Surd operator*(const Rational& s, const Surd& x) { return {s * x.a, s * x.b, x.d}; }

int sign_biquadratic(const Rational& p, const Rational& q, const Rational& r, const Rational& s,
                     const Rational& d1, const Rational& d2) {
  // Write the number as X + Y*sqrt(d2) with X = p + q sqrt(d1), Y = r + s sqrt(d1).
  const int sx = sign_surd(p, q, d1);
  const int sy = (d2 == 0) ? 0 : sign_surd(r, s, d1);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  // X^2 - d2 Y^2 lies in Q(sqrt d1).
  Rational za = p * p + q * q * d1 - d2 * (r * r + s * s * d1);
  Rational zb = 2 * p * q - d2 * 2 * r * s;
  const int c = sign_surd(za, zb, d1);
  if (c > 0) return sx;
  if (c < 0) return sy;
  return 0;
}

int compare(const Surd& x, const Surd& y) {
  Rational xb = x.is_rational() ? Rational(0) : x.b;
  Rational yb = y.is_rational() ? Rational(0) : y.b;
  return sign_biquadratic(x.a - y.a, xb, -yb, 0, x.d, y.d);
}

int sign_cross(const Surd& x, const Surd& y, const Surd& z, const Surd& w) {
  // x,z over radicand d1; y,w over radicand d2.
  Rational d1 = !x.is_rational() ? x.d : z.d;
  Rational d2 = !y.is_rational() ? y.d : w.d;
  auto b = [](const Surd& s) { return s.is_rational() ? Rational(0) : s.b; };
  // (xa + xb r1)(ya + yb r2) - (za + zb r1)(wa + wb r2)
  Rational p = x.a * y.a - z.a * w.a;
  Rational q = b(x) * y.a - b(z) * w.a;
  Rational r = x.a * b(y) - z.a * b(w);
  Rational s = b(x) * b(y) - b(z) * b(w);
  return sign_biquadratic(p, q, r, s, d1, d2);
}

bool SurdVec::is_rational() const { return d == 0 || is_zero(b); }

std::optional<RVec> SurdVec::rational() const {
  if (is_rational()) return a;
  return std::nullopt;
}

std::vector<double> SurdVec::approx() const {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (*this)[i].approx();
  return out;
}

std::string SurdVec::to_string() const {
  if (is_rational()) return polar::to_string(a);
  std::ostringstream os;
  os << polar::to_string(a) << " + sqrt(" << d.str() << ")*" << polar::to_string(b);
  return os.str();
}

bool equal(const SurdVec& x, const SurdVec& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (compare(x[i], y[i]) != 0) return false;
  return true;
}

Surd dot(const RVec& r, const SurdVec& x) {
  Rational a = 0, b = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    a += r[i] * x.a[i];
    b += r[i] * x.b[i];
  }
  return {a, b, x.d};
}

Surd dot(const SurdVec& x, const SurdVec& y) {
  Surd s;
  for (std::size_t i = 0; i < x.size(); ++i) s = s + x[i] * y[i];
  return s;
}

SurdVec operator+(const SurdVec& x, const SurdVec& y) {
  Rational d = x.is_rational() ? y.d : x.d;
  if (!x.is_rational() && !y.is_rational() && x.d != y.d)
    throw std::logic_error("surd vector sum across different radicands");
  return {x.a + y.a, x.b + y.b, d};
}

SurdVec operator-(const SurdVec& x, const SurdVec& y) {
  return x + SurdVec(-y.a, -y.b, y.d);
}

SurdVec operator*(const Rational& s, const SurdVec& x) { return {s * x.a, s * x.b, x.d}; }

SurdVec rot90(const SurdVec& x) { return {rot90(x.a), rot90(x.b), x.d}; }

RVec rot90(const RVec& x) { return {-x[1], x[0]}; }

SurdVec normalized(const RVec& beta) {
  Rational q = norm2(beta);
  if (q == 0) throw InputError(ErrorCode::invalid_argument, "cannot normalize the zero vector");
  // beta / sqrt(q) = (beta / q) * sqrt(q)
  return simplify({zeros(beta.size()), (1 / q) * beta, q});
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  Integer rn = boost::multiprecision::sqrt(num);
  Integer rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

SurdVec simplify(SurdVec x) {
  if (x.d == 0 || is_zero(x.b)) return SurdVec(std::move(x.a));
  if (auto r = exact_sqrt(x.d)) return SurdVec(x.a + *r * x.b);
  return x;
}

}  // namespace polar
