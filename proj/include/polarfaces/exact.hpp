#pragma once

// Exact arithmetic used by every combinatorial verdict: GMP rationals,
// rational vectors, and quadratic surds a + b*sqrt(d) for the tangency
// data of 2D disk hulls.

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polar {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using RVec = std::vector<Rational>;

int sign(const Rational& q);

/// Parses "3", "-2/5" or a finite decimal such as "0.125" exactly.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
/// Nearest rational with denominator 2^bits; exact for dyadic doubles.
Rational rational_from_double(double x, int bits = 40);

// ---- rational vectors ------------------------------------------------------

RVec zeros(std::size_t n);
RVec unit_vector(std::size_t n, std::size_t i);
Rational dot(const RVec& a, const RVec& b);
Rational norm2(const RVec& a);
RVec operator+(const RVec& a, const RVec& b);
RVec operator-(const RVec& a, const RVec& b);
RVec operator-(const RVec& a);
RVec operator*(const Rational& s, const RVec& a);
bool is_zero(const RVec& a);
std::vector<double> to_double(const RVec& a);
std::string to_string(const RVec& a);

/// Scales a nonzero vector to the primitive integer vector with the same direction.
RVec primitive(const RVec& a);

/// Rank of a family of vectors (exact Gaussian elimination).
int rank(std::span<const RVec> vectors);

/// Basis of span(vectors) in reduced row echelon form.
std::vector<RVec> row_basis(std::span<const RVec> vectors);

/// Basis of the orthogonal complement of span(vectors) inside R^dim.
std::vector<RVec> orthogonal_complement(std::span<const RVec> vectors, std::size_t dim);

/// Orthogonal projection of x onto span(basis); basis need not be orthogonal.
RVec project_onto(std::span<const RVec> basis, const RVec& x);

/// Solves the square system M y = rhs; returns nullopt when M is singular.
std::optional<RVec> solve(std::vector<RVec> rows, RVec rhs);

bool in_span(std::span<const RVec> basis, const RVec& x);

// ---- quadratic surds --------------------------------------------------------

/// The real number a + b*sqrt(d), d >= 0.
struct Surd {
  Rational a;
  Rational b;
  Rational d;

  Surd() = default;
  Surd(Rational a_) : a(std::move(a_)) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational a_, Rational b_, Rational d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {}

  bool is_rational() const { return b == 0 || d == 0; }
  double approx() const;
};

int sign(const Surd& x);

// Arithmetic between surds sharing one radicand (or rational operands).
Surd operator+(const Surd& x, const Surd& y);
Surd operator-(const Surd& x, const Surd& y);
Surd operator-(const Surd& x);
Surd operator*(const Surd& x, const Surd& y);
Surd operator*(const Rational& s, const Surd& x);

/// Sign of p + q*sqrt(d1) + r*sqrt(d2) + s*sqrt(d1*d2).
int sign_biquadratic(const Rational& p, const Rational& q, const Rational& r, const Rational& s,
                     const Rational& d1, const Rational& d2);

/// Exact comparison of surds with possibly different radicands.
int compare(const Surd& x, const Surd& y);
/// Sign of x*y - z*w where x,z live over one radicand and y,w over another.
int sign_cross(const Surd& x, const Surd& y, const Surd& z, const Surd& w);

/// Vector with entries a_i + b_i*sqrt(d) over one shared radicand.
struct SurdVec {
  RVec a;
  RVec b;
  Rational d;

  SurdVec() = default;
  explicit SurdVec(RVec rational) : a(std::move(rational)), b(zeros(a.size())) {}
  SurdVec(RVec a_, RVec b_, Rational d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {}

  std::size_t size() const { return a.size(); }
  Surd operator[](std::size_t i) const { return {a[i], b[i], d}; }
  bool is_rational() const;
  std::optional<RVec> rational() const;
  std::vector<double> approx() const;
  std::string to_string() const;
};

/// Exact equality across radicands.
bool equal(const SurdVec& x, const SurdVec& y);
Surd dot(const RVec& r, const SurdVec& x);
Surd dot(const SurdVec& x, const SurdVec& y);  // same radicand
SurdVec operator+(const SurdVec& x, const SurdVec& y);
SurdVec operator-(const SurdVec& x, const SurdVec& y);
SurdVec operator*(const Rational& s, const SurdVec& x);
/// Rotation by +90 degrees of a 2D vector.
SurdVec rot90(const SurdVec& x);
RVec rot90(const RVec& x);
/// Unit vector beta/|beta| for a nonzero rational beta.
SurdVec normalized(const RVec& beta);
/// Square root of a nonnegative rational when it is rational.
std::optional<Rational> exact_sqrt(const Rational& q);
/// Folds sqrt(d) into the rational part when d is a perfect square.
SurdVec simplify(SurdVec x);

}  // namespace polar
