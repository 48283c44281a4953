#include "polarfaces/rootsys.hpp"

#include "polarfaces/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polar {

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

// ---- WeylElement -------------------------------------------------------------

WeylElement WeylElement::identity(std::size_t dim) {
  WeylElement w;
  w.perm.resize(dim);
  std::iota(w.perm.begin(), w.perm.end(), 0);
  w.sign.assign(dim, 1);
  return w;
}

RVec WeylElement::apply(const RVec& x) const {
  RVec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[perm[i]] = sign[i] < 0 ? Rational(-x[i]) : x[i];
  return y;
}

SurdVec WeylElement::apply(const SurdVec& x) const { return {apply(x.a), apply(x.b), x.d}; }

std::vector<double> WeylElement::apply(std::span<const double> x) const {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[perm[i]] = sign[i] * x[i];
  return y;
}

WeylElement WeylElement::inverse() const {
  WeylElement w;
  w.perm.resize(perm.size());
  w.sign.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    w.perm[perm[i]] = static_cast<int>(i);
    w.sign[perm[i]] = sign[i];
  }
  return w;
}

WeylElement WeylElement::compose(const WeylElement& other) const {
  // (this o other) e_i = this(sign_o[i] e_{perm_o[i]}) = sign_o[i] sign[perm_o[i]] e_{perm[perm_o[i]]}
  WeylElement w;
  w.perm.resize(perm.size());
  w.sign.resize(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const int j = other.perm[i];
    w.perm[i] = perm[j];
    w.sign[i] = other.sign[i] * sign[j];
  }
  w.word = other.word;
  w.word.insert(w.word.end(), word.begin(), word.end());
  return w;
}

std::vector<std::vector<int>> WeylElement::matrix() const {
  std::vector<std::vector<int>> m(perm.size(), std::vector<int>(perm.size(), 0));
  for (std::size_t i = 0; i < perm.size(); ++i) m[perm[i]][i] = sign[i];
  return m;
}

bool WeylElement::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i) || sign[i] != 1) return false;
  return true;
}

int WeylElement::determinant() const {
  int det = 1;
  for (int s : sign) det *= s;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) det = -det;
  }
  return det;
}

// ---- construction ----------------------------------------------------------

namespace {

std::size_t factor_dim(const Factor& f) {
  if (f.family == Family::A) return f.rank == 1 ? 1 : static_cast<std::size_t>(f.rank) + 1;
  return static_cast<std::size_t>(f.rank);
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::size_t factor_weyl_order(const Factor& f) {
  const auto r = static_cast<std::size_t>(f.rank);
  switch (f.family) {
    case Family::A: return factorial(r + 1);
    case Family::B:
    case Family::C: return (std::size_t{1} << r) * factorial(r);
    case Family::D: return (std::size_t{1} << (r - 1)) * factorial(r);
  }
  return 0;
}

struct LocalRoots {
  std::vector<RVec> positive;
  std::vector<RVec> simple;
};

LocalRoots local_roots(const Factor& f) {
  const std::size_t m = factor_dim(f);
  LocalRoots out;
  auto e = [m](std::size_t i) { return unit_vector(m, i); };
  if (f.family == Family::A && f.rank == 1) {
    out.positive.push_back({Rational(2)});
    out.simple.push_back({Rational(2)});
    return out;
  }
  if (f.family == Family::A) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) out.positive.push_back(e(i) - e(j));
    for (std::size_t i = 0; i + 1 < m; ++i) out.simple.push_back(e(i) - e(i + 1));
    return out;
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      out.positive.push_back(e(i) - e(j));
      out.positive.push_back(e(i) + e(j));
    }
  }
  if (f.family == Family::B)
    for (std::size_t i = 0; i < m; ++i) out.positive.push_back(e(i));
  if (f.family == Family::C)
    for (std::size_t i = 0; i < m; ++i) out.positive.push_back(Rational(2) * e(i));
  for (std::size_t i = 0; i + 1 < m; ++i) out.simple.push_back(e(i) - e(i + 1));
  switch (f.family) {
    case Family::B: out.simple.push_back(e(m - 1)); break;
    case Family::C: out.simple.push_back(Rational(2) * e(m - 1)); break;
    case Family::D: out.simple.push_back(e(m - 2) + e(m - 1)); break;
    default: break;
  }
  return out;
}

std::vector<WeylElement> local_weyl(const Factor& f) {
  const std::size_t m = factor_dim(f);
  std::vector<WeylElement> out;
  if (f.family == Family::A && f.rank == 1) {
    out.push_back(WeylElement::identity(1));
    WeylElement flip = WeylElement::identity(1);
    flip.sign[0] = -1;
    out.push_back(flip);
    return out;
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  const bool signed_perms = f.family != Family::A;
  do {
    const std::size_t sign_patterns = signed_perms ? (std::size_t{1} << m) : 1;
    for (std::size_t mask = 0; mask < sign_patterns; ++mask) {
      WeylElement w;
      w.perm = perm;
      w.sign.assign(m, 1);
      int flips = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (std::size_t{1} << i)) {
          w.sign[i] = -1;
          ++flips;
        }
      }
      if (f.family == Family::D && flips % 2 != 0) continue;
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

RVec embed(const RVec& local, std::size_t offset, std::size_t dim) {
  RVec v = zeros(dim);
  for (std::size_t i = 0; i < local.size(); ++i) v[offset + i] = local[i];
  return v;
}

bool lex_less(const RVec& a, const RVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

RootSystem RootSystem::build(std::string_view label) {
  std::string text(label);
  // Normalize the multiplication sign (UTF-8) and '*' to 'x'.
  for (std::size_t pos; (pos = text.find("\xC3\x97")) != std::string::npos;) text.replace(pos, 2, "x");
  std::replace(text.begin(), text.end(), '*', 'x');
  std::replace(text.begin(), text.end(), 'X', 'x');
  std::vector<Factor> factors;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, 'x')) {
    token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
    if (token.empty()) throw InputError(ErrorCode::malformed_input, "empty factor in root system label '" + std::string(label) + "'");
    Family fam;
    switch (std::toupper(static_cast<unsigned char>(token[0]))) {
      case 'A': fam = Family::A; break;
      case 'B': fam = Family::B; break;
      case 'C': fam = Family::C; break;
      case 'D': fam = Family::D; break;
      default:
        throw InputError(ErrorCode::unsupported_type,
                         "unsupported root system family '" + token.substr(0, 1) + "' (supported: A, B, C, D)");
    }
    int r = 0;
    try {
      std::size_t used = 0;
      r = std::stoi(token.substr(1), &used);
      if (used != token.size() - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError(ErrorCode::malformed_input, "bad rank in root system factor '" + token + "'");
    }
    factors.push_back({fam, r});
  }
  if (factors.empty()) throw InputError(ErrorCode::malformed_input, "empty root system label");
  return build(std::move(factors));
}

RootSystem RootSystem::build(std::vector<Factor> factors) {
  RootSystem rs;
  std::size_t dim = 0;
  std::size_t order = 1;
  for (const auto& f : factors) {
    if (f.rank < 1) throw InputError(ErrorCode::invalid_argument, "factor rank must be at least 1");
    if (f.rank > 5) throw InputError(ErrorCode::invalid_argument, "factor rank is capped at 5");
    if (f.family == Family::D && f.rank < 2)
      throw InputError(ErrorCode::invalid_argument, "D_n requires n >= 2");
    dim += factor_dim(f);
    order *= factor_weyl_order(f);
    if (order > kMaxWeylOrder) throw InputError(ErrorCode::invalid_argument, "Weyl group too large to enumerate");
  }
  if (dim > 12) throw InputError(ErrorCode::invalid_argument, "total ambient dimension exceeds 12");
  rs.factors_ = std::move(factors);
  rs.ambient_dim_ = dim;

  std::ostringstream note;
  std::vector<RVec> positive;
  std::vector<std::vector<WeylElement>> local_groups;
  std::vector<std::size_t> offsets;
  std::size_t offset = 0;
  for (const auto& f : rs.factors_) {
    const std::size_t m = factor_dim(f);
    auto lr = local_roots(f);
    for (const auto& a : lr.positive) positive.push_back(embed(a, offset, dim));
    for (const auto& a : lr.simple) rs.simple_.push_back(embed(a, offset, dim));
    local_groups.push_back(local_weyl(f));
    offsets.push_back(offset);
    note << family_letter(f.family) << f.rank << " on coordinates [" << offset << ", " << offset + m << ")";
    if (f.family == Family::A && f.rank == 1) note << " as roots +-2e";
    else if (f.family == Family::A) note << " as e_i - e_j on the sum-zero hyperplane";
    else note << " in standard coordinates";
    note << "; ";
    offset += m;
  }
  rs.note_ = note.str();

  for (const auto& p : positive) rs.roots_.push_back(p);
  for (const auto& p : positive) rs.roots_.push_back(-p);
  rs.positive_.resize(positive.size());
  std::iota(rs.positive_.begin(), rs.positive_.end(), 0);

  // Cartesian product of factor groups, first factor varying slowest.
  std::vector<WeylElement> group{WeylElement::identity(dim)};
  for (std::size_t fi = 0; fi < local_groups.size(); ++fi) {
    std::vector<WeylElement> next;
    next.reserve(group.size() * local_groups[fi].size());
    for (const auto& g : group) {
      for (const auto& l : local_groups[fi]) {
        WeylElement w = g;
        for (std::size_t i = 0; i < l.perm.size(); ++i) {
          w.perm[offsets[fi] + i] = static_cast<int>(offsets[fi]) + l.perm[i];
          w.sign[offsets[fi] + i] = l.sign[i];
        }
        next.push_back(std::move(w));
      }
    }
    group = std::move(next);
  }
  rs.weyl_ = std::move(group);

  rs.a_basis_ = row_basis(rs.roots_);

  // Fundamental weights: omega_i in span(simple) with <omega_i, alpha_j^vee> = delta_ij.
  const std::size_t r = rs.simple_.size();
  std::vector<RVec> mt(r, RVec(r));
  for (std::size_t j = 0; j < r; ++j) {
    RVec coroot = (Rational(2) / norm2(rs.simple_[j])) * rs.simple_[j];
    for (std::size_t k = 0; k < r; ++k) mt[j][k] = dot(rs.simple_[k], coroot);
  }
  for (std::size_t i = 0; i < r; ++i) {
    auto c = solve(mt, unit_vector(r, i));
    RVec w = zeros(dim);
    for (std::size_t k = 0; k < r; ++k) w = w + (*c)[k] * rs.simple_[k];
    rs.fundamental_weights_.push_back(std::move(w));
  }
  return rs;
}

std::string RootSystem::label() const {
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += 'x';
    out += family_letter(factors_[i].family);
    out += std::to_string(factors_[i].rank);
  }
  return out;
}

void RootSystem::check_dim(const RVec& x) const {
  if (x.size() != ambient_dim_)
    throw InputError(ErrorCode::dimension_mismatch, "vector of dimension " + std::to_string(x.size()) +
                                                        " does not match root system ambient dimension " +
                                                        std::to_string(ambient_dim_));
}

bool RootSystem::in_a(const RVec& x) const {
  check_dim(x);
  return in_span(a_basis_, x);
}

RVec RootSystem::project_to_a(const RVec& x) const {
  check_dim(x);
  return project_onto(a_basis_, x);
}

bool RootSystem::is_dominant(const RVec& x) const {
  check_dim(x);
  for (const auto& a : simple_)
    if (dot(a, x) < 0) return false;
  return true;
}

int RootSystem::root_index(const RVec& alpha) const {
  for (std::size_t i = 0; i < roots_.size(); ++i)
    if (roots_[i] == alpha) return static_cast<int>(i);
  return -1;
}

WeylElement RootSystem::reflection(const RVec& alpha) const {
  check_dim(alpha);
  const Rational n2 = norm2(alpha);
  WeylElement w = WeylElement::identity(ambient_dim_);
  for (std::size_t i = 0; i < ambient_dim_; ++i) {
    RVec e = unit_vector(ambient_dim_, i);
    RVec img = e - (Rational(2) * dot(alpha, e) / n2) * alpha;
    bool found = false;
    for (std::size_t j = 0; j < ambient_dim_; ++j) {
      if (img[j] == 0) continue;
      if (found || (img[j] != 1 && img[j] != -1))
        throw std::logic_error("reflection is not a signed permutation");
      w.perm[i] = static_cast<int>(j);
      w.sign[i] = img[j] > 0 ? 1 : -1;
      found = true;
    }
  }
  return w;
}

std::vector<RVec> RootSystem::weyl_orbit(const RVec& x) const {
  check_dim(x);
  std::vector<RVec> orbit;
  orbit.reserve(weyl_.size());
  for (const auto& w : weyl_) orbit.push_back(w.apply(x));
  std::sort(orbit.begin(), orbit.end(), lex_less);
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

std::vector<WeylElement> RootSystem::stabilizer(std::span<const RVec> vectors) const {
  for (const auto& v : vectors) check_dim(v);
  std::vector<WeylElement> out;
  for (const auto& w : weyl_) {
    bool fixes = true;
    for (const auto& v : vectors) {
      if (w.apply(v) != v) {
        fixes = false;
        break;
      }
    }
    if (fixes) out.push_back(w);
  }
  return out;
}

std::vector<int> RootSystem::roots_vanishing_on(std::span<const RVec> basis) const {
  for (const auto& v : basis) check_dim(v);
  std::vector<int> out;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    bool vanishes = true;
    for (const auto& v : basis) {
      if (dot(roots_[i], v) != 0) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> RootSystem::roots_vanishing_on(std::span<const SurdVec> basis) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    bool vanishes = true;
    for (const auto& v : basis) {
      if (v.size() != ambient_dim_) throw InputError(ErrorCode::dimension_mismatch, "basis vector dimension mismatch");
      if (sign(dot(roots_[i], v)) != 0) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::pair<RVec, WeylElement> RootSystem::dominant_representative(const RVec& x) const {
  check_dim(x);
  RVec y = x;
  WeylElement w = WeylElement::identity(ambient_dim_);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < simple_.size(); ++i) {
      if (dot(simple_[i], y) < 0) {
        WeylElement s = reflection(simple_[i]);
        s.word = {static_cast<int>(i)};
        y = s.apply(y);
        w = s.compose(w);
        changed = true;
        break;
      }
    }
  }
  return {y, w};
}

}  // namespace polar
