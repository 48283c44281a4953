#pragma once

// Classical root systems in their standard coordinates, together with the
// Weyl group stored as an explicit list of signed permutations.

#include "polarfaces/exact.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polar {

enum class Family { A, B, C, D };

struct Factor {
  Family family;
  int rank;
};

char family_letter(Family f);

/// A signed permutation w with (w x)[perm[i]] = sign[i] * x[i].
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> sign;
  /// Simple-reflection indices, when the element was produced as a word.
  std::vector<int> word;

  static WeylElement identity(std::size_t dim);

  RVec apply(const RVec& x) const;
  SurdVec apply(const SurdVec& x) const;
  std::vector<double> apply(std::span<const double> x) const;
  WeylElement inverse() const;
  /// (*this) o other.
  WeylElement compose(const WeylElement& other) const;
  /// Dense matrix with entries in {-1, 0, 1}.
  std::vector<std::vector<int>> matrix() const;
  bool is_identity() const;
  int determinant() const;

  bool operator==(const WeylElement& o) const { return perm == o.perm && sign == o.sign; }
};

class RootSystem {
 public:
  /// Parses labels such as "A2", "A1xA1", "B3xA1" (also accepting '×' and '*').
  static RootSystem build(std::string_view label);
  static RootSystem build(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::string label() const;
  std::size_t ambient_dim() const { return ambient_dim_; }
  /// Dimension of the span of the roots.
  std::size_t rank() const { return a_basis_.size(); }
  const std::vector<RVec>& roots() const { return roots_; }
  /// Indices into roots().
  const std::vector<int>& positive() const { return positive_; }
  const std::vector<RVec>& simple_roots() const { return simple_; }
  const std::vector<WeylElement>& weyl() const { return weyl_; }
  std::size_t weyl_order() const { return weyl_.size(); }
  /// Basis of the span of the roots (the Cartan subspace a).
  const std::vector<RVec>& a_basis() const { return a_basis_; }
  const std::vector<RVec>& fundamental_weights() const { return fundamental_weights_; }
  const std::string& realization_note() const { return note_; }

  bool in_a(const RVec& x) const;
  RVec project_to_a(const RVec& x) const;
  bool is_dominant(const RVec& x) const;
  int root_index(const RVec& alpha) const;

  /// Reflection in a root as a signed permutation.
  WeylElement reflection(const RVec& alpha) const;

  std::vector<RVec> weyl_orbit(const RVec& x) const;
  std::vector<WeylElement> stabilizer(std::span<const RVec> vectors) const;
  /// Indices of the roots orthogonal to every vector of the basis.
  std::vector<int> roots_vanishing_on(std::span<const RVec> basis) const;
  std::vector<int> roots_vanishing_on(std::span<const SurdVec> basis) const;
  /// The dominant point of the orbit of x and an element w with w x dominant.
  std::pair<RVec, WeylElement> dominant_representative(const RVec& x) const;

 private:
  RootSystem() = default;
  void check_dim(const RVec& x) const;

  std::vector<Factor> factors_;
  std::size_t ambient_dim_ = 0;
  std::vector<RVec> roots_;
  std::vector<int> positive_;
  std::vector<RVec> simple_;
  std::vector<WeylElement> weyl_;
  std::vector<RVec> a_basis_;
  std::vector<RVec> fundamental_weights_;
  std::string note_;
};

/// Maximum order accepted for an explicitly enumerated Weyl group.
inline constexpr std::size_t kMaxWeylOrder = 1'000'000;

}  // namespace polar
