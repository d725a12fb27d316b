#pragma once

#include "amoeba/rational.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace amoeba {

/// A rational linear subspace of Q^n (equivalently R^n spanned by rational
/// vectors).
///
/// The basis is stored canonically: the rows of the reduced row echelon form,
/// each scaled to a primitive integer vector with positive leading entry. Two
/// subspaces are equal iff their stored bases are equal entry-wise, and the
/// ordering (dimension first, then lexicographic on basis entries) is the
/// tie-break order used throughout the search.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);

  /// Canonical span of integer generator rows. Throws ValidationError when a
  /// row does not have `ambient_dim` entries.
  static Subspace span(std::size_t ambient_dim, std::vector<IntegerVector> generators);
  static Subspace span(std::size_t ambient_dim, const RationalMatrix& generators);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == ambient_dim_; }

  const std::vector<IntegerVector>& basis() const { return basis_; }
  RationalMatrix basis_matrix() const;

  bool contains(std::span<const Rational> v) const;
  bool contains(std::span<const Integer> v) const;
  bool contains(const Subspace& other) const;

  std::string to_string() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  Subspace(std::size_t ambient_dim, std::vector<IntegerVector> canonical_basis)
      : ambient_dim_(ambient_dim), basis_(std::move(canonical_basis)) {}

  std::size_t ambient_dim_ = 0;
  std::vector<IntegerVector> basis_;
};

/// Span of the rows of `generators`; same as Subspace::span.
Subspace canonicalize(std::size_t ambient_dim, const RationalMatrix& generators);

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);

/// Orthogonal complement with respect to the standard pairing on Q^n.
Subspace annihilator(const Subspace& u);

/// dim(u + v) without building the canonical form.
std::size_t sum_dim(const Subspace& u, const Subspace& v);

/// u (+) v inside Q^(n_u + n_v), u on the leading coordinates.
Subspace direct_sum(const Subspace& u, const Subspace& v);

/// Image of u under x -> M x, where M is a square integer matrix given by rows.
Subspace image(const Subspace& u, const std::vector<IntegerVector>& m);

/// Throws ValidationError when the ambient dimensions differ.
void require_same_ambient(std::size_t a, std::size_t b, const char* what);

}  // namespace amoeba
