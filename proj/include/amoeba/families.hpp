#pragma once

// Span-model complexes for the standard example families.

#include "amoeba/span_complex.hpp"

#include <cstddef>
#include <vector>

namespace amoeba::families {

/// Codimension-one skeleton of the normal fan of the standard simplex: spans of
/// all (n-1)-subsets of {e_1, ..., e_n, -(e_1 + ... + e_n)}. This is the
/// tropicalization of a generic hypersurface with full simplex Newton polytope.
SpanComplex tropical_hyperplane(std::size_t n);

/// Single cell spanned by independent vectors.
SpanComplex orbit_subspace(std::size_t n, const std::vector<IntegerVector>& basis);

/// One line cell per nonzero ray (deduplicated by span).
SpanComplex curve_fan(std::size_t n, const std::vector<IntegerVector>& rays);

/// Minkowski sum with T; every resulting cell contains T.
SpanComplex torus_invariant(const SpanComplex& base, const Subspace& t);

/// The complex {0} in Q^n; product(point(k), S) embeds S in the last coordinates.
SpanComplex point(std::size_t n);

/// e_i in Q^n (1-based index, as in the CLI vector syntax).
IntegerVector unit_vector(std::size_t n, std::size_t i);

}  // namespace amoeba::families
