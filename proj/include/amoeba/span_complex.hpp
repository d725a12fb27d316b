#pragma once

// Pure rational polyhedral complexes in the span model: each maximal cell is
// represented only by the linear span of its direction vectors. Every
// dimension count used by the amoeba formulas depends on the cells only
// through these spans.

#include "amoeba/subspace.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amoeba {

struct Cell {
  Subspace span;
  std::optional<std::string> label;
};

class SpanComplex {
 public:
  /// Validates and deduplicates. Cells keep first-occurrence order; a merged
  /// duplicate keeps the first label. Throws ValidationError on an empty cell
  /// list, a cell in the wrong ambient space, or cells of unequal dimension.
  static SpanComplex from_cells(std::size_t ambient_dim, std::vector<Cell> cells);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Cell>& cells() const { return cells_; }

  /// Factors recorded by product(); empty for complexes built any other way.
  const std::vector<SpanComplex>& factors() const { return factors_; }

 private:
  friend SpanComplex product(const SpanComplex&, const SpanComplex&);

  std::size_t ambient_dim_ = 0;
  std::size_t dim_ = 0;
  std::vector<Cell> cells_;
  std::vector<SpanComplex> factors_;
};

/// Reads the JSON fan format
///   {"ambient_dim": n, "cells": [{"span": [[r, ...], ...], "label": "..."}]}
/// where each r is a rational string ("p" or "p/q"). Throws ParseError for
/// syntax problems and ValidationError for structural ones.
SpanComplex parse_complex(std::string_view text);

/// Serializes in the fan format; spans are written as canonical integer bases.
std::string format_complex(const SpanComplex& complex);

/// dim(S + |complex|) = max over cells C of dim(<C> + S).
std::size_t dim_sum_with_subspace(const SpanComplex& complex, const Subspace& s);

/// Cells {<C> + T}, deduplicated. Throws ValidationError naming the offending
/// cells if the sums do not all have the same dimension.
SpanComplex minkowski_with_subspace(const SpanComplex& complex, const Subspace& t);

/// True iff S is contained in every cell span. This certifies S + |complex| =
/// |complex| only in the sufficient direction.
bool cellwise_invariant(const SpanComplex& complex, const Subspace& s);

/// Cells <C1> (+) <C2> for all pairs, in Q^(n1 + n2). The factors are retained
/// so the search can use direct sums of factor candidates.
SpanComplex product(const SpanComplex& first, const SpanComplex& second);

/// Image of every cell under the square integer matrix m (given by rows).
SpanComplex image(const SpanComplex& complex, const std::vector<IntegerVector>& m);

}  // namespace amoeba
