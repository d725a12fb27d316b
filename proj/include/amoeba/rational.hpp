#pragma once

// Exact rational scalars and dense rational matrices.
//
// Scalars are GMP rationals (always stored in lowest terms with a positive
// denominator). Row reduction is done fraction-free on integer rows, see
// integer_echelon() below.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amoeba {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// Parses "p" or "p/q" (optional sign on p, q != 0). The result is reduced.
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q" with q > 0.
std::string to_string(const Rational& value);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  /// Throws ValidationError if the rows are ragged or do not have `cols` entries.
  static RationalMatrix from_rows(std::size_t cols, const std::vector<RationalVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Scales a rational row to the primitive integer vector pointing the same way
/// (gcd of entries 1, first nonzero entry positive). The zero row maps to zeros.
IntegerVector primitive_integer_row(std::span<const Rational> row);

/// Divides out the content and makes the leading nonzero entry positive.
void make_primitive(IntegerVector& row);

/// Fraction-free elimination on integer rows with `cols` columns.
///
/// Returns the nonzero rows of an echelon form in which each row is primitive
/// with a positive pivot. With `reduced` set, every pivot column is also
/// cleared above its pivot, so each returned row is a positive multiple of the
/// corresponding row of the reduced row echelon form.
std::vector<IntegerVector> integer_echelon(std::vector<IntegerVector> rows, std::size_t cols,
                                           bool reduced);

/// Rank of a set of integer rows.
std::size_t integer_rank(std::vector<IntegerVector> rows, std::size_t cols);

/// Unique reduced row echelon form with zero rows removed.
RationalMatrix rref(const RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

}  // namespace amoeba
