#include "amoeba/rational.hpp"

#include "amoeba/errors.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace amoeba {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

// row <- p * row - a * pivot_row, with the common factor of (p, a) removed.
void eliminate(IntegerVector& row, const IntegerVector& pivot_row, const Integer& p,
               const Integer& a, std::size_t from) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), a.get_mpz_t());
  const Integer ps = p / g;
  const Integer as = a / g;
  Integer t;
  for (std::size_t j = from; j < row.size(); ++j) {
    row[j] *= ps;
    if (pivot_row[j] != 0) {
      t = as * pivot_row[j];
      row[j] -= t;
    }
  }
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  const auto slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
  if (!is_integer_literal(num, true) || (slash != std::string_view::npos && !is_integer_literal(den, false))) {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  }
  std::string num_str(num.front() == '+' ? num.substr(1) : num);
  Rational value;
  value.get_num() = Integer(num_str, 10);
  value.get_den() = den.empty() ? Integer(1) : Integer(std::string(den), 10);
  if (value.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RationalMatrix RationalMatrix::from_rows(std::size_t cols, const std::vector<RationalVector>& rows) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw ValidationError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                            " entries, expected " + std::to_string(cols));
    }
    std::copy(rows[r].begin(), rows[r].end(), m.entries_.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  return m;
}

void make_primitive(IntegerVector& row) {
  Integer g = 0;
  const Integer* lead = nullptr;
  for (const auto& x : row) {
    if (x == 0) continue;
    if (lead == nullptr) lead = &x;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (lead == nullptr) return;
  if (sgn(*lead) < 0) g = -g;
  if (g == 1) return;
  for (auto& x : row) {
    if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

IntegerVector primitive_integer_row(std::span<const Rational> row) {
  Integer lcm = 1;
  for (const auto& x : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  IntegerVector out(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) out[j] = row[j].get_num() * (lcm / row[j].get_den());
  make_primitive(out);
  return out;
}

std::vector<IntegerVector> integer_echelon(std::vector<IntegerVector> rows, std::size_t cols,
                                           bool reduced) {
  std::vector<std::size_t> pivot_cols;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    // Smallest nonzero magnitude in the column keeps entries short.
    std::size_t best = rows.size();
    for (std::size_t r = top; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      if (best == rows.size() || mpz_cmpabs(rows[r][c].get_mpz_t(), rows[best][c].get_mpz_t()) < 0) best = r;
    }
    if (best == rows.size()) continue;
    std::swap(rows[top], rows[best]);
    make_primitive(rows[top]);
    const Integer p = rows[top][c];
    for (std::size_t r = top + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Integer a = rows[r][c];
      eliminate(rows[r], rows[top], p, a, c);
      make_primitive(rows[r]);
    }
    pivot_cols.push_back(c);
    ++top;
  }
  rows.resize(top);
  if (reduced) {
    for (std::size_t i = rows.size(); i-- > 0;) {
      const std::size_t c = pivot_cols[i];
      for (std::size_t k = 0; k < i; ++k) {
        if (rows[k][c] == 0) continue;
        const Integer a = rows[k][c];
        eliminate(rows[k], rows[i], rows[i][c], a, 0);
        make_primitive(rows[k]);
      }
    }
  }
  for (auto& row : rows) make_primitive(row);
  return rows;
}

std::size_t integer_rank(std::vector<IntegerVector> rows, std::size_t cols) {
  return integer_echelon(std::move(rows), cols, false).size();
}

namespace {

std::vector<IntegerVector> integer_rows(const RationalMatrix& m) {
  std::vector<IntegerVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(primitive_integer_row(m.row(r)));
  return rows;
}

}  // namespace

RationalMatrix rref(const RationalMatrix& m) {
  const auto rows = integer_echelon(integer_rows(m), m.cols(), true);
  RationalMatrix out(rows.size(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto lead = std::find_if(rows[r].begin(), rows[r].end(), [](const Integer& x) { return x != 0; });
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(r, c) = Rational(rows[r][c], *lead);
      out(r, c).canonicalize();
    }
  }
  return out;
}

std::size_t rank(const RationalMatrix& m) { return integer_rank(integer_rows(m), m.cols()); }

}  // namespace amoeba
