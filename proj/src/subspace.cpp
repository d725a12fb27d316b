#include "amoeba/subspace.hpp"

#include "amoeba/errors.hpp"

#include <algorithm>
#include <sstream>

namespace amoeba {

namespace {

std::size_t leading_index(const IntegerVector& row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] != 0) return j;
  }
  return row.size();
}

}  // namespace

void require_same_ambient(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ValidationError(std::string(what) + ": ambient dimension mismatch (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
  }
}

Subspace Subspace::zero(std::size_t ambient_dim) { return Subspace(ambient_dim, {}); }

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<IntegerVector> basis(ambient_dim, IntegerVector(ambient_dim, 0));
  for (std::size_t i = 0; i < ambient_dim; ++i) basis[i][i] = 1;
  return Subspace(ambient_dim, std::move(basis));
}

Subspace Subspace::span(std::size_t ambient_dim, std::vector<IntegerVector> generators) {
  for (std::size_t r = 0; r < generators.size(); ++r) {
    if (generators[r].size() != ambient_dim) {
      throw ValidationError("generator " + std::to_string(r) + " has length " +
                            std::to_string(generators[r].size()) + ", expected " +
                            std::to_string(ambient_dim));
    }
  }
  return Subspace(ambient_dim, integer_echelon(std::move(generators), ambient_dim, true));
}

Subspace Subspace::span(std::size_t ambient_dim, const RationalMatrix& generators) {
  if (generators.rows() > 0 && generators.cols() != ambient_dim) {
    throw ValidationError("generator matrix has " + std::to_string(generators.cols()) +
                          " columns, expected " + std::to_string(ambient_dim));
  }
  std::vector<IntegerVector> rows;
  rows.reserve(generators.rows());
  for (std::size_t r = 0; r < generators.rows(); ++r) rows.push_back(primitive_integer_row(generators.row(r)));
  return span(ambient_dim, std::move(rows));
}

RationalMatrix Subspace::basis_matrix() const {
  RationalMatrix m(basis_.size(), ambient_dim_);
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    for (std::size_t c = 0; c < ambient_dim_; ++c) m(r, c) = basis_[r][c];
  }
  return m;
}

bool Subspace::contains(std::span<const Integer> v) const {
  if (v.size() != ambient_dim_) throw ValidationError("vector length does not match ambient dimension");
  if (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; })) return true;
  if (is_full()) return true;
  auto rows = basis_;
  rows.emplace_back(v.begin(), v.end());
  return integer_rank(std::move(rows), ambient_dim_) == dim();
}

bool Subspace::contains(std::span<const Rational> v) const {
  const auto row = primitive_integer_row(v);
  return contains(std::span<const Integer>(row));
}

bool Subspace::contains(const Subspace& other) const {
  require_same_ambient(ambient_dim_, other.ambient_dim_, "contains");
  if (other.dim() > dim()) return false;
  return sum_dim(*this, other) == dim();
}

std::string Subspace::to_string() const {
  std::ostringstream out;
  out << "span{";
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    if (r > 0) out << "; ";
    for (std::size_t c = 0; c < ambient_dim_; ++c) out << (c > 0 ? "," : "") << basis_[r][c];
  }
  out << "} in Q^" << ambient_dim_;
  return out.str();
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.ambient_dim_ <=> b.ambient_dim_; c != 0) return c;
  if (auto c = a.basis_.size() <=> b.basis_.size(); c != 0) return c;
  for (std::size_t r = 0; r < a.basis_.size(); ++r) {
    for (std::size_t j = 0; j < a.ambient_dim_; ++j) {
      const int c = cmp(a.basis_[r][j], b.basis_[r][j]);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

Subspace canonicalize(std::size_t ambient_dim, const RationalMatrix& generators) {
  return Subspace::span(ambient_dim, generators);
}

Subspace sum(const Subspace& u, const Subspace& v) {
  require_same_ambient(u.ambient_dim(), v.ambient_dim(), "sum");
  if (u.is_zero() || v.is_full()) return v;
  if (v.is_zero() || u.is_full()) return u;
  auto rows = u.basis();
  rows.insert(rows.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(u.ambient_dim(), std::move(rows));
}

std::size_t sum_dim(const Subspace& u, const Subspace& v) {
  require_same_ambient(u.ambient_dim(), v.ambient_dim(), "sum");
  if (u.is_zero()) return v.dim();
  if (v.is_zero()) return u.dim();
  if (u.is_full() || v.is_full()) return u.ambient_dim();
  auto rows = u.basis();
  rows.insert(rows.end(), v.basis().begin(), v.basis().end());
  return integer_rank(std::move(rows), u.ambient_dim());
}

Subspace annihilator(const Subspace& u) {
  const std::size_t n = u.ambient_dim();
  const auto& basis = u.basis();
  std::vector<std::size_t> pivots;
  pivots.reserve(basis.size());
  for (const auto& row : basis) pivots.push_back(leading_index(row));

  std::vector<IntegerVector> complement;
  for (std::size_t f = 0; f < n; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    // Every pivot entry divides into a common multiple so the vector stays integral.
    Integer scale = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i][f] != 0) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), basis[i][pivots[i]].get_mpz_t());
    }
    IntegerVector w(n, 0);
    w[f] = scale;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i][f] != 0) w[pivots[i]] = -basis[i][f] * (scale / basis[i][pivots[i]]);
    }
    complement.push_back(std::move(w));
  }
  return Subspace::span(n, std::move(complement));
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  require_same_ambient(u.ambient_dim(), v.ambient_dim(), "intersect");
  if (u.is_zero() || v.is_full()) return u;
  if (v.is_zero() || u.is_full()) return v;
  if (u == v) return u;
  return annihilator(sum(annihilator(u), annihilator(v)));
}

Subspace direct_sum(const Subspace& u, const Subspace& v) {
  const std::size_t n = u.ambient_dim() + v.ambient_dim();
  std::vector<IntegerVector> rows;
  rows.reserve(u.dim() + v.dim());
  for (const auto& r : u.basis()) {
    IntegerVector row(n, 0);
    std::copy(r.begin(), r.end(), row.begin());
    rows.push_back(std::move(row));
  }
  for (const auto& r : v.basis()) {
    IntegerVector row(n, 0);
    std::copy(r.begin(), r.end(), row.begin() + static_cast<std::ptrdiff_t>(u.ambient_dim()));
    rows.push_back(std::move(row));
  }
  return Subspace::span(n, std::move(rows));
}

Subspace image(const Subspace& u, const std::vector<IntegerVector>& m) {
  const std::size_t n = u.ambient_dim();
  if (m.size() != n) throw ValidationError("image: matrix size does not match ambient dimension");
  std::vector<IntegerVector> rows;
  rows.reserve(u.dim());
  for (const auto& b : u.basis()) {
    IntegerVector out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i].size() != n) throw ValidationError("image: matrix is not square");
      for (std::size_t j = 0; j < n; ++j) out[i] += m[i][j] * b[j];
    }
    rows.push_back(std::move(out));
  }
  return Subspace::span(n, std::move(rows));
}

}  // namespace amoeba
