#include "amoeba/families.hpp"

#include "amoeba/errors.hpp"

#include <algorithm>
#include <string>

namespace amoeba::families {

IntegerVector unit_vector(std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw ValidationError("unit vector index out of range");
  IntegerVector v(n, 0);
  v[i - 1] = 1;
  return v;
}

SpanComplex tropical_hyperplane(std::size_t n) {
  if (n < 2) throw ValidationError("tropical_hyperplane needs n >= 2");
  // Generators in the order e_1, ..., e_n, e_0 = -(e_1 + ... + e_n).
  std::vector<IntegerVector> gens;
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) {
    gens.push_back(unit_vector(n, i));
    names.push_back("e" + std::to_string(i));
  }
  gens.emplace_back(n, Integer(-1));
  names.emplace_back("e0");

  // (n-1)-subsets in lexicographic order, via a selection mask.
  std::vector<bool> mask(n + 1, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n - 1), true);
  std::vector<Cell> cells;
  do {
    std::vector<IntegerVector> rows;
    std::string label;
    for (std::size_t i = 0; i <= n; ++i) {
      if (!mask[i]) continue;
      rows.push_back(gens[i]);
      label += (label.empty() ? "" : ",") + names[i];
    }
    cells.push_back({Subspace::span(n, std::move(rows)), std::move(label)});
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return SpanComplex::from_cells(n, std::move(cells));
}

SpanComplex orbit_subspace(std::size_t n, const std::vector<IntegerVector>& basis) {
  auto span = Subspace::span(n, basis);
  if (span.dim() != basis.size()) throw ValidationError("orbit_subspace: generators are linearly dependent");
  return SpanComplex::from_cells(n, {{std::move(span), std::nullopt}});
}

SpanComplex curve_fan(std::size_t n, const std::vector<IntegerVector>& rays) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    auto span = Subspace::span(n, {rays[i]});
    if (span.is_zero()) throw ValidationError("curve_fan: ray " + std::to_string(i) + " is zero");
    cells.push_back({std::move(span), std::nullopt});
  }
  return SpanComplex::from_cells(n, std::move(cells));
}

SpanComplex torus_invariant(const SpanComplex& base, const Subspace& t) {
  return minkowski_with_subspace(base, t);
}

SpanComplex point(std::size_t n) { return SpanComplex::from_cells(n, {{Subspace::zero(n), std::nullopt}}); }

}  // namespace amoeba::families
