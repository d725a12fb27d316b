#include "amoeba/span_complex.hpp"

#include "amoeba/errors.hpp"
#include "json_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace amoeba {

SpanComplex SpanComplex::from_cells(std::size_t ambient_dim, std::vector<Cell> cells) {
  if (cells.empty()) throw ValidationError("complex has no cells");
  SpanComplex out;
  out.ambient_dim_ = ambient_dim;
  out.dim_ = cells.front().span.dim();
  std::set<Subspace> seen;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto& cell = cells[i];
    if (cell.span.ambient_dim() != ambient_dim) {
      throw ValidationError("cell " + std::to_string(i) + " lives in Q^" +
                            std::to_string(cell.span.ambient_dim()) + ", expected Q^" +
                            std::to_string(ambient_dim));
    }
    if (cell.span.dim() != out.dim_) {
      throw ValidationError("complex is not pure: cell " + std::to_string(i) + " has dimension " +
                            std::to_string(cell.span.dim()) + " but cell 0 has dimension " +
                            std::to_string(out.dim_));
    }
    if (seen.insert(cell.span).second) out.cells_.push_back(std::move(cell));
  }
  return out;
}

SpanComplex parse_complex(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("fan file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("fan file must be a JSON object");
  const long long ambient = detail::require_integer(doc, "ambient_dim");
  if (ambient < 0) throw ValidationError("ambient_dim must be nonnegative");
  const auto n = static_cast<std::size_t>(ambient);
  const auto& cells_json = detail::require_array(doc, "cells");

  std::vector<Cell> cells;
  for (std::size_t i = 0; i < cells_json.size(); ++i) {
    const auto& c = cells_json[i];
    if (!c.is_object()) throw ParseError("cell " + std::to_string(i) + " must be an object");
    const auto& span_json = detail::require_array(c, "span");
    std::vector<RationalVector> rows;
    for (const auto& row : span_json) {
      if (!row.is_array()) throw ParseError("cell " + std::to_string(i) + ": span rows must be arrays");
      RationalVector r;
      for (const auto& x : row) r.push_back(detail::rational_from_json(x));
      if (r.size() != n) {
        throw ParseError("cell " + std::to_string(i) + ": span row has " + std::to_string(r.size()) +
                         " entries, expected " + std::to_string(n));
      }
      rows.push_back(std::move(r));
    }
    Cell cell{Subspace::span(n, RationalMatrix::from_rows(n, rows)), std::nullopt};
    if (c.contains("label") && !c["label"].is_null()) {
      if (!c["label"].is_string()) throw ParseError("cell " + std::to_string(i) + ": label must be a string");
      cell.label = c["label"].get<std::string>();
    }
    cells.push_back(std::move(cell));
  }
  return SpanComplex::from_cells(n, std::move(cells));
}

std::string format_complex(const SpanComplex& complex) {
  nlohmann::ordered_json doc;
  doc["ambient_dim"] = complex.ambient_dim();
  auto cells = nlohmann::ordered_json::array();
  for (const auto& cell : complex.cells()) {
    nlohmann::ordered_json c;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& b : cell.span.basis()) {
      auto row = nlohmann::ordered_json::array();
      for (const auto& x : b) row.push_back(x.get_str());
      rows.push_back(std::move(row));
    }
    c["span"] = std::move(rows);
    if (cell.label) c["label"] = *cell.label;
    cells.push_back(std::move(c));
  }
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

std::size_t dim_sum_with_subspace(const SpanComplex& complex, const Subspace& s) {
  require_same_ambient(complex.ambient_dim(), s.ambient_dim(), "dim_sum_with_subspace");
  const std::size_t cap = std::min(complex.ambient_dim(), complex.dim() + s.dim());
  std::size_t best = std::max(complex.dim(), s.dim());
  for (const auto& cell : complex.cells()) {
    if (best == cap) break;
    best = std::max(best, sum_dim(cell.span, s));
  }
  return best;
}

SpanComplex minkowski_with_subspace(const SpanComplex& complex, const Subspace& t) {
  require_same_ambient(complex.ambient_dim(), t.ambient_dim(), "minkowski_with_subspace");
  std::vector<Cell> cells;
  cells.reserve(complex.cells().size());
  for (const auto& cell : complex.cells()) cells.push_back({sum(cell.span, t), cell.label});
  const std::size_t target = dim_sum_with_subspace(complex, t);
  std::ostringstream offending;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].span.dim() != target) {
      offending << (offending.tellp() > 0 ? ", " : "") << i << " (dim " << cells[i].span.dim() << ")";
    }
  }
  if (offending.tellp() > 0) {
    throw ValidationError("Minkowski sum is not pure; expected dimension " + std::to_string(target) +
                          ", offending cells: " + offending.str());
  }
  return SpanComplex::from_cells(complex.ambient_dim(), std::move(cells));
}

bool cellwise_invariant(const SpanComplex& complex, const Subspace& s) {
  require_same_ambient(complex.ambient_dim(), s.ambient_dim(), "cellwise_invariant");
  return std::all_of(complex.cells().begin(), complex.cells().end(),
                     [&](const Cell& c) { return c.span.contains(s); });
}

SpanComplex product(const SpanComplex& first, const SpanComplex& second) {
  std::vector<Cell> cells;
  cells.reserve(first.cells().size() * second.cells().size());
  for (const auto& a : first.cells()) {
    for (const auto& b : second.cells()) {
      std::optional<std::string> label;
      if (a.label || b.label) label = a.label.value_or("") + "x" + b.label.value_or("");
      cells.push_back({direct_sum(a.span, b.span), std::move(label)});
    }
  }
  auto out = SpanComplex::from_cells(first.ambient_dim() + second.ambient_dim(), std::move(cells));
  out.factors_ = {first, second};
  return out;
}

SpanComplex image(const SpanComplex& complex, const std::vector<IntegerVector>& m) {
  std::vector<Cell> cells;
  cells.reserve(complex.cells().size());
  for (const auto& cell : complex.cells()) cells.push_back({image(cell.span, m), cell.label});
  return SpanComplex::from_cells(complex.ambient_dim(), std::move(cells));
}

}  // namespace amoeba
