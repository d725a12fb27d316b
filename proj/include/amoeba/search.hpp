#pragma once

// Minimization of 2 dim(S + Sigma) - dim S over rational subspaces S.
//
// No finite rational candidate family is known to contain a minimizer for
// every complex, so results carry a bracket: the value found is always an
// upper bound (it is attained by the reported witness), and the complex
// dimension d is a proven lower bound. A result is certified only when the
// two meet.

#include "amoeba/span_complex.hpp"
#include "amoeba/subspace.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace amoeba {

struct Strategy {
  enum class Kind { lattice, exhaustive, combined };

  Kind kind = Kind::lattice;
  std::size_t cap = 10000;  // lattice closure size limit
  int height = 1;           // entry bound for exhaustive generators

  static Strategy lattice(std::size_t cap = 10000) { return {Kind::lattice, cap, 0}; }
  static Strategy exhaustive(int height) { return {Kind::exhaustive, 0, height}; }
  static Strategy combined(std::size_t cap, int height) { return {Kind::combined, cap, height}; }

  /// Lattice with cap 10000, plus height-1 exhaustive candidates when n <= 4.
  static Strategy default_for(std::size_t ambient_dim);

  bool uses_lattice() const { return kind != Kind::exhaustive; }
  bool uses_exhaustive() const { return kind != Kind::lattice; }

  /// e.g. "lattice(cap=10000)", "exhaustive(height=2)", "combined(cap=10000,height=1)".
  std::string describe() const;
};

struct SearchResult {
  std::size_t value = 0;
  Subspace witness_S;
  Subspace witness_T;
  std::size_t lower_bound = 0;
  std::size_t upper_bound = 0;
  bool certified = false;
  std::size_t candidates_evaluated = 0;
  std::string strategy;
  /// Set when the strategy built a candidate lattice.
  std::optional<bool> lattice_fixpoint;
};

struct LatticeCandidates {
  std::vector<Subspace> subspaces;  // discovery order
  bool fixpoint_reached = false;
};

/// Limits for exhaustive enumeration; exceeding either is a ResourceLimitError.
struct ExhaustiveLimits {
  std::size_t max_box_points = 729;  // (2h+1)^n
  std::size_t max_subspaces = 200000;
};

/// 2 dim(S + Sigma) - dim S.
std::size_t objective(const SpanComplex& complex, const Subspace& s);

/// Closure of the cell spans together with {0} and Q^n under pairwise sum and
/// intersection. Elements are discovered generation by generation and the
/// enumeration stops as soon as `cap` distinct subspaces are known.
LatticeCandidates candidate_lattice(const SpanComplex& complex, std::size_t cap);

/// Every subspace spanned by integer vectors with entries in [-height, height].
/// Results are memoized per (n, height).
std::vector<Subspace> exhaustive_candidates(std::size_t ambient_dim, int height,
                                            const ExhaustiveLimits& limits = {});

/// Throws ValidationError for invalid strategy parameters and
/// ResourceLimitError when exhaustive enumeration is refused.
SearchResult amoeba_dim(const SpanComplex& complex, const Strategy& strategy);

/// T inside S with dim T = dim(S + Sigma) - d and dim(T + Sigma) = dim(S + Sigma).
Subspace reduce_torus(const SpanComplex& complex, const Subspace& s);

struct WitnessPair {
  Subspace T;
  Subspace S;
  std::size_t value = 0;  // 2d + 2 dim T - dim S
};

WitnessPair witness_pair(const SpanComplex& complex, const Strategy& strategy);

struct NearActionReport {
  bool drop = false;          // value < min(n, 2d)
  std::size_t value = 0;
  std::size_t expected = 0;   // min(n, 2d)
  std::optional<Subspace> witness;
  std::size_t quotient_dim = 0;  // dim(S + Sigma) - dim S
  bool exceeds_dimension_bound = false;  // 2d > dim S + 2 quotient_dim
  bool exceeds_ambient_bound = false;    // n  > dim S + 2 quotient_dim
};

NearActionReport detect_near_action(const SpanComplex& complex, const Strategy& strategy);

/// True iff the amoeba dimension equals d and the complex is a single subspace.
bool orbit_indicator(const SpanComplex& complex, const Strategy& strategy);

}  // namespace amoeba
