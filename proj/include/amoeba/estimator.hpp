#pragma once

// Numerical estimate of the amoeba dimension: the generic rank of the real
// Jacobian of z -> Log|phi(z)| over random sample points.
//
// For a holomorphic component phi_i, the real gradient of log|phi_i| with
// respect to (Re z_j, Im z_j) is (Re g, -Im g) with g = (d phi_i / d z_j) / phi_i.

#include "amoeba/search.hpp"
#include "amoeba/span_complex.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace amoeba {

using Complex = std::complex<double>;

struct Term {
  Complex coeff;
  std::vector<int> exponents;
};

class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(std::size_t num_vars, std::vector<Term> terms);

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }

  Complex evaluate(std::span<const Complex> z) const;
  Complex partial(std::size_t var, std::span<const Complex> z) const;
  /// Sum of |coefficient * monomial| over the terms of the partial derivative;
  /// the scale against which cancellation in partial() is judged.
  double partial_magnitude(std::size_t var, std::span<const Complex> z) const;

 private:
  std::size_t num_vars_ = 0;
  std::vector<Term> terms_;
};

struct Parametrization {
  std::size_t domain_dim = 0;
  std::size_t ambient_dim = 0;
  std::vector<LaurentPolynomial> components;

  /// Throws ValidationError: component count, empty components, exponent length.
  void validate() const;
};

struct ImplicitHypersurface {
  std::size_t ambient_dim = 0;
  LaurentPolynomial polynomial;

  /// Throws ValidationError: n < 2, fewer than two terms, negative exponents.
  void validate() const;
};

struct EstimatorOptions {
  std::size_t trials = 20;
  double tol = 1e-8;
  std::uint64_t seed = 1;
};

struct RankEstimate {
  std::size_t rank = 0;
  std::size_t samples_used = 0;
  std::size_t samples_rejected = 0;
  /// Smallest cutoff gap among accepted samples that reached `rank`.
  double singular_value_gap = 0.0;
  std::vector<std::size_t> per_sample_ranks;
  std::vector<double> per_sample_gaps;
};

struct SampleRank {
  std::size_t rank = 0;
  /// sigma_r / sigma_{r+1}; a missing or tiny sigma_{r+1} is floored at
  /// machine epsilon times sigma_1. Zero when the matrix vanishes.
  double gap = 0.0;
};

/// Count of singular values with sigma_k / sigma_1 > tol.
SampleRank numerical_rank(const Eigen::MatrixXd& m, double tol);

/// n x 2m real Jacobian of Log|phi| at z, columns ordered (Re z_1, Im z_1, ...).
/// Empty when a coordinate of z or phi(z) vanishes or the arithmetic is not finite.
std::optional<Eigen::MatrixXd> log_jacobian(const Parametrization& phi, std::span<const Complex> z);

/// Roots of sum_k coeffs[k] x^k by Aberth iteration. Leading zero
/// coefficients are dropped. Empty when the polynomial is constant or the
/// iteration does not converge within `max_iterations`.
std::optional<std::vector<Complex>> polynomial_roots(std::span<const Complex> coeffs, double tol = 1e-12,
                                                     int max_iterations = 200);

/// Throws ValidationError for bad options and SamplingError if every sample is rejected.
RankEstimate estimate_rank(const Parametrization& phi, const EstimatorOptions& options);
RankEstimate estimate_rank_implicit(const ImplicitHypersurface& h, const EstimatorOptions& options);

/// Readers for the JSON variety formats (see README). ParseError/ValidationError.
Parametrization parse_parametrization(std::string_view text);
ImplicitHypersurface parse_implicit(std::string_view text);

struct Verdict {
  std::size_t combinatorial = 0;
  std::size_t numerical = 0;
  bool certified = false;
  bool agree = false;
};

Verdict cross_check(const SearchResult& combinatorial, const RankEstimate& estimate);
Verdict cross_check(const SpanComplex& complex, const RankEstimate& estimate, const Strategy& strategy);

}  // namespace amoeba
