#include "amoeba/estimator.hpp"

#include "amoeba/errors.hpp"
#include "json_util.hpp"

#include <Eigen/SVD>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace amoeba {

namespace {

constexpr double kLogRadius = 3.0;
constexpr double kRootMin = 1e-6;
constexpr double kRootMax = 1e6;
constexpr double kCancellation = 1e-12;

Complex ipow(Complex z, int e) {
  if (e < 0) return 1.0 / ipow(z, -e);
  Complex result = 1.0;
  while (e > 0) {
    if (e & 1) result *= z;
    z *= z;
    e >>= 1;
  }
  return result;
}

Complex monomial(std::span<const int> exponents, std::span<const Complex> z) {
  Complex value = 1.0;
  for (std::size_t j = 0; j < exponents.size(); ++j) value *= ipow(z[j], exponents[j]);
  return value;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Row i, columns (2j, 2j+1) = (Re g_ij, -Im g_ij).
Eigen::MatrixXd realify(const Eigen::MatrixXcd& g) {
  Eigen::MatrixXd out(g.rows(), 2 * g.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      out(i, 2 * j) = g(i, j).real();
      out(i, 2 * j + 1) = -g(i, j).imag();
    }
  }
  return out;
}

// Independent stream per sample index, so sample k does not depend on how
// many draws earlier samples consumed.
std::mt19937_64 sample_engine(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

Complex random_point(std::mt19937_64& engine) {
  std::uniform_real_distribution<double> log_radius(-kLogRadius, kLogRadius);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double r = std::exp(log_radius(engine));
  return std::polar(r, angle(engine));
}

void validate_options(const EstimatorOptions& options) {
  if (options.trials < 1) throw ValidationError("trials must be at least 1");
  if (!(options.tol > 0.0 && options.tol < 1.0)) throw ValidationError("tol must lie in (0, 1)");
}

void record(RankEstimate& estimate, const SampleRank& sample) {
  estimate.per_sample_ranks.push_back(sample.rank);
  estimate.per_sample_gaps.push_back(sample.gap);
}

RankEstimate finish(RankEstimate estimate) {
  if (estimate.per_sample_ranks.empty()) {
    throw SamplingError("all " + std::to_string(estimate.samples_rejected) + " samples were rejected");
  }
  estimate.samples_used = estimate.per_sample_ranks.size();
  estimate.rank = *std::max_element(estimate.per_sample_ranks.begin(), estimate.per_sample_ranks.end());
  estimate.singular_value_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < estimate.samples_used; ++k) {
    if (estimate.per_sample_ranks[k] == estimate.rank) {
      estimate.singular_value_gap = std::min(estimate.singular_value_gap, estimate.per_sample_gaps[k]);
    }
  }
  return estimate;
}

Term parse_term(const nlohmann::json& t, bool allow_negative) {
  const auto& coeff = detail::require_array(t, "coeff");
  if (coeff.size() != 2) throw ParseError("\"coeff\" must be [re, im]");
  auto component = [](const nlohmann::json& v) {
    if (v.is_number_float()) return v.get<double>();
    return detail::rational_from_json(v).get_d();
  };
  Term term{{component(coeff[0]), component(coeff[1])}, {}};
  for (const auto& e : detail::require_array(t, "exponents")) {
    if (!e.is_number_integer()) throw ParseError("exponents must be integers");
    const int value = e.get<int>();
    if (!allow_negative && value < 0) throw ValidationError("implicit polynomial exponents must be nonnegative");
    term.exponents.push_back(value);
  }
  return term;
}

std::vector<Term> parse_terms(const nlohmann::json& poly, bool allow_negative) {
  const nlohmann::json& terms = poly.is_array() ? poly : detail::require_array(poly, "terms");
  std::vector<Term> out;
  for (const auto& t : terms) out.push_back(parse_term(t, allow_negative));
  return out;
}

nlohmann::json parse_document(std::string_view text) {
  try {
    auto doc = nlohmann::json::parse(text);
    if (!doc.is_object()) throw ParseError("variety file must be a JSON object");
    return doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("variety file is not valid JSON: ") + e.what());
  }
}

std::size_t nonnegative(long long v, const char* key) {
  if (v < 0) throw ValidationError(std::string("\"") + key + "\" must be nonnegative");
  return static_cast<std::size_t>(v);
}

}  // namespace

LaurentPolynomial::LaurentPolynomial(std::size_t num_vars, std::vector<Term> terms)
    : num_vars_(num_vars), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.exponents.size() != num_vars_) {
      throw ValidationError("term has " + std::to_string(t.exponents.size()) + " exponents, expected " +
                            std::to_string(num_vars_));
    }
  }
}

Complex LaurentPolynomial::evaluate(std::span<const Complex> z) const {
  Complex value = 0.0;
  for (const auto& t : terms_) value += t.coeff * monomial(t.exponents, z);
  return value;
}

Complex LaurentPolynomial::partial(std::size_t var, std::span<const Complex> z) const {
  Complex value = 0.0;
  for (const auto& t : terms_) {
    const int e = t.exponents[var];
    if (e == 0) continue;
    value += t.coeff * static_cast<double>(e) * monomial(t.exponents, z) / z[var];
  }
  return value;
}

double LaurentPolynomial::partial_magnitude(std::size_t var, std::span<const Complex> z) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    const int e = t.exponents[var];
    if (e != 0) total += std::abs(t.coeff * static_cast<double>(e) * monomial(t.exponents, z) / z[var]);
  }
  return total;
}

void Parametrization::validate() const {
  if (components.size() != ambient_dim) {
    throw ValidationError("parametrization has " + std::to_string(components.size()) + " components, expected " +
                          std::to_string(ambient_dim));
  }
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i].terms().empty()) throw ValidationError("component " + std::to_string(i) + " has no terms");
    if (components[i].num_vars() != domain_dim) {
      throw ValidationError("component " + std::to_string(i) + " has the wrong number of variables");
    }
  }
}

void ImplicitHypersurface::validate() const {
  if (ambient_dim < 2) throw ValidationError("implicit hypersurface needs ambient_dim >= 2");
  if (polynomial.num_vars() != ambient_dim) throw ValidationError("polynomial variable count != ambient_dim");
  if (polynomial.terms().size() < 2) throw ValidationError("polynomial needs at least two terms");
  for (const auto& t : polynomial.terms()) {
    if (std::any_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e < 0; })) {
      throw ValidationError("implicit polynomial exponents must be nonnegative");
    }
  }
}

SampleRank numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sigma = svd.singularValues();
  const double top = sigma.size() > 0 ? sigma(0) : 0.0;
  if (!(top > 0.0)) return {};
  std::size_t r = 0;
  while (r < static_cast<std::size_t>(sigma.size()) && sigma(static_cast<Eigen::Index>(r)) / top > tol) ++r;
  const double floor = top * std::numeric_limits<double>::epsilon();
  const double below = r < static_cast<std::size_t>(sigma.size()) ? sigma(static_cast<Eigen::Index>(r)) : 0.0;
  return {r, sigma(static_cast<Eigen::Index>(r) - 1) / std::max(below, floor)};
}

std::optional<Eigen::MatrixXd> log_jacobian(const Parametrization& phi, std::span<const Complex> z) {
  if (z.size() != phi.domain_dim) throw ValidationError("sample point has the wrong dimension");
  if (std::any_of(z.begin(), z.end(), [](Complex c) { return c == 0.0 || !finite(c); })) return std::nullopt;
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(phi.ambient_dim), static_cast<Eigen::Index>(phi.domain_dim));
  for (std::size_t i = 0; i < phi.ambient_dim; ++i) {
    const Complex value = phi.components[i].evaluate(z);
    if (value == 0.0 || !finite(value)) return std::nullopt;
    for (std::size_t j = 0; j < phi.domain_dim; ++j) {
      const Complex entry = phi.components[i].partial(j, z) / value;
      if (!finite(entry)) return std::nullopt;
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry;
    }
  }
  return realify(g);
}

std::optional<std::vector<Complex>> polynomial_roots(std::span<const Complex> coeffs, double tol,
                                                     int max_iterations) {
  std::size_t degree = coeffs.size();
  while (degree > 0 && coeffs[degree - 1] == 0.0) --degree;
  if (degree <= 1) return std::nullopt;
  --degree;
  const Complex lead = coeffs[degree];
  auto eval = [&](Complex x, Complex& derivative) {
    Complex p = lead;
    derivative = 0.0;
    for (std::size_t k = degree; k-- > 0;) {
      derivative = derivative * x + p;
      p = p * x + coeffs[k];
    }
    return p;
  };

  // Start on a circle whose radius is the geometric mean of the root moduli.
  const double radius = coeffs[0] == 0.0 ? 1.0 : std::pow(std::abs(coeffs[0] / lead), 1.0 / static_cast<double>(degree));
  std::vector<Complex> roots(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(degree) + 0.4;
    roots[k] = std::polar(radius, angle);
  }

  for (int iter = 0; iter < max_iterations; ++iter) {
    bool converged = true;
    for (std::size_t k = 0; k < degree; ++k) {
      Complex dp;
      const Complex p = eval(roots[k], dp);
      if (p == 0.0) continue;
      const Complex ratio = p / dp;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < degree; ++j) {
        if (j != k) repulsion += 1.0 / (roots[k] - roots[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      if (!finite(step)) return std::nullopt;
      roots[k] -= step;
      if (std::abs(step) > tol * std::max(1.0, std::abs(roots[k]))) converged = false;
    }
    if (converged) return roots;
  }
  return std::nullopt;
}

RankEstimate estimate_rank(const Parametrization& phi, const EstimatorOptions& options) {
  phi.validate();
  validate_options(options);
  RankEstimate estimate;
  std::vector<Complex> z(phi.domain_dim);
  for (std::size_t k = 0; k < options.trials; ++k) {
    auto engine = sample_engine(options.seed, k);
    for (auto& c : z) c = random_point(engine);
    const auto jac = log_jacobian(phi, z);
    if (!jac) {
      ++estimate.samples_rejected;
      continue;
    }
    record(estimate, numerical_rank(*jac, options.tol));
  }
  return finish(std::move(estimate));
}

RankEstimate estimate_rank_implicit(const ImplicitHypersurface& h, const EstimatorOptions& options) {
  h.validate();
  validate_options(options);
  const std::size_t n = h.ambient_dim;
  const std::size_t last = n - 1;
  const auto& f = h.polynomial;

  std::size_t max_degree = 0;
  for (const auto& t : f.terms()) max_degree = std::max(max_degree, static_cast<std::size_t>(t.exponents[last]));

  RankEstimate estimate;
  std::vector<Complex> x(n);
  for (std::size_t k = 0; k < options.trials; ++k) {
    auto engine = sample_engine(options.seed, k);
    for (std::size_t j = 0; j < last; ++j) x[j] = random_point(engine);

    // Univariate specialization in the last coordinate.
    std::vector<Complex> coeffs(max_degree + 1, 0.0);
    for (const auto& t : f.terms()) {
      Complex c = t.coeff;
      for (std::size_t j = 0; j < last; ++j) c *= ipow(x[j], t.exponents[j]);
      coeffs[static_cast<std::size_t>(t.exponents[last])] += c;
    }
    const auto roots = polynomial_roots(coeffs);
    std::vector<Complex> usable;
    if (roots) {
      for (const auto& r : *roots) {
        if (std::abs(r) >= kRootMin && std::abs(r) <= kRootMax) usable.push_back(r);
      }
    }
    if (usable.empty()) {
      ++estimate.samples_rejected;
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);
    x[last] = usable[pick(engine)];

    const Complex f_last = f.partial(last, x);
    if (!finite(f_last) || std::abs(f_last) <= kCancellation * f.partial_magnitude(last, x)) {
      ++estimate.samples_rejected;
      continue;
    }
    // Local parametrization by the first n-1 coordinates.
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(last));
    bool ok = true;
    for (std::size_t j = 0; j < last; ++j) {
      g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0 / x[j];
      const Complex dx_last = -f.partial(j, x) / f_last;
      const Complex entry = dx_last / x[last];
      ok = ok && finite(entry);
      g(static_cast<Eigen::Index>(last), static_cast<Eigen::Index>(j)) = entry;
    }
    if (!ok) {
      ++estimate.samples_rejected;
      continue;
    }
    record(estimate, numerical_rank(realify(g), options.tol));
  }
  return finish(std::move(estimate));
}

Parametrization parse_parametrization(std::string_view text) {
  const auto doc = parse_document(text);
  Parametrization phi;
  phi.domain_dim = nonnegative(detail::require_integer(doc, "domain_dim"), "domain_dim");
  phi.ambient_dim = nonnegative(detail::require_integer(doc, "ambient_dim"), "ambient_dim");
  for (const auto& component : detail::require_array(doc, "components")) {
    phi.components.emplace_back(phi.domain_dim, parse_terms(component, true));
  }
  phi.validate();
  return phi;
}

ImplicitHypersurface parse_implicit(std::string_view text) {
  const auto doc = parse_document(text);
  ImplicitHypersurface h;
  h.ambient_dim = nonnegative(detail::require_integer(doc, "ambient_dim"), "ambient_dim");
  h.polynomial = LaurentPolynomial(h.ambient_dim, parse_terms(detail::require_key(doc, "polynomial"), false));
  h.validate();
  return h;
}

Verdict cross_check(const SearchResult& combinatorial, const RankEstimate& estimate) {
  return {combinatorial.value, estimate.rank, combinatorial.certified, combinatorial.value == estimate.rank};
}

Verdict cross_check(const SpanComplex& complex, const RankEstimate& estimate, const Strategy& strategy) {
  return cross_check(amoeba_dim(complex, strategy), estimate);
}

}  // namespace amoeba
