#include "amoeba/search.hpp"

#include "amoeba/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <utility>

namespace amoeba {

Strategy Strategy::default_for(std::size_t ambient_dim) {
  return ambient_dim <= 4 ? combined(10000, 1) : lattice(10000);
}

std::string Strategy::describe() const {
  switch (kind) {
    case Kind::lattice:
      return "lattice(cap=" + std::to_string(cap) + ")";
    case Kind::exhaustive:
      return "exhaustive(height=" + std::to_string(height) + ")";
    case Kind::combined:
      return "combined(cap=" + std::to_string(cap) + ",height=" + std::to_string(height) + ")";
  }
  return {};
}

std::size_t objective(const SpanComplex& complex, const Subspace& s) {
  return 2 * dim_sum_with_subspace(complex, s) - s.dim();
}

LatticeCandidates candidate_lattice(const SpanComplex& complex, std::size_t cap) {
  const std::size_t n = complex.ambient_dim();
  LatticeCandidates out;
  auto& list = out.subspaces;
  std::set<Subspace> seen;
  auto add = [&](Subspace s) {
    if (list.size() >= cap) return;
    if (seen.insert(s).second) list.push_back(std::move(s));
  };

  add(Subspace::zero(n));
  add(Subspace::full(n));
  for (const auto& cell : complex.cells()) add(cell.span);

  std::size_t frontier = 0;
  while (list.size() < cap) {
    const std::size_t end = list.size();
    if (frontier == end) {
      out.fixpoint_reached = true;
      break;
    }
    for (std::size_t i = frontier; i < end && list.size() < cap; ++i) {
      for (std::size_t j = 0; j < i && list.size() < cap; ++j) {
        // Copies: `add` may reallocate the list.
        const Subspace a = list[j];
        const Subspace b = list[i];
        const std::size_t s = sum_dim(a, b);
        if (s == std::max(a.dim(), b.dim())) continue;  // nested pair
        if (s < n) add(sum(a, b));
        if (s < a.dim() + b.dim()) add(intersect(a, b));
      }
    }
    frontier = end;
  }
  return out;
}

namespace {

std::vector<IntegerVector> primitive_box_vectors(std::size_t n, int height) {
  std::vector<IntegerVector> out;
  if (n == 0 || height <= 0) return out;
  std::vector<int> digits(n, -height);
  while (true) {
    IntegerVector v(digits.begin(), digits.end());
    const auto lead = std::find_if(digits.begin(), digits.end(), [](int x) { return x != 0; });
    if (lead != digits.end() && *lead > 0) {
      Integer g = 0;
      for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) out.push_back(std::move(v));
    }
    std::size_t k = n;
    while (k-- > 0) {
      if (digits[k] < height) {
        ++digits[k];
        break;
      }
      digits[k] = -height;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<Subspace> enumerate_exhaustive(std::size_t n, int height, const ExhaustiveLimits& limits) {
  const auto vectors = primitive_box_vectors(n, height);
  std::set<Subspace> all;
  all.insert(Subspace::zero(n));
  if (vectors.empty()) return {all.begin(), all.end()};

  std::vector<Subspace> level;
  for (const auto& v : vectors) level.push_back(Subspace::span(n, {v}));
  all.insert(level.begin(), level.end());
  all.insert(Subspace::full(n));

  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::set<Subspace> next;
    for (const auto& u : level) {
      for (const auto& v : vectors) {
        if (u.contains(std::span<const Integer>(v))) continue;
        auto rows = u.basis();
        rows.push_back(v);
        next.insert(Subspace::span(n, std::move(rows)));
        if (all.size() + next.size() > limits.max_subspaces) {
          throw ResourceLimitError("exhaustive enumeration for n=" + std::to_string(n) + ", height=" +
                                   std::to_string(height) + " exceeds " +
                                   std::to_string(limits.max_subspaces) + " subspaces");
        }
      }
    }
    level.assign(next.begin(), next.end());
    all.insert(next.begin(), next.end());
  }
  return {all.begin(), all.end()};
}

void validate(const SpanComplex& complex, const Strategy& strategy) {
  if (strategy.uses_lattice() && strategy.cap < complex.cells().size() + 2) {
    throw ValidationError("lattice cap " + std::to_string(strategy.cap) + " is below cells + 2 = " +
                          std::to_string(complex.cells().size() + 2));
  }
  if (strategy.uses_exhaustive() && strategy.height < 0) {
    throw ValidationError("exhaustive height must be nonnegative");
  }
}

// Minimum objective with ties broken by the Subspace order (dimension, then
// lexicographic basis); `candidates` is iterated in that order.
std::pair<std::size_t, Subspace> best_candidate(const SpanComplex& complex,
                                                const std::set<Subspace>& candidates) {
  std::size_t best_value = 0;
  const Subspace* best = nullptr;
  for (const auto& s : candidates) {
    const std::size_t v = objective(complex, s);
    if (best == nullptr || v < best_value) {
      best_value = v;
      best = &s;
    }
  }
  return {best_value, *best};
}

std::set<Subspace> collect_candidates(const SpanComplex& complex, const Strategy& strategy,
                                      std::optional<bool>& fixpoint) {
  validate(complex, strategy);
  const std::size_t n = complex.ambient_dim();
  std::set<Subspace> candidates{Subspace::zero(n), Subspace::full(n)};
  if (strategy.uses_lattice()) {
    auto lattice = candidate_lattice(complex, strategy.cap);
    fixpoint = fixpoint.value_or(true) && lattice.fixpoint_reached;
    candidates.insert(lattice.subspaces.begin(), lattice.subspaces.end());
  }
  if (strategy.uses_exhaustive()) {
    const auto extra = exhaustive_candidates(n, strategy.height);
    candidates.insert(extra.begin(), extra.end());
  }
  if (complex.factors().size() == 2) {
    const SpanComplex& f1 = complex.factors()[0];
    const SpanComplex& f2 = complex.factors()[1];
    Strategy sub = strategy;
    if (sub.uses_lattice()) {
      sub.cap = std::max({sub.cap, f1.cells().size() + 2, f2.cells().size() + 2});
    }
    const auto c1 = collect_candidates(f1, sub, fixpoint);
    const auto c2 = collect_candidates(f2, sub, fixpoint);
    candidates.insert(direct_sum(best_candidate(f1, c1).second, best_candidate(f2, c2).second));
    if (c1.size() * c2.size() <= std::max<std::size_t>(strategy.cap, 10000)) {
      for (const auto& a : c1) {
        for (const auto& b : c2) candidates.insert(direct_sum(a, b));
      }
    }
  }
  return candidates;
}

}  // namespace

std::vector<Subspace> exhaustive_candidates(std::size_t ambient_dim, int height,
                                            const ExhaustiveLimits& limits) {
  if (height < 0) throw ValidationError("exhaustive height must be nonnegative");
  std::size_t box = 1;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    box *= static_cast<std::size_t>(2 * height + 1);
    if (box > limits.max_box_points) {
      throw ResourceLimitError("exhaustive enumeration refused: (2*" + std::to_string(height) + "+1)^" +
                               std::to_string(ambient_dim) + " exceeds " +
                               std::to_string(limits.max_box_points) + " generator candidates");
    }
  }

  using Key = std::pair<std::size_t, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const std::vector<Subspace>>> cache;
  const Key key{ambient_dim, height};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) {
      if (it->second->size() > limits.max_subspaces) {
        throw ResourceLimitError("exhaustive enumeration for n=" + std::to_string(ambient_dim) + ", height=" +
                                 std::to_string(height) + " exceeds " +
                                 std::to_string(limits.max_subspaces) + " subspaces");
      }
      return *it->second;
    }
  }
  auto result = std::make_shared<const std::vector<Subspace>>(enumerate_exhaustive(ambient_dim, height, limits));
  std::lock_guard lock(mutex);
  cache.emplace(key, result);
  return *result;
}

SearchResult amoeba_dim(const SpanComplex& complex, const Strategy& strategy) {
  std::optional<bool> fixpoint;
  const auto candidates = collect_candidates(complex, strategy, fixpoint);
  auto [value, witness] = best_candidate(complex, candidates);

  SearchResult result;
  result.value = value;
  result.witness_T = reduce_torus(complex, witness);
  result.witness_S = std::move(witness);
  result.lower_bound = complex.dim();
  result.upper_bound = value;
  result.certified = value == result.lower_bound;
  result.candidates_evaluated = candidates.size();
  result.strategy = strategy.describe();
  result.lattice_fixpoint = fixpoint;
  return result;
}

Subspace reduce_torus(const SpanComplex& complex, const Subspace& s) {
  require_same_ambient(complex.ambient_dim(), s.ambient_dim(), "reduce_torus");
  const std::size_t target = dim_sum_with_subspace(complex, s);
  Subspace t = Subspace::zero(s.ambient_dim());
  std::size_t current = complex.dim();

  // Grow T one basis vector of S at a time, always by a vector that raises
  // dim(T + Sigma).
  while (current < target) {
    bool grown = false;
    for (const auto& v : s.basis()) {
      if (t.contains(std::span<const Integer>(v))) continue;
      Subspace candidate = sum(t, Subspace::span(s.ambient_dim(), {v}));
      const std::size_t reached = dim_sum_with_subspace(complex, candidate);
      if (reached > current) {
        t = std::move(candidate);
        current = reached;
        grown = true;
        break;
      }
    }
    if (!grown) break;
  }
  if (current == target) return t;

  // Greedy growth can stall when every max-dimensional cell of T + Sigma
  // already contains S. Fall back to a complement of <C> cap S inside S for
  // a cell C with dim(<C> + S) maximal.
  const auto& cells = complex.cells();
  const auto widest = std::find_if(cells.begin(), cells.end(),
                                   [&](const Cell& c) { return sum_dim(c.span, s) == target; });
  Subspace reach = widest->span;
  t = Subspace::zero(s.ambient_dim());
  for (const auto& v : s.basis()) {
    if (reach.contains(std::span<const Integer>(v))) continue;
    const Subspace line = Subspace::span(s.ambient_dim(), {v});
    reach = sum(reach, line);
    t = sum(t, line);
  }
  return t;
}

WitnessPair witness_pair(const SpanComplex& complex, const Strategy& strategy) {
  const auto result = amoeba_dim(complex, strategy);
  return {result.witness_T, result.witness_S, 2 * complex.dim() + 2 * result.witness_T.dim() - result.witness_S.dim()};
}

NearActionReport detect_near_action(const SpanComplex& complex, const Strategy& strategy) {
  const auto result = amoeba_dim(complex, strategy);
  NearActionReport report;
  report.value = result.value;
  report.expected = std::min(complex.ambient_dim(), 2 * complex.dim());
  report.drop = result.value < report.expected;
  if (report.drop) {
    const auto& s = result.witness_S;
    report.quotient_dim = dim_sum_with_subspace(complex, s) - s.dim();
    report.exceeds_dimension_bound = 2 * complex.dim() > s.dim() + 2 * report.quotient_dim;
    report.exceeds_ambient_bound = complex.ambient_dim() > s.dim() + 2 * report.quotient_dim;
    report.witness = s;
  }
  return report;
}

bool orbit_indicator(const SpanComplex& complex, const Strategy& strategy) {
  return complex.cells().size() == 1 && amoeba_dim(complex, strategy).value == complex.dim();
}

}  // namespace amoeba
