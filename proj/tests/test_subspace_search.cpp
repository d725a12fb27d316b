#include "amoeba/errors.hpp"
#include "amoeba/families.hpp"
#include "amoeba/search.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace amoeba;
using namespace amoeba::testing;

namespace {

SpanComplex generic_curve() {
  return families::curve_fan(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1}), iv({-1, -1, -1})});
}

SpanComplex single(const Subspace& s) { return SpanComplex::from_cells(s.ambient_dim(), {{s, std::nullopt}}); }

// Independent closure: generation k+1 holds every sum and intersection of a
// pair with at least one member from generation k that is not yet known.
std::vector<std::set<OracleSpace>> oracle_generations(const SpanComplex& complex, int generations) {
  const std::size_t n = complex.ambient_dim();
  std::set<OracleSpace> known;
  std::set<OracleSpace> newest;
  auto full = naive_nullspace({}, n);
  for (const auto& s : {OracleSpace{}, naive_rref(full)}) newest.insert(s);
  for (const auto& c : complex.cells()) newest.insert(oracle_space(c.span));
  std::vector<std::set<OracleSpace>> out;
  for (int g = 0; g < generations && !newest.empty(); ++g) {
    known.insert(newest.begin(), newest.end());
    out.push_back(known);
    std::set<OracleSpace> next;
    for (const auto& a : newest) {
      for (const auto& b : known) {
        for (auto s : {oracle_sum(a, b), oracle_intersect(a, b, n)}) {
          if (!known.contains(s)) next.insert(std::move(s));
        }
      }
    }
    newest = std::move(next);
  }
  if (newest.empty()) out.push_back(known);  // repeated entry marks the fixpoint
  return out;
}

std::set<OracleSpace> as_oracle_set(const std::vector<Subspace>& xs) {
  std::set<OracleSpace> out;
  for (const auto& s : xs) out.insert(oracle_space(s));
  return out;
}

// Brute-force minimum of 2 dim(S + Sigma) - dim S over every S spanned by
// vectors with entries in [-h, h], using only naive ranks.
std::size_t oracle_minimum(const SpanComplex& complex, int h) {
  const std::size_t n = complex.ambient_dim();
  std::vector<RationalVector> box;
  std::vector<int> digits(n, -h);
  while (true) {
    box.emplace_back(digits.begin(), digits.end());
    std::size_t k = n;
    while (k-- > 0 && digits[k] == h) digits[k] = -h;
    if (k == static_cast<std::size_t>(-1)) break;
    ++digits[k];
  }
  std::size_t best = 2 * complex.dim();
  std::vector<RationalVector> gens;
  auto visit = [&](auto&& self, std::size_t from) -> void {
    const std::size_t ds = naive_rank(gens);
    std::size_t reach = 0;
    for (const auto& c : complex.cells()) {
      auto rows = gens;
      for (const auto& r : as_rational(c.span.basis())) rows.push_back(r);
      reach = std::max(reach, naive_rank(rows));
    }
    best = std::min(best, 2 * reach - ds);
    if (gens.size() == n) return;
    for (std::size_t i = from; i < box.size(); ++i) {
      gens.push_back(box[i]);
      self(self, i + 1);
      gens.pop_back();
    }
  };
  visit(visit, 0);
  return best;
}

}  // namespace

TEST_CASE("objective examples") {
  const auto h = families::tropical_hyperplane(3);
  CHECK(objective(h, Subspace::zero(3)) == 4);
  CHECK(objective(h, Subspace::full(3)) == 3);
  const auto s = span_of(3, {{1, 0, 0}, {0, 1, 0}});
  REQUIRE(oracle_dim_sum(h, s) == 3);
  CHECK(objective(h, s) == 2 * 3 - 2);
  CHECK_THROWS_AS(objective(h, Subspace::zero(2)), ValidationError);
}

TEST_CASE("candidate_lattice examples") {
  const auto line = single(span_of(2, {{1, 0}}));
  const auto small = candidate_lattice(line, 100);
  CHECK(small.fixpoint_reached);
  CHECK(as_oracle_set(small.subspaces) ==
        std::set<OracleSpace>{OracleSpace{}, oracle_space(span_of(2, {{1, 0}})), oracle_space(Subspace::full(2))});

  const auto plane = candidate_lattice(families::tropical_hyperplane(3), 10000);
  CHECK(std::find(plane.subspaces.begin(), plane.subspaces.end(), span_of(3, {{1, 0, 0}})) != plane.subspaces.end());

  const auto trop_line = candidate_lattice(families::tropical_hyperplane(2), 100);
  CHECK(trop_line.fixpoint_reached);
  CHECK(trop_line.subspaces.size() == 5);
}

TEST_CASE("candidate_lattice of a generic space curve matches the generational oracle") {
  // The closure of four generic lines in Q^3 never stabilizes (each
  // generation of planes meets in new lines), so compare at generation
  // boundaries and check that the cap is reported.
  const auto curve = generic_curve();
  const auto gens = oracle_generations(curve, 4);
  REQUIRE(gens.size() == 4);
  CHECK(gens[0].size() == 6);
  CHECK(gens[1].size() == 12);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto lattice = candidate_lattice(curve, gens[g].size());
    CHECK(as_oracle_set(lattice.subspaces) == gens[g]);
    CHECK_FALSE(lattice.fixpoint_reached);
  }
  const auto big = candidate_lattice(curve, 500);
  CHECK(big.subspaces.size() == 500);
  CHECK_FALSE(big.fixpoint_reached);
}

TEST_CASE("property: candidate_lattice agrees with the oracle closure") {
  std::mt19937 rng(31);
  int closed = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    const auto sigma = random_complex(rng, n, 1 + rng() % (n - 1), 1 + rng() % 3, 1);
    const auto gens = oracle_generations(sigma, 3);
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const auto lattice = candidate_lattice(sigma, gens[g].size());
      CHECK(as_oracle_set(lattice.subspaces) == gens[g]);
    }
    if (gens.size() >= 2 && gens[gens.size() - 1] == gens[gens.size() - 2]) {
      ++closed;
      CHECK(candidate_lattice(sigma, 10000).fixpoint_reached);
    }
  }
  CHECK(closed > 0);
}

TEST_CASE("amoeba_dim examples") {
  const auto h = amoeba_dim(families::tropical_hyperplane(3), Strategy::lattice());
  CHECK(h.value == 3);
  CHECK(h.witness_S == Subspace::full(3));
  CHECK(h.lower_bound == 2);
  CHECK(h.upper_bound == 3);
  CHECK_FALSE(h.certified);

  const auto s0 = span_of(4, {{1, 2, 0, -1}, {0, 1, 1, 3}});
  const auto orbit = amoeba_dim(single(s0), Strategy::lattice());
  CHECK(orbit.value == 2);
  CHECK(orbit.witness_S == s0);
  CHECK(orbit.certified);

  const auto curve = generic_curve();
  const std::size_t brute = oracle_minimum(curve, 1);
  CHECK(brute == 2);
  for (const auto& strategy : {Strategy::lattice(), Strategy::exhaustive(1), Strategy::combined(10000, 1)}) {
    const auto r = amoeba_dim(curve, strategy);
    CHECK(r.value == brute);
    CHECK(r.witness_S.is_zero());
    CHECK(r.strategy == strategy.describe());
  }
  CHECK(amoeba_dim(curve, Strategy::lattice(300)).lattice_fixpoint == false);
  CHECK_FALSE(amoeba_dim(curve, Strategy::exhaustive(1)).lattice_fixpoint.has_value());
}

TEST_CASE("amoeba_dim rejects invalid strategies") {
  const auto h = families::tropical_hyperplane(3);
  CHECK_THROWS_AS(amoeba_dim(h, Strategy::lattice(7)), ValidationError);
  CHECK_NOTHROW(amoeba_dim(h, Strategy::lattice(8)));
  CHECK_THROWS_AS(amoeba_dim(h, Strategy::exhaustive(-1)), ValidationError);
  CHECK_THROWS_AS(amoeba_dim(families::tropical_hyperplane(7), Strategy::exhaustive(1)), ResourceLimitError);
}

TEST_CASE("strategy descriptors and defaults") {
  CHECK(Strategy::lattice(50).describe() == "lattice(cap=50)");
  CHECK(Strategy::exhaustive(2).describe() == "exhaustive(height=2)");
  CHECK(Strategy::combined(10000, 1).describe() == "combined(cap=10000,height=1)");
  CHECK(Strategy::default_for(4).describe() == "combined(cap=10000,height=1)");
  CHECK(Strategy::default_for(5).describe() == "lattice(cap=10000)");
}

TEST_CASE("exhaustive_candidates examples") {
  const auto one = exhaustive_candidates(1, 1);
  CHECK(std::set<Subspace>(one.begin(), one.end()) == std::set<Subspace>{Subspace::zero(1), Subspace::full(1)});

  // Primitive vectors of {-1,0,1}^2 up to sign: e1, e2, (1,1), (1,-1).
  const auto two = exhaustive_candidates(2, 1);
  const std::set<Subspace> expected{Subspace::zero(2),           Subspace::full(2),
                                    span_of(2, {{1, 0}}),        span_of(2, {{0, 1}}),
                                    span_of(2, {{1, 1}}),        span_of(2, {{1, -1}})};
  CHECK(std::set<Subspace>(two.begin(), two.end()) == expected);
  CHECK(two.size() == expected.size());

  const auto none = exhaustive_candidates(2, 0);
  REQUIRE(none.size() == 1);
  CHECK(none[0].is_zero());

  CHECK_THROWS_AS(exhaustive_candidates(7, 1), ResourceLimitError);
  CHECK_THROWS_AS(exhaustive_candidates(3, 1, ExhaustiveLimits{729, 10}), ResourceLimitError);
  CHECK_THROWS_AS(exhaustive_candidates(2, -1), ValidationError);
}

TEST_CASE("exhaustive_candidates of Q^3 at height 1 match a brute-force span enumeration") {
  std::set<OracleSpace> brute;
  std::vector<RationalVector> box;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) box.push_back({a, b, c});
  for (std::size_t i = 0; i < box.size(); ++i)
    for (std::size_t j = i; j < box.size(); ++j)
      for (std::size_t k = j; k < box.size(); ++k) brute.insert(naive_rref({box[i], box[j], box[k]}));
  const auto got = exhaustive_candidates(3, 1);
  CHECK(got.size() == brute.size());
  CHECK(as_oracle_set(got) == brute);
}

TEST_CASE("reduce_torus examples") {
  const auto h = families::tropical_hyperplane(3);
  CHECK(reduce_torus(h, Subspace::zero(3)).is_zero());
  const auto line = single(span_of(2, {{1, 0}}));
  REQUIRE(oracle_dim_sum(line, span_of(2, {{1, 0}})) == 1);
  CHECK(reduce_torus(line, span_of(2, {{1, 0}})).is_zero());
  CHECK(reduce_torus(line, Subspace::full(2)) == span_of(2, {{0, 1}}));
  CHECK(reduce_torus(h, Subspace::full(3)) == span_of(3, {{1, 0, 0}}));
  CHECK_THROWS_AS(reduce_torus(h, Subspace::zero(2)), ValidationError);
}

TEST_CASE("witness_pair examples") {
  const auto h = witness_pair(families::tropical_hyperplane(3), Strategy::lattice());
  CHECK(h.T == span_of(3, {{1, 0, 0}}));
  CHECK(h.S == Subspace::full(3));
  CHECK(h.value == 3);

  const auto s0 = span_of(3, {{1, 0, 1}, {0, 1, 1}});
  const auto orbit = witness_pair(single(s0), Strategy::lattice());
  CHECK(orbit.T.is_zero());
  CHECK(orbit.S == s0);
  CHECK(orbit.value == 2);

  const auto curve = witness_pair(generic_curve(), Strategy::lattice());
  CHECK(curve.T.is_zero());
  CHECK(curve.S.is_zero());
  CHECK(curve.value == 2);
}

TEST_CASE("detect_near_action examples") {
  const auto h = detect_near_action(families::tropical_hyperplane(3), Strategy::lattice());
  CHECK_FALSE(h.drop);
  CHECK(h.value == 3);
  CHECK(h.expected == 3);
  CHECK_FALSE(h.witness.has_value());

  const auto line = detect_near_action(single(span_of(3, {{1, 0, 0}})), Strategy::lattice());
  CHECK(line.drop);
  CHECK(line.value == 1);
  REQUIRE(line.witness.has_value());
  CHECK(*line.witness == span_of(3, {{1, 0, 0}}));
  CHECK(line.exceeds_dimension_bound);
  CHECK(line.exceeds_ambient_bound);

  const auto base = product(families::point(1), generic_curve());
  const auto sigma = families::torus_invariant(base, span_of(4, {{1, 0, 0, 0}}));
  const auto report = detect_near_action(sigma, Strategy::lattice());
  CHECK(report.drop);
  CHECK(report.value == 3);
  CHECK(report.expected == 4);
  REQUIRE(report.witness.has_value());
  CHECK(*report.witness == span_of(4, {{1, 0, 0, 0}}));
  CHECK(report.quotient_dim == 1);
  CHECK(report.exceeds_dimension_bound);
  CHECK(report.exceeds_ambient_bound);
}

TEST_CASE("orbit_indicator examples") {
  CHECK(orbit_indicator(single(span_of(4, {{1, 0, 0, 0}, {0, 1, 1, 0}})), Strategy::lattice()));
  CHECK_FALSE(orbit_indicator(families::tropical_hyperplane(3), Strategy::lattice()));

  const auto axes = SpanComplex::from_cells(2, {{span_of(2, {{1, 0}}), std::nullopt}, {span_of(2, {{0, 1}}), std::nullopt}});
  std::size_t best = 100;
  for (const auto& s : exhaustive_candidates(2, 1)) best = std::min(best, objective(axes, s));
  CHECK(best == 2);
  CHECK(amoeba_dim(axes, Strategy::lattice()).value == 2);
  CHECK_FALSE(orbit_indicator(axes, Strategy::lattice()));
}

TEST_CASE("property: objective never drops below d") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const std::size_t d = rng() % (n + 1);
    const auto sigma = random_complex(rng, n, d, 1 + rng() % 4, 2);
    const auto s = random_subspace(rng, n, rng() % (n + 1), 2);
    // With m the smallest dim(<C> cap S), objective = dim S + 2d - 2m.
    std::size_t m = n;
    for (const auto& c : sigma.cells()) m = std::min(m, c.span.dim() + s.dim() - oracle_sum_dim(c.span, s));
    CHECK(objective(sigma, s) == s.dim() + 2 * d - 2 * m);
    CHECK(objective(sigma, s) >= d);
  }
}

TEST_CASE("property: bracket, witness consistency and reduce_torus postconditions") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const std::size_t d = rng() % (n + 1);
    const auto sigma = random_complex(rng, n, d, 1 + rng() % 4, 2);
    const auto r = amoeba_dim(sigma, Strategy::lattice(2000));
    CHECK(d == r.lower_bound);
    CHECK(r.lower_bound <= r.value);
    CHECK(r.value == r.upper_bound);
    CHECK(r.value <= std::min(2 * d, n));
    CHECK(objective(sigma, r.witness_S) == r.value);
    CHECK(r.witness_S.contains(r.witness_T));
    CHECK(2 * d + 2 * r.witness_T.dim() - r.witness_S.dim() == r.value);
    CHECK(r.certified == (r.value == d));

    const auto s = random_subspace(rng, n, rng() % (n + 1), 2);
    const auto t = reduce_torus(sigma, s);
    CHECK(s.contains(t));
    CHECK(t.dim() == oracle_dim_sum(sigma, s) - d);
    CHECK(oracle_dim_sum(sigma, t) == oracle_dim_sum(sigma, s));
  }
}

TEST_CASE("property: tie-break picks the smallest minimizer") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    const auto sigma = random_complex(rng, n, 1 + rng() % (n - 1), 1 + rng() % 3, 1);
    const auto r = amoeba_dim(sigma, Strategy::exhaustive(1));
    for (const auto& s : exhaustive_candidates(n, 1)) {
      const auto v = objective(sigma, s);
      CHECK(v >= r.value);
      if (v == r.value) CHECK_FALSE(s < r.witness_S);
    }
  }
}

TEST_CASE("property: unimodular invariance of the lattice value") {
  std::mt19937 rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    const auto sigma = random_complex(rng, n, 1 + rng() % (n - 1), 1 + rng() % 3, 2);
    const auto base = amoeba_dim(sigma, Strategy::lattice(300)).value;
    for (int k = 0; k < 3; ++k) {
      const auto m = random_unimodular(rng, n);
      CHECK(amoeba_dim(image(sigma, m), Strategy::lattice(300)).value == base);
    }
  }
}

TEST_CASE("property: product subadditivity") {
  std::mt19937 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n1 = 1 + rng() % 2, n2 = 1 + rng() % 2;
    const auto a = random_complex(rng, n1, rng() % (n1 + 1), 1 + rng() % 3, 2);
    const auto b = random_complex(rng, n2, rng() % (n2 + 1), 1 + rng() % 3, 2);
    const auto va = amoeba_dim(a, Strategy::lattice()).value;
    const auto vb = amoeba_dim(b, Strategy::lattice()).value;
    const auto vp = amoeba_dim(product(a, b), Strategy::lattice()).value;
    CHECK(vp <= va + vb);
    CHECK(vp >= a.dim() + b.dim());
  }
  const auto line = families::tropical_hyperplane(2);
  CHECK(amoeba_dim(product(line, line), Strategy::lattice()).value == 4);
  CHECK(amoeba_dim(product(families::point(1), line), Strategy::lattice()).value == 2);
}

TEST_CASE("property: lattice never beats the exhaustive oracle on small fans") {
  std::mt19937 rng(46);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    const auto sigma = random_complex(rng, n, 1 + rng() % (n - 1), 1 + rng() % 3, 2);
    const auto lattice = amoeba_dim(sigma, Strategy::lattice()).value;
    const auto exhaustive = amoeba_dim(sigma, Strategy::exhaustive(2)).value;
    const auto combined = amoeba_dim(sigma, Strategy::combined(10000, 2)).value;
    CHECK(lattice == exhaustive);
    CHECK(combined == std::min(lattice, exhaustive));
  }
}
