#include <doctest.h>

#include <cmath>

#include "helly/polytope.hpp"
#include "oracles.hpp"

using namespace helly;

namespace {

Vec make(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

NormSpec lp(int dim, double p) { return NormSpec(dim, Exponent::finite(p)); }
NormSpec linf(int dim) { return NormSpec(dim, Exponent::infinity()); }

VPolytope random_polytope(CounterRng& rng, int dim, int max_vertices, double scale = 1.5) {
  int m = 1 + static_cast<int>(rng.below(max_vertices));
  std::vector<Vec> verts;
  for (int j = 0; j < m; ++j) {
    Vec v(dim);
    for (int c = 0; c < dim; ++c) v[c] = rng.uniform(-scale, scale);
    verts.push_back(v);
  }
  return VPolytope(verts);
}

}  // namespace

TEST_CASE("distance basics") {
  VPolytope seg({make({1, 0}), make({0, 1})});
  SUBCASE("a vertex is at distance zero") {
    DistanceResult d = distance(make({1, 0}), seg, lp(2, 2), 1e-9);
    CHECK(d.value <= 1e-9);
    CHECK_FALSE(d.subgradient.has_value());
  }
  SUBCASE("origin to the segment in l2") {
    DistanceResult d = distance(make({0, 0}), seg, lp(2, 2), 1e-9);
    CHECK(d.value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-7));
    CHECK(d.weights.sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d.weights.minCoeff() >= -1e-12);
  }
  SUBCASE("singleton all-ones in l_inf") {
    VPolytope one({Vec(Vec::Ones(7))});
    CHECK(distance(Vec(Vec::Zero(7)), one, linf(7), 1e-9).value == doctest::Approx(1.0));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(distance(make({0, 0, 0}), seg, lp(3, 2), 1e-9), std::invalid_argument);
  }
}

TEST_CASE("distance subgradient: worked cases") {
  SUBCASE("l2, singleton at 2e1") {
    VPolytope K({make({2, 0})});
    Vec psi = distance_subgradient(make({0, 0}), K, lp(2, 2));
    CHECK(psi[0] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(psi[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(psi.dot(make({2, 0})) == doctest::Approx(-2.0).epsilon(1e-9));
  }
  SUBCASE("l1, singleton at e1+e2") {
    VPolytope K({make({1, 1})});
    Vec psi = distance_subgradient(make({0, 0}), K, lp(2, 1));
    CHECK(norm(psi, linf(2)) <= 1.0 + 1e-9);
    CHECK(psi.dot(make({1, 1})) == doctest::Approx(-2.0).epsilon(1e-9));
  }
  SUBCASE("l_inf, vertical facet") {
    VPolytope K({make({1, 1}), make({1, -1})});
    Vec psi = distance_subgradient(make({0, 0}), K, linf(2));
    CHECK(psi[0] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(psi[1] == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("refuses on the set") {
    VPolytope K({make({0, 0}), make({1, 0})});
    CHECK_THROWS_AS(distance_subgradient(make({0.5, 0}), K, lp(2, 2)), std::invalid_argument);
  }
}

TEST_CASE("support values") {
  VPolytope seg({make({-1, 0}), make({1, 0})});
  CHECK(support_value(seg, make({1, 0})) == doctest::Approx(1.0));
  CHECK(support_value(seg, make({0, 0})) == doctest::Approx(0.0));
  VPolytope tri({make({1, 0}), make({0, 1})});
  CHECK(support_value(tri, make({1, 1})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(support_value(seg, make({1, 0, 0})), std::invalid_argument);
}

TEST_CASE("contains") {
  VPolytope seg({make({1, 0}), make({0, 1})});
  CHECK(contains(make({1, 0}), seg, lp(2, 2)));
  CHECK(contains(make({0.5, 0.5}), seg, lp(2, 2), 1e-7));
  CHECK_FALSE(contains(make({3, 3}), seg, lp(2, 2)));
}

TEST_CASE("grid oracle agrees with exact euclidean face enumeration") {
  for (int rep = 0; rep < 40; ++rep) {
    CounterRng rng(60, {static_cast<std::uint64_t>(rep)});
    int dim = 2 + static_cast<int>(rng.below(2));
    VPolytope K = random_polytope(rng, dim, 5);
    Vec x(dim);
    for (int c = 0; c < dim; ++c) x[c] = rng.uniform(-2, 2);
    double grid = oracles::grid_min_distance(x, K, lp(dim, 2));
    double exact = oracles::exact_l2_distance(x, K);
    CHECK(grid == doctest::Approx(exact).epsilon(1e-5));
  }
}

TEST_CASE("distance matches the grid oracle across exponents") {
  const double ps[] = {1.0, 1.5, 2.0, 3.0, 0.0};  // 0 encodes inf
  for (int rep = 0; rep < 60; ++rep) {
    CounterRng rng(61, {static_cast<std::uint64_t>(rep)});
    int dim = 2 + static_cast<int>(rng.below(2));
    double pv = ps[rep % 5];
    NormSpec sp = pv == 0.0 ? linf(dim) : lp(dim, pv);
    VPolytope K = random_polytope(rng, dim, 5);
    Vec x(dim);
    for (int c = 0; c < dim; ++c) x[c] = rng.uniform(-2, 2);
    DistanceResult d = distance(x, K, sp, 1e-7);
    double oracle = oracles::grid_min_distance(x, K, sp);
    CHECK(std::abs(d.value - oracle) <= 1e-4);
  }
}

TEST_CASE("subgradient certificate inequality holds on all vertices") {
  const double ps[] = {1.0, 1.5, 2.0, 3.0, 0.0};
  for (int rep = 0; rep < 80; ++rep) {
    CounterRng rng(62, {static_cast<std::uint64_t>(rep)});
    int dim = 2 + static_cast<int>(rng.below(3));
    double pv = ps[rep % 5];
    NormSpec sp = pv == 0.0 ? linf(dim) : lp(dim, pv);
    VPolytope K = random_polytope(rng, dim, 5);
    Vec x(dim);
    for (int c = 0; c < dim; ++c) x[c] = rng.uniform(2.0, 3.0) * (rng.unit() < 0.5 ? -1 : 1);
    DistanceResult d = distance(x, K, sp, 1e-8);
    if (d.value <= 1e-8) continue;
    REQUIRE(d.subgradient.has_value());
    const Vec& psi = *d.subgradient;
    CHECK(norm(psi, dual_space(sp)) <= 1.0 + 1e-8);
    CHECK(psi.dot(x - d.nearest) >= d.value - 1e-6);
    for (const Vec& v : K.vertices) {
      CHECK(psi.dot(v - x) <= -(d.value - 1e-6));
    }
  }
}

TEST_CASE("distance is 1-Lipschitz in the query point") {
  const double ps[] = {1.0, 2.0, 3.0, 0.0};
  for (int rep = 0; rep < 60; ++rep) {
    CounterRng rng(63, {static_cast<std::uint64_t>(rep)});
    int dim = 2 + static_cast<int>(rng.below(3));
    double pv = ps[rep % 4];
    NormSpec sp = pv == 0.0 ? linf(dim) : lp(dim, pv);
    VPolytope K = random_polytope(rng, dim, 4);
    Vec x(dim), y(dim);
    for (int c = 0; c < dim; ++c) {
      x[c] = rng.uniform(-2, 2);
      y[c] = rng.uniform(-2, 2);
    }
    double dx = distance(x, K, sp, 1e-8).value;
    double dy = distance(y, K, sp, 1e-8).value;
    CHECK(std::abs(dx - dy) <= norm(Vec(x - y), sp) + 2e-8);
  }
}

TEST_CASE("smooth-exponent subgradient matches finite differences") {
  for (double pv : {1.5, 2.0, 3.0}) {
    for (int rep = 0; rep < 20; ++rep) {
      CounterRng rng(64, {static_cast<std::uint64_t>(pv * 2), static_cast<std::uint64_t>(rep)});
      int dim = 3;
      NormSpec sp = lp(dim, pv);
      VPolytope K = random_polytope(rng, dim, 4, 0.8);
      Vec x(dim);
      for (int c = 0; c < dim; ++c) x[c] = rng.uniform(2.0, 3.0) * (rng.unit() < 0.5 ? -1 : 1);
      DistanceResult d = distance(x, K, sp, 1e-10);
      if (d.value < 0.1) continue;
      REQUIRE(d.subgradient.has_value());
      Vec dir(dim);
      for (int c = 0; c < dim; ++c) dir[c] = rng.normal();
      dir.normalize();
      const double h = 1e-6;
      double plus = distance(Vec(x + h * dir), K, sp, 1e-10).value;
      double minus = distance(Vec(x - h * dir), K, sp, 1e-10).value;
      double fd = (plus - minus) / (2 * h);
      CHECK(fd == doctest::Approx(d.subgradient->dot(dir)).epsilon(2e-4));
    }
  }
}

TEST_CASE("primal-dual consistency of the distance value") {
  for (int rep = 0; rep < 40; ++rep) {
    CounterRng rng(65, {static_cast<std::uint64_t>(rep)});
    int dim = 2 + static_cast<int>(rng.below(3));
    NormSpec sp = rep % 2 == 0 ? lp(dim, 2) : linf(dim);
    VPolytope K = random_polytope(rng, dim, 5);
    Vec x(dim);
    for (int c = 0; c < dim; ++c) x[c] = rng.uniform(-3, 3);
    DistanceResult d = distance(x, K, sp, 1e-8);
    if (!d.subgradient) continue;
    CHECK(d.value - d.subgradient->dot(x - d.nearest) <= 1e-7);
  }
}
