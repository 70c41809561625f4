#include <doctest.h>

#include <cmath>

#include "helly/normed_space.hpp"

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

}  // namespace

TEST_CASE("norm evaluates the standard formulas") {
  CHECK(norm(make({1, 1}), linf(2)) == doctest::Approx(1.0));
  CHECK(norm(make({1, 1}), lp(2, 1)) == doctest::Approx(2.0));
  CHECK(norm(make({3, 4}), lp(2, 2)) == doctest::Approx(5.0));
  CHECK(norm(make({-3, 4}), lp(2, 3)) == doctest::Approx(std::pow(27.0 + 64.0, 1.0 / 3.0)));
}

TEST_CASE("norm rejects bad input") {
  CHECK_THROWS_AS(norm(make({1, 2, 3}), lp(2, 2)), std::invalid_argument);
  Vec bad = make({1, 0});
  bad[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(norm(bad, lp(2, 2)), std::invalid_argument);
}

TEST_CASE("norm homogeneity and triangle inequality on random input") {
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
    NormSpec sp = lp(6, p);
    for (int rep = 0; rep < 200; ++rep) {
      CounterRng rng(12, {static_cast<std::uint64_t>(p * 10), static_cast<std::uint64_t>(rep)});
      Vec x(6), y(6);
      for (int i = 0; i < 6; ++i) {
        x[i] = rng.uniform(-3, 3);
        y[i] = rng.uniform(-3, 3);
      }
      double c = rng.uniform(-4, 4);
      CHECK(norm(Vec(c * x), sp) == doctest::Approx(std::abs(c) * norm(x, sp)).epsilon(1e-12));
      CHECK(norm(Vec(x + y), sp) <= norm(x, sp) + norm(y, sp) + 1e-12);
    }
  }
}

TEST_CASE("dual exponents pair up") {
  CHECK(Exponent::finite(2).dual() == Exponent::finite(2));
  CHECK(Exponent::finite(1).dual() == Exponent::infinity());
  CHECK(Exponent::infinity().dual() == Exponent::finite(1));
  CHECK(Exponent::finite(4.0 / 3.0).dual().value() == doctest::Approx(4.0).epsilon(1e-14));
  // involution
  for (double p : {1.0, 1.25, 1.5, 2.0, 3.0, 10.0}) {
    Exponent e = Exponent::finite(p);
    CHECK(e.dual().dual().value_or_inf() ==
          doctest::Approx(e.value_or_inf()).epsilon(1e-12));
  }
  CHECK(Exponent::infinity().dual().dual().is_infinite());
  CHECK_THROWS_AS(Exponent::finite(0.5), std::invalid_argument);
}

TEST_CASE("Hoelder pairing bounded by norm product") {
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    NormSpec sp = lp(5, p);
    NormSpec dual = dual_space(sp);
    for (int rep = 0; rep < 200; ++rep) {
      CounterRng rng(77, {static_cast<std::uint64_t>(p * 4), static_cast<std::uint64_t>(rep)});
      Vec x(5), psi(5);
      for (int i = 0; i < 5; ++i) {
        x[i] = rng.uniform(-2, 2);
        psi[i] = rng.uniform(-2, 2);
      }
      CHECK(psi.dot(x) <= norm(psi, dual) * norm(x, sp) + 1e-12);
    }
  }
}

TEST_CASE("norm subgradient attains the norm with unit dual norm") {
  for (double pv : {1.0, 1.5, 2.0, 3.0}) {
    NormSpec sp = lp(4, pv);
    for (int rep = 0; rep < 50; ++rep) {
      CounterRng rng(5, {static_cast<std::uint64_t>(pv * 2), static_cast<std::uint64_t>(rep)});
      Vec x(4);
      for (int i = 0; i < 4; ++i) x[i] = rng.uniform(-2, 2);
      Vec g = norm_subgradient(x, sp);
      CHECK(norm(g, dual_space(sp)) <= 1.0 + 1e-9);
      CHECK(g.dot(x) == doctest::Approx(norm(x, sp)).epsilon(1e-10));
    }
  }
  NormSpec si = linf(3);
  Vec x = make({0.5, -2.0, 1.0});
  Vec g = norm_subgradient(x, si);
  CHECK(g.dot(x) == doctest::Approx(2.0));
  CHECK(norm(g, dual_space(si)) == doctest::Approx(1.0));
}

TEST_CASE("rademacher average: exhaustive closed forms") {
  Vec e1 = make({1, 0}), e2 = make({0, 1});
  CHECK(rademacher_average({make({1})}, 2, lp(1, 2)).value == doctest::Approx(1.0));
  CHECK(rademacher_average({e1, e2}, 2, lp(2, 2)).value ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(rademacher_average({e1, e2}, 2, lp(2, 1)).value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(rademacher_average({}, 2, lp(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(rademacher_average(std::vector<Vec>(25, e1), 2, lp(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("monte carlo matches exhaustive within five standard errors") {
  for (int rep = 0; rep < 6; ++rep) {
    CounterRng rng(31, {static_cast<std::uint64_t>(rep)});
    int m = 3 + static_cast<int>(rng.below(8));  // up to 10 vectors
    NormSpec sp = lp(4, rep % 2 == 0 ? 2.0 : 1.0);
    std::vector<Vec> vs;
    for (int j = 0; j < m; ++j) {
      Vec v(4);
      for (int i = 0; i < 4; ++i) v[i] = rng.uniform(-1, 1);
      vs.push_back(v);
    }
    RademacherAverage exact = rademacher_average(vs, 2.0, sp);
    RademacherAverage mc = rademacher_average(vs, 2.0, sp, MonteCarloMode{100000, 99});
    CHECK(std::abs(mc.value - exact.value) <= 5.0 * mc.std_error + 1e-12);
    // reproducibility
    RademacherAverage mc2 = rademacher_average(vs, 2.0, sp, MonteCarloMode{100000, 99});
    CHECK(mc.value == mc2.value);
  }
}

TEST_CASE("type lower bound: ratios and errors") {
  Vec e1 = make({1, 0}), e2 = make({0, 1});
  CHECK(type_lower_bound({make({1})}, 2, lp(1, 2)).constant == doctest::Approx(1.0));
  CHECK(type_lower_bound({e1, e2}, 2, lp(2, 1)).constant ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(type_lower_bound({e1, e2}, 2, lp(2, 2)).constant == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(type_lower_bound({e1, e2}, 2, lp(2, 2)).provenance == Provenance::empirical_lower_bound);
  CHECK_THROWS_AS(type_lower_bound({e1, make({0, 0})}, 2, lp(2, 2)), std::invalid_argument);
}

TEST_CASE("type table entries") {
  CHECK(type_constant_tabulated(lp(7, 2), 2).constant == doctest::Approx(1.0));
  CHECK(type_constant_tabulated(lp(7, 4), 2).constant == doctest::Approx(std::sqrt(3.0)));
  CHECK(type_constant_tabulated(lp(9, 1.5), 1.5).constant == doctest::Approx(1.0));
  CHECK(type_constant_tabulated(linf(16), 2).constant ==
        doctest::Approx(2.0 * std::sqrt(std::log(16.0))));
  CHECK(type_constant_tabulated(linf(1), 2).constant == doctest::Approx(1.0));  // clamp at 1
  TypeTableOptions opts;
  opts.linf_c = 3.5;
  CHECK(type_constant_tabulated(linf(16), 2, opts).constant ==
        doctest::Approx(3.5 * std::sqrt(std::log(16.0))));
  CHECK_THROWS_AS(type_constant_tabulated(lp(4, 1), 2), std::invalid_argument);  // l_1: unknown
  CHECK_THROWS_AS(type_constant_tabulated(lp(4, 2), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(type_constant_tabulated(lp(4, 2), 2.5), std::invalid_argument);
}

TEST_CASE("empirical lower bounds never exceed table entries") {
  for (int rep = 0; rep < 100; ++rep) {
    CounterRng rng(404, {static_cast<std::uint64_t>(rep)});
    NormSpec sp = rep % 3 == 0 ? lp(5, 2) : (rep % 3 == 1 ? lp(5, 4) : linf(5));
    int m = 2 + static_cast<int>(rng.below(6));
    std::vector<Vec> vs;
    for (int j = 0; j < m; ++j) {
      Vec v(5);
      for (int i = 0; i < 5; ++i) v[i] = rng.uniform(-1, 1);
      if (norm(v, sp) < 1e-6) v[0] += 1.0;
      vs.push_back(v);
    }
    double lower = type_lower_bound(vs, 2, sp).constant;
    double table = type_constant_tabulated(sp, 2).constant;
    CHECK(lower <= table + 1e-9);
  }
}

TEST_CASE("unit ball samples stay inside the ball") {
  for (double pv : {1.0, 1.5, 2.0, 3.0}) {
    NormSpec sp = lp(6, pv);
    CounterRng rng(7, {static_cast<std::uint64_t>(pv * 8)});
    for (int rep = 0; rep < 200; ++rep) {
      CHECK(norm(sample_unit_ball(sp, rng), sp) <= 1.0 + 1e-12);
    }
  }
  NormSpec si = linf(6);
  CounterRng rng(7, {1234});
  for (int rep = 0; rep < 200; ++rep) {
    CHECK(norm(sample_unit_ball(si, rng), si) <= 1.0 + 1e-12);
  }
}
