#include "doctest.h"

#include <cmath>
#include <random>

#include "polydeck/kocay.hpp"
#include "polydeck/poly.hpp"
#include "support.hpp"

using namespace polydeck;

TEST_CASE("ring operations") {
  const Polynomial x1 = var(1), x3 = var(3);
  CHECK((x1 + x3) * (x1 - x3) == x1 * x1 - x3 * x3);
  const Polynomial p = var(1) * var(2) + var(3) * var(4);
  CHECK((p - p).is_zero());
  CHECK(p + Polynomial() == p);
  CHECK(p.degree() == 2);
  CHECK(Polynomial().degree() == -1);
  CHECK((x1 * 0).is_zero());
}

TEST_CASE("monomials merge repeated variables") {
  const Monomial m = Monomial::product({3, 1, 3});
  CHECK(m.degree() == 3);
  CHECK(m.exponent(3) == 2);
  CHECK(m.exponent(2) == 0);
  CHECK_FALSE(m.is_squarefree());
  CHECK(Monomial::product({1, 2}).is_squarefree());
}

TEST_CASE("coefficients stay exact past 64 bits") {
  Polynomial p = var(1) + 1;
  const Polynomial big = p.pow(80);
  BigInt c = 1;
  for (int k = 0; k < 40; ++k) c = c * (80 - k) / (k + 1);
  CHECK(big.coefficient(Monomial::variable(1, 40)) == c);
  CHECK(big.size() == 81);
}

TEST_CASE("substitution examples") {
  CHECK(substitute(var(3), kocay::p_map(4, 1)) == var(5));
  CHECK(substitute(var(1), kocay::e_map(3, 2)) == var(1) + var(5));
  CHECK(substitute(var(7), Endomorphism::identity()) == var(7));
}

TEST_CASE("derivative examples") {
  CHECK((var(1) * var(2) * var(3)).derivative(1) == var(2) * var(3));
  CHECK((var(1) * var(1) * var(7)).derivative(1) == 2 * var(1) * var(7));
  CHECK((var(2) * var(3)).derivative(1).is_zero());
}

TEST_CASE("evaluation examples") {
  const std::vector<double> ones(9, 1.0);
  CHECK((var(1) * var(2) * var(3)).evaluate(ones) == 1.0);
  CHECK(kocay::base_cycles().first.evaluate(ones) == 8.0);
  std::vector<double> x{0, 2.5, 0, 2.5};
  CHECK((var(1) - var(3)).evaluate(x) == 0.0);
  CHECK_THROWS_AS(var(12).evaluate(ones), MissingVariable);
}

TEST_CASE("extended evaluation agrees with exact evaluation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = testing::random_poly(rng, 5, 8, 4);
    std::vector<Rational> xr;
    std::vector<Extended> xe;
    for (int v = 0; v < 5; ++v) {
      xr.emplace_back(v + 2, 7);
      xe.push_back(Extended(v + 2) / 7);
    }
    const Extended exact = Extended(p.evaluate_exact(xr));
    CHECK(abs(p.evaluate(xe) - exact) <= 1e-90 * (1 + abs(exact)));
  }
}

TEST_CASE("substitution is a ring homomorphism") {
  // 200 random (polynomial pair, endomorphism) triples.
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial p = testing::random_poly(rng, 6, 5, 3);
    const Polynomial q = testing::random_poly(rng, 6, 5, 3);
    Endomorphism e("random");
    for (Var v = 0; v < 6; ++v)
      if (rng() % 3) e.set_image(v, testing::random_poly(rng, 6, 3, 2));
    CHECK(e(p * q) == e(p) * e(q));
    CHECK(e(p + q) == e(p) + e(q));
    CHECK(e(p - q) == e(p) - e(q));
    CHECK(e(Polynomial(5)) == Polynomial(5));

    // Evaluation of the image equals evaluation at the image point.
    std::vector<Rational> x;
    for (int v = 0; v < 6; ++v) x.emplace_back(v - 2, 3);
    std::vector<Rational> y;
    for (Var v = 0; v < 6; ++v) y.push_back(e.image(v).evaluate_exact(x));
    CHECK(e(p).evaluate_exact(x) == p.evaluate_exact(y));
  }
}

TEST_CASE("composition matches sequential substitution") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Endomorphism a("a"), b("b");
    for (Var v = 0; v < 5; ++v) {
      a.set_image(v, testing::random_poly(rng, 5, 2, 2));
      b.set_image(v, testing::random_poly(rng, 5, 2, 2));
    }
    const Polynomial p = testing::random_poly(rng, 5, 4, 3);
    CHECK(compose(a, b)(p) == a(b(p)));
  }
}

TEST_CASE("derivative agrees with central finite differences") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial p = testing::random_poly(rng, 4, 6, 4);
    std::vector<double> x(4);
    for (auto& xi : x) xi = u(rng);
    for (Var v = 0; v < 4; ++v) {
      const double h = 1e-5;
      auto xp = x, xm = x;
      xp[v] += h;
      xm[v] -= h;
      const double fd = (p.evaluate(xp) - p.evaluate(xm)) / (2 * h);
      const double exact = p.derivative(v).evaluate(x);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("Euler identity holds exactly for homogeneous polynomials") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned d = 1 + rng() % 4;
    Polynomial p;
    for (int t = 0; t < 6; ++t) {
      std::vector<Var> vs;
      for (unsigned k = 0; k < d; ++k) vs.push_back(static_cast<Var>(rng() % 6));
      p.add_term(Monomial::product(vs), 1 + static_cast<int>(rng() % 5));
    }
    REQUIRE(p.is_homogeneous());
    Polynomial euler;
    for (Var v : p.variables()) euler += var(v) * p.derivative(v);
    CHECK(euler == p * BigInt(d));
  }
}

TEST_CASE("term order does not affect equality") {
  Polynomial a, b;
  a.add_term(Monomial::product({1, 2}), 3);
  a.add_term(Monomial::product({4}), -1);
  b.add_term(Monomial::product({4}), -1);
  b.add_term(Monomial::product({2, 1}), 3);
  CHECK(a == b);
  CHECK(a.to_string() == b.to_string());
}
