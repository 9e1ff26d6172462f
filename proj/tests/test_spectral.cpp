#include "doctest.h"

#include <cmath>
#include <random>

#include "polydeck/kocay.hpp"
#include "polydeck/spectral.hpp"
#include "support.hpp"

using namespace polydeck;
using namespace polydeck::spectral;

namespace {

Hypergraph single_edge() { return Hypergraph(3, {1, 2, 3}, {{1, 2, 3}}); }

Hypergraph c3() { return hypergraph_from_lagrangian(kocay::base_cycles().first, 3); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("tensor_apply examples") {
  const std::vector<double> ones3(3, 1.0), ones8(8, 1.0), zeros8(8, 0.0);
  CHECK(tensor_apply(single_edge(), ones3) == ones3);
  for (double y : tensor_apply(c3(), ones8)) CHECK(y == 3.0);
  for (double y : tensor_apply(c3(), zeros8)) CHECK(y == 0.0);
  CHECK_THROWS_AS(tensor_apply(c3(), ones3), DimensionMismatch);
}

TEST_CASE("lagrangian_value examples") {
  const double t = std::cbrt(1.0 / 3.0);
  const std::vector<double> x(3, t), ones8(8, 1.0);
  CHECK(lagrangian_value(single_edge(), x) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(lagrangian_value(c3(), ones8) == 8.0);
  std::vector<double> sparse(8, 0.0);
  sparse[0] = sparse[4] = 1.0;  // every edge of C^3 has a zero entry
  CHECK(lagrangian_value(c3(), sparse) == 0.0);
}

TEST_CASE("degree and codegree") {
  const Hypergraph h = c3();
  CHECK(degree(h, 1) == 3);
  CHECK(codegree(h, 1, 2) == 2);
  CHECK(codegree(h, 1, 5) == 0);
  CHECK_THROWS(degree(h, 42));
  CHECK_THROWS_AS(codegree(h, 1, 1), std::invalid_argument);
  CHECK(degree_sequence(h) == std::vector<std::size_t>(8, 3));
}

TEST_CASE("single edge closed form") {
  const EigenPair ep = principal_eigenpair(single_edge());
  CHECK(ep.converged);
  CHECK(std::abs(ep.lambda - 1.0) < 1e-12);
  CHECK(ep.lambda_lo <= 1.0);
  CHECK(ep.lambda_hi >= 1.0);
  for (double v : ep.vector) CHECK(std::abs(v - std::cbrt(1.0 / 3.0)) < 1e-12);
  CHECK(std::abs(oracle_radius(single_edge()) - 1.0) < 1e-12);
}

TEST_CASE("regular hypergraphs have lambda equal to the degree") {
  const EigenPair ep = principal_eigenpair(c3());
  CHECK(std::abs(ep.lambda - 3.0) < 1e-12);
  const Hypergraph k4(3, {1, 2, 3, 4}, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
  CHECK(std::abs(principal_eigenpair(k4).lambda - 3.0) < 1e-12);
}

TEST_CASE("disconnected input") {
  const Hypergraph h(3, {1, 2, 3, 4, 5, 6}, {{1, 2, 3}, {4, 5, 6}});
  CHECK_FALSE(is_connected(h));
  CHECK_THROWS_AS(principal_eigenpair(h), NotConnected);
  CHECK_THROWS_AS(oracle_radius(h), NotConnected);
}

TEST_CASE("solver configuration is validated") {
  SolverConfig bad;
  bad.tolerance = 0;
  CHECK_THROWS_AS(principal_eigenpair(c3(), bad), std::invalid_argument);
  bad = {};
  bad.shift = -1;
  CHECK_THROWS_AS(principal_eigenpair(c3(), bad), std::invalid_argument);
  SolverConfig tiny;
  tiny.max_iterations = 2;
  const Hypergraph x3 = kocay::family_hypergraph({kocay::Family::X, 3});
  CHECK_THROWS_AS(principal_eigenpair(x3, tiny), MaxIterationsExceeded);
}

TEST_CASE("eigenpair invariants on the family") {
  for (int n = 3; n <= 5; ++n)
    for (auto f : {kocay::Family::X, kocay::Family::Y}) {
      const Hypergraph h = kocay::family_hypergraph({f, n});
      const EigenPair ep = principal_eigenpair(h);
      CHECK(ep.converged);
      CHECK(ep.lambda_lo <= ep.lambda);
      CHECK(ep.lambda <= ep.lambda_hi);
      CHECK(ep.lambda_hi - ep.lambda_lo < 1e-12 * ep.lambda_hi * 10);
      CHECK(ep.residual < 1e-12);
      double norm = 0;
      for (double v : ep.vector) {
        CHECK(v > 0);
        norm += v * v * v;
      }
      CHECK(std::abs(norm - 1) < 1e-12);
      // Euler: lambda = m F(v).
      CHECK(rel(ep.lambda, 3 * ep.lagrangian) < 1e-12);
    }
}

TEST_CASE("solver agrees with the gradient-ascent oracle on random inputs") {
  std::mt19937_64 rng(31337);
  int tested = 0;
  while (tested < 50) {
    const Vertex n = 3 + static_cast<Vertex>(rng() % 4);
    const Hypergraph h = testing::random_hypergraph(rng, n, 0.5);
    if (h.num_edges() == 0 || !is_connected(h)) continue;
    ++tested;
    const EigenPair ep = principal_eigenpair(h);
    const double oracle = oracle_radius(h);
    CHECK(rel(ep.lambda, oracle) < 1e-8);
  }
}

TEST_CASE("oracle orders X^3 below Y^3") {
  const double lx = oracle_radius(kocay::family_hypergraph({kocay::Family::X, 3}));
  const double ly = oracle_radius(kocay::family_hypergraph({kocay::Family::Y, 3}));
  CHECK(ly > lx);
}

TEST_CASE("eigenvector is invariant under relabeling") {
  std::mt19937_64 rng(8);
  const Hypergraph x3 = kocay::family_hypergraph({kocay::Family::X, 3});
  const Hypergraph r = testing::random_relabel(rng, x3, 100);
  const EigenPair a = principal_eigenpair(x3), b = principal_eigenpair(r);
  CHECK(std::abs(a.lambda - b.lambda) < 1e-12);
}

TEST_CASE("extended refinement") {
  const Hypergraph x4 = kocay::family_hypergraph({kocay::Family::X, 4});
  const EigenPair ep = principal_eigenpair(x4);
  const ExtendedEigenPair ex = refine_extended(x4, ep);
  CHECK(ex.lambda_lo <= ex.lambda_hi);
  CHECK(ex.lambda_hi - ex.lambda_lo < Extended(1e-90));
  CHECK(ex.residual < Extended(1e-90));
  // The refined bracket lies inside the double-precision one.
  CHECK(ex.lambda_lo >= Extended(ep.lambda_lo));
  CHECK(ex.lambda_hi <= Extended(ep.lambda_hi));
  CHECK(to_decimal(Extended(1) / 3, 5) == "3.3333e-01");
}

TEST_CASE("digest and report record") {
  const EigenPair ep = principal_eigenpair(c3());
  const auto rec = report_record("C3", 3, ep);
  for (const char* key : {"family", "n", "lambda_lo", "lambda_hi", "residual", "iterations", "vector_digest"})
    CHECK(rec.contains(key));
  CHECK(rec["vector_digest"].get<std::string>().size() == 16);
  CHECK(vector_digest(ep.vector) == rec["vector_digest"].get<std::string>());
  const std::vector<double> a{0.1, 0.2}, b{0.1, 0.2000001};
  CHECK(vector_digest(a) != vector_digest(b));
  CHECK(principal_eigenpair(c3()).vector == ep.vector);
}
