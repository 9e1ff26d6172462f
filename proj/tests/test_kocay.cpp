#include "doctest.h"

#include "polydeck/kocay.hpp"
#include "polydeck/spectral.hpp"

using namespace polydeck;
using namespace polydeck::kocay;

namespace {

bool has_edge(const Hypergraph& h, Edge e) {
  std::sort(e.begin(), e.end());
  return std::binary_search(h.edges().begin(), h.edges().end(), e);
}

Polynomial cube(Var a, Var b, Var c) { return var(a) * var(b) * var(c); }

}  // namespace

TEST_CASE("mod_v representatives") {
  CHECK(mod_v(3, 11) == 3);
  CHECK(mod_v(3, 8) == 8);
  CHECK(mod_v(4, 21) == 5);
  CHECK(mod_v(3, 0) == 8);
  CHECK(mod_v(3, -1) == 7);
}

TEST_CASE("index maps") {
  const std::vector<Vertex> s0{2, 1, 4, 3, 6, 5, 8, 7}, s1{3, 4, 1, 2, 7, 8, 5, 6};
  const auto p0 = sigma_permutation(3, 0), p1 = sigma_permutation(3, 1);
  CHECK(p0[0] == 0);
  CHECK(std::vector<Vertex>(p0.begin() + 1, p0.end()) == s0);
  CHECK(std::vector<Vertex>(p1.begin() + 1, p1.end()) == s1);
  CHECK(tau_index(5) == 7);
  CHECK(tau_index(2) == 6);
  const std::vector<int> eps{1, 1};
  CHECK(p_eps_closed_form(5, eps, 1) == 1);
  CHECK(p_eps_index(5, eps, 1) == 1);
  CHECK(theta_index(3, 8) == 1);
  CHECK(theta_index(3, 0) == 0);
  CHECK(p_index(4, 1, 3) == 5);
  CHECK(sigma_index(-1, 6) == 6);
}

TEST_CASE("make_endomorphism rejects bad parameters") {
  CHECK_THROWS_AS(make_endomorphism({EndoKind::E, 0}, 3), InvalidParameter);
  CHECK_THROWS_AS(make_endomorphism({EndoKind::Tau}, 4), InvalidParameter);
  CHECK(make_endomorphism({EndoKind::Q}, 4)(var(1)) == var(1) + var(9));
}

TEST_CASE("q coincides with E_{n-1}") {
  for (int n = 3; n <= 6; ++n)
    for (Var i = 1; i <= (1u << n); ++i) CHECK(q_map(n).image(i) == e_map(n, n - 1).image(i));
}

TEST_CASE("base cycles") {
  const auto [c3, d3] = base_cycles();
  const Hypergraph c = hypergraph_from_lagrangian(c3, 3), d = hypergraph_from_lagrangian(d3, 3);
  CHECK(c.num_edges() == 8);
  CHECK(d.num_edges() == 8);
  CHECK(has_edge(c, {8, 1, 2}));
  CHECK(has_edge(d, {1, 4, 7}));
  for (const auto& [m, coef] : c3.terms()) {
    CHECK(coef == 1);
    CHECK(m.is_squarefree());
  }
}

TEST_CASE("family examples") {
  CHECK(family_poly({Family::G, 3, 2}) ==
        cube(1, 3, 5) + cube(2, 4, 6) + cube(3, 5, 7) + cube(4, 6, 8));
  for (int n = 3; n <= 5; ++n) {
    CHECK(family_poly({Family::X, n}) - family_poly({Family::Gamma, n}) == family_poly({Family::M0, n}));
    CHECK(family_poly({Family::Y, n}) - family_poly({Family::Gamma, n}) == family_poly({Family::M1, n}));
  }
  CHECK(family_hypergraph({Family::M0, 3}).num_edges() == 8);
  const Hypergraph x3 = family_hypergraph({Family::X, 3});
  CHECK(x3.num_vertices() == 9);
  CHECK(x3.num_edges() == 28);
  CHECK(x3.vertices().front() == 0);
}

TEST_CASE("edge counts follow from the degree formula") {
  // Half the vertices (the first and last quarters) have the reduced degree.
  for (int n = 3; n <= 6; ++n) {
    const long long v = 1LL << n, d = 1LL << (2 * n - 3);
    const long long degree_sum = (v / 2) * (d - 1) + (v / 2) * d;
    const Hypergraph m0 = family_hypergraph({Family::M0, n});
    CHECK(family_hypergraph({Family::Gamma, n}).num_edges() == static_cast<std::size_t>(degree_sum / 3));
    CHECK(family_hypergraph({Family::X, n}).num_edges() ==
          static_cast<std::size_t>(degree_sum / 3) + m0.num_edges());
    CHECK(family_hypergraph({Family::Y, n}).num_edges() == family_hypergraph({Family::X, n}).num_edges());
  }
}

TEST_CASE("Gamma degrees") {
  const Hypergraph g3 = family_hypergraph({Family::Gamma, 3});
  CHECK(spectral::degree(g3, 1) == 7);
  CHECK(spectral::degree(g3, 3) == 8);
  for (int n = 3; n <= 5; ++n) {
    const Hypergraph x = family_hypergraph({Family::X, n});
    for (Vertex i = 1; i <= (1u << n); ++i) CHECK(spectral::codegree(x, 0, i) > 0);
  }
}

TEST_CASE("family Lagrangians are squarefree with unit coefficients") {
  for (Family f : {Family::G, Family::H, Family::T, Family::Gamma, Family::M0, Family::M1, Family::X, Family::Y})
    for (int n = 3; n <= 5; ++n) {
      const FamilySpec spec{f, n, f == Family::G ? n - 1 : 0};
      const Polynomial p = family_poly(spec);
      for (const auto& [m, c] : p.terms()) {
        CHECK(c == 1);
        CHECK(m.is_squarefree());
        CHECK(m.degree() == 3);
      }
    }
}

TEST_CASE("orbit substitution") {
  const std::vector<Permutation> theta{theta_permutation(3)};
  const Endomorphism o = orbit_substitution(3, theta);
  CHECK(o.image(8) == var(1));
  CHECK(o.image(7) == var(2));
  CHECK(o.image(5) == var(4));
  CHECK(o.image(0) == var(0));

  const Endomorphism id = orbit_substitution(3, {});
  for (Var v = 0; v <= 8; ++v) CHECK(id.image(v) == var(v));

  const std::vector<Permutation> two{theta_permutation(3), sigma_permutation(3, 0)};
  const Endomorphism o2 = orbit_substitution(3, two);
  for (Var v : {1u, 2u, 7u, 8u}) CHECK(o2.image(v) == var(1));

  Permutation broken = theta_permutation(3);
  broken[1] = broken[2];
  const std::vector<Permutation> bad{broken};
  CHECK_THROWS_AS(orbit_substitution(3, bad), InvalidParameter);
}

TEST_CASE("hypergraph_from_lagrangian") {
  const Hypergraph h = hypergraph_from_lagrangian(cube(1, 2, 3) + cube(2, 3, 4), 3);
  CHECK(h.edges() == std::vector<Edge>{{1, 2, 3}, {2, 3, 4}});
  CHECK_THROWS_AS(hypergraph_from_lagrangian(var(1) * var(1) * var(2), 3), LagrangianError);
  CHECK_THROWS_AS(hypergraph_from_lagrangian(2 * cube(1, 2, 3), 3), LagrangianError);
  CHECK_THROWS_AS(hypergraph_from_lagrangian(var(1) * var(2), 3), LagrangianError);
}

TEST_CASE(".hg and JSON round trips") {
  for (int n = 3; n <= 4; ++n)
    for (Family f : {Family::X, Family::Y, Family::C3}) {
      if (f == Family::C3 && n != 3) continue;
      const Hypergraph h = family_hypergraph({f, n});
      CHECK(parse_hg(to_hg(h)) == h);
      CHECK(hypergraph_from_json(to_json(h)) == h);
      CHECK(hypergraph_from_lagrangian(lagrangian_of(h), 3, h.vertices()) == h);
    }
  CHECK_THROWS_AS(parse_hg("rank 3\nvertices 1 2 3\n1 2 4\n"), InvalidHypergraph);
  CHECK_THROWS_AS(parse_hg("rank 3\nvertices 1 2 3\n1 2\n"), InvalidHypergraph);
}

TEST_CASE("construction validates specs") {
  Construction c(4);
  CHECK_THROWS_AS(c.poly({Family::X, 5}), InvalidParameter);
  CHECK_THROWS_AS(c.poly({Family::X, 2}), InvalidParameter);
  CHECK_THROWS_AS(c.poly({Family::G, 3, 1}), InvalidParameter);
  CHECK_THROWS_AS(c.poly({Family::C3, 4}), InvalidParameter);
}

TEST_CASE("mutation hook propagates into assembled families") {
  Construction c(5, [](const FamilySpec& s, Polynomial& p) {
    if (s.family == Family::G && s.k == 2) p -= Polynomial::term(p.terms().begin()->first);
  });
  const auto clean = default_construction().hypergraph({Family::X, 4});
  const auto mutated = c.hypergraph({Family::X, 4});
  CHECK(mutated.num_edges() < clean.num_edges());
}
