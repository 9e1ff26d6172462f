#include "doctest.h"

#include <random>

#include "polydeck/iso.hpp"
#include "polydeck/kocay.hpp"
#include "support.hpp"

using namespace polydeck;
using namespace polydeck::iso;
using kocay::Family;

namespace {

Hypergraph fam(Family f, int n = 3) { return kocay::family_hypergraph({f, n}); }

VertexMap identity_map(const Hypergraph& h) {
  VertexMap m;
  for (Vertex v : h.vertices()) m[v] = v;
  return m;
}

VertexMap theta_map(int n) {
  VertexMap m;
  for (Vertex v = 0; v <= (1u << n); ++v) m[v] = kocay::theta_index(n, v);
  return m;
}

}  // namespace

TEST_CASE("delete_vertex examples") {
  const Hypergraph e(3, {1, 2, 3}, {{1, 2, 3}});
  const Hypergraph d = delete_vertex(e, 1);
  CHECK(d.vertices() == std::vector<Vertex>{2, 3});
  CHECK(d.num_edges() == 0);
  CHECK(delete_vertex(fam(Family::C3), 1).num_edges() == 5);
  CHECK_THROWS(delete_vertex(e, 9));
  CHECK(delete_vertex(fam(Family::X), 0) == fam(Family::Gamma));
  CHECK(delete_vertex(fam(Family::Y), 0) == fam(Family::Gamma));
}

TEST_CASE("canonical form examples") {
  const CanonicalForm cf = canonical_form(Hypergraph(3, {7, 8, 9}, {{7, 8, 9}}));
  CHECK(cf.edges == std::vector<Edge>{{1, 2, 3}});
  CHECK(cf.automorphisms == 6);
  CHECK_FALSE(canonical_form(fam(Family::X)).same_class(canonical_form(fam(Family::Y))));
  CHECK_THROWS_AS(canonical_form(fam(Family::X), 5), SizeBoundExceeded);
}

TEST_CASE("canonical form is label invariant") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const Hypergraph h = testing::random_hypergraph(rng, 3 + static_cast<Vertex>(rng() % 6), 0.4);
    const Hypergraph g = testing::random_relabel(rng, h, 50);
    const CanonicalForm a = canonical_form(h), b = canonical_form(g);
    CHECK(a.same_class(b));
    CHECK(a.automorphisms == b.automorphisms);
    auto w = isomorphism(h, g);
    REQUIRE(w.has_value());
    CHECK(is_isomorphism(h, g, *w));
  }
}

TEST_CASE("canonicalizer agrees with brute-force permutation search") {
  std::mt19937_64 rng(6);
  std::vector<Hypergraph> corpus;
  while (corpus.size() < 100) {
    const Vertex n = 3 + static_cast<Vertex>(rng() % 4);
    std::uniform_real_distribution<double> p(0.15, 0.85);
    corpus.push_back(testing::random_hypergraph(rng, n, p(rng)));
  }
  int disagreements = 0;
  std::vector<testing::BruteCanon> brute;
  for (const auto& h : corpus) {
    brute.push_back(testing::brute_canonical(h));
    if (automorphism_count(h) != brute.back().attained) ++disagreements;
  }
  // The two canonical forms use different normal forms, so compare the
  // isomorphism relation they induce over all pairs.
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      if (corpus[i].num_vertices() != corpus[j].num_vertices()) continue;
      const bool brute_iso = brute[i].edges == brute[j].edges;
      if (are_isomorphic(corpus[i], corpus[j]) != brute_iso) ++disagreements;
    }
  CHECK(disagreements == 0);
}

TEST_CASE("isomorphism examples") {
  const Hypergraph c = fam(Family::C3), d = fam(Family::D3);
  auto w = isomorphism(c, d);
  REQUIRE(w.has_value());
  CHECK(is_isomorphism(c, d, *w));
  CHECK_FALSE(are_isomorphic(fam(Family::X), fam(Family::Y)));
  auto self = isomorphism(c, c);
  REQUIRE(self.has_value());
  CHECK(is_automorphism(c, *self));
}

TEST_CASE("automorphism counts") {
  CHECK(automorphism_count(fam(Family::X)) == 2);
  CHECK(automorphism_count(fam(Family::Y)) == 2);
  CHECK(automorphism_count(fam(Family::C3)) == 16);
  for (int n = 3; n <= 5; ++n) {
    CHECK(is_automorphism(fam(Family::X, n), theta_map(n)));
    CHECK(is_automorphism(fam(Family::Y, n), theta_map(n)));
  }
  VertexMap partial{{1, 2}};
  CHECK_FALSE(is_automorphism(fam(Family::C3), partial));
}

TEST_CASE("X^3 and Y^3 are hypomorphic") {
  const Hypergraph x = fam(Family::X), y = fam(Family::Y);
  CHECK(same_deck(deck(x), deck(y)));
  auto eta = hypomorphism(x, y);
  REQUIRE(eta.has_value());
  CHECK(eta->size() == 9);
  for (const auto& [u, v] : *eta) CHECK(are_isomorphic(delete_vertex(x, u), delete_vertex(y, v)));
}

TEST_CASE("hypomorphism basics") {
  const Hypergraph c = fam(Family::C3);
  auto eta = hypomorphism(c, c);
  REQUIRE(eta.has_value());
  for (const auto& [u, v] : *eta) CHECK(are_isomorphic(delete_vertex(c, u), delete_vertex(c, v)));
  const Hypergraph x = fam(Family::X);
  auto self = hypomorphism(x, x);
  REQUIRE(self.has_value());
  CHECK(*self == identity_map(x));  // identical decks sort identically
  // On three vertices every card of a single edge is edgeless, so the deck
  // cannot tell it from the empty hypergraph.
  const Hypergraph e3(3, {1, 2, 3}, {{1, 2, 3}}), empty3(3, {1, 2, 3}, {});
  CHECK(hypomorphism(e3, empty3).has_value());
  CHECK_FALSE(are_isomorphic(e3, empty3));
  const Hypergraph e4(3, {1, 2, 3, 4}, {{1, 2, 3}}), empty4(3, {1, 2, 3, 4}, {});
  CHECK_FALSE(hypomorphism(e4, empty4).has_value());
}

TEST_CASE("deck is invariant under relabeling") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const Hypergraph h = testing::random_hypergraph(rng, 7, 0.4);
    CHECK(same_deck(deck(h), deck(testing::random_relabel(rng, h, 10))));
  }
}

TEST_CASE("deck JSON") {
  const auto j = deck_to_json(deck(fam(Family::X)));
  REQUIRE(j.size() == 9);
  CHECK(j[0]["deleted"] == 0);
  CHECK(parse_hg(j[0]["canonical"].get<std::string>()).num_edges() == 20);
}
