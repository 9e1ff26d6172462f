#ifndef POLYDECK_TESTS_SUPPORT_HPP
#define POLYDECK_TESTS_SUPPORT_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "polydeck/hypergraph.hpp"
#include "polydeck/poly.hpp"

namespace testing {

using polydeck::Edge;
using polydeck::Hypergraph;
using polydeck::Vertex;

/// Each 3-subset of {1..n} kept with probability p.
inline Hypergraph random_hypergraph(std::mt19937_64& rng, Vertex n, double p) {
  std::bernoulli_distribution keep(p);
  std::vector<Edge> edges;
  for (Vertex a = 1; a <= n; ++a)
    for (Vertex b = a + 1; b <= n; ++b)
      for (Vertex c = b + 1; c <= n; ++c)
        if (keep(rng)) edges.push_back({a, b, c});
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), Vertex{1});
  return Hypergraph(3, vs, edges);
}

inline Hypergraph random_relabel(std::mt19937_64& rng, const Hypergraph& h, Vertex offset = 0) {
  std::vector<Vertex> img = h.vertices();
  std::shuffle(img.begin(), img.end(), rng);
  std::map<Vertex, Vertex> m;
  for (std::size_t i = 0; i < img.size(); ++i) m[h.vertices()[i]] = img[i] + offset;
  return h.relabeled(m);
}

/// Lexicographically least relabeled edge list over all n! bijections onto
/// 1..n, with the number of bijections attaining it.
struct BruteCanon {
  std::vector<Edge> edges;
  std::uint64_t attained = 0;
};

inline BruteCanon brute_canonical(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  std::vector<Vertex> labels(n);
  std::iota(labels.begin(), labels.end(), Vertex{1});
  BruteCanon best;
  do {
    std::vector<Edge> es;
    for (const auto& e : h.edges()) {
      Edge out;
      for (Vertex v : e) out.push_back(labels[h.index_of(v)]);
      std::sort(out.begin(), out.end());
      es.push_back(out);
    }
    std::sort(es.begin(), es.end());
    if (best.attained == 0 || es < best.edges) {
      best.edges = es;
      best.attained = 1;
    } else if (es == best.edges) {
      ++best.attained;
    }
  } while (std::next_permutation(labels.begin(), labels.end()));
  return best;
}

/// Random polynomial in x_0..x_{vars-1}: up to `terms` monomials of degree
/// at most `deg`, coefficients in [-3, 3].
inline polydeck::Polynomial random_poly(std::mt19937_64& rng, unsigned vars, unsigned terms, unsigned deg) {
  std::uniform_int_distribution<unsigned> var(0, vars - 1), d(0, deg);
  std::uniform_int_distribution<int> coef(-3, 3);
  polydeck::Polynomial p;
  for (unsigned t = 0; t < terms; ++t) {
    std::vector<polydeck::Var> vs;
    for (unsigned k = d(rng); k > 0; --k) vs.push_back(var(rng));
    p.add_term(polydeck::Monomial::product(vs), coef(rng));
  }
  return p;
}

}  // namespace testing

#endif  // POLYDECK_TESTS_SUPPORT_HPP
