#ifndef POLYDECK_ISO_HPP
#define POLYDECK_ISO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polydeck/hypergraph.hpp"

// Canonical labeling of uniform hypergraphs by colour refinement plus
// individualization.  The search visits every leaf, so the automorphism group
// order comes out of the same traversal.  Worst-case cost is exponential in
// the number of vertices; highly symmetric inputs are slow.
namespace polydeck::iso {

inline constexpr std::size_t kDefaultVertexBound = 33;

class SizeBoundExceeded : public std::length_error {
 public:
  SizeBoundExceeded(std::size_t vertices, std::size_t bound);
};

/// Vertex -> image.  Partial maps are rejected by the checks that take one.
using VertexMap = std::map<Vertex, Vertex>;

struct CanonicalForm {
  unsigned rank = 0;
  std::size_t num_vertices = 0;
  std::vector<Edge> edges;     // over labels 1..num_vertices, sorted
  VertexMap witness;           // input vertex -> canonical label
  std::uint64_t automorphisms = 0;

  /// The canonical hypergraph on {1, ..., num_vertices}.
  Hypergraph hypergraph() const;
  /// Comparison ignores the witness and the automorphism count.
  bool same_class(const CanonicalForm& other) const {
    return rank == other.rank && num_vertices == other.num_vertices && edges == other.edges;
  }
  bool operator<(const CanonicalForm& other) const;
};

/// Edges through v are dropped along with v.  Throws std::out_of_range.
Hypergraph delete_vertex(const Hypergraph& h, Vertex v);

CanonicalForm canonical_form(const Hypergraph& h, std::size_t bound = kDefaultVertexBound);

/// The witness maps the vertices of `h` onto those of `g` edge-exactly.
std::optional<VertexMap> isomorphism(const Hypergraph& h, const Hypergraph& g,
                                     std::size_t bound = kDefaultVertexBound);
bool are_isomorphic(const Hypergraph& h, const Hypergraph& g,
                    std::size_t bound = kDefaultVertexBound);

std::uint64_t automorphism_count(const Hypergraph& h, std::size_t bound = kDefaultVertexBound);

/// True when `perm` is a bijection of V(h) that maps E(h) onto E(h).
bool is_automorphism(const Hypergraph& h, const VertexMap& perm);
/// True when `perm` is a bijection V(h) -> V(g) carrying E(h) onto E(g).
bool is_isomorphism(const Hypergraph& h, const Hypergraph& g, const VertexMap& perm);

struct Card {
  Vertex deleted;
  CanonicalForm form;
};

/// One card per vertex, in vertex order.
using Deck = std::vector<Card>;

Deck deck(const Hypergraph& h, std::size_t bound = kDefaultVertexBound);

/// Multiset equality of the canonical forms.
bool same_deck(const Deck& a, const Deck& b);

/// When the decks agree, eta maps each vertex of `h` to a vertex of `g` whose
/// card is isomorphic.
std::optional<VertexMap> hypomorphism(const Hypergraph& h, const Hypergraph& g,
                                      std::size_t bound = kDefaultVertexBound);

/// [{deleted, canonical}] with canonical in .hg text.
nlohmann::json deck_to_json(const Deck& d);
nlohmann::json vertex_map_to_json(const VertexMap& m);

}  // namespace polydeck::iso

#endif  // POLYDECK_ISO_HPP
