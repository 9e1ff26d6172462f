#ifndef POLYDECK_HYPERGRAPH_HPP
#define POLYDECK_HYPERGRAPH_HPP

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "polydeck/poly.hpp"

namespace polydeck {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;

class InvalidHypergraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Uniform hypergraph: sorted distinct vertex list, edges stored as sorted
/// vertex tuples in lexicographic order without duplicates.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Edges may arrive unsorted; they are normalized.  Throws InvalidHypergraph
  /// on a wrong-size edge, a repeated vertex inside an edge, an edge vertex
  /// missing from `vertices`, or a duplicate edge.
  Hypergraph(unsigned rank, std::vector<Vertex> vertices, std::vector<Edge> edges);

  unsigned rank() const { return rank_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  bool has_vertex(Vertex v) const;
  /// Position of v in vertices(); throws std::out_of_range when absent.
  std::size_t index_of(Vertex v) const;
  /// Largest vertex id plus one (0 for the empty hypergraph).
  std::size_t id_bound() const { return vertices_.empty() ? 0 : vertices_.back() + 1; }

  /// Applies a relabeling given as old-id -> new-id for every vertex.
  Hypergraph relabeled(const std::map<Vertex, Vertex>& mapping) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  unsigned rank_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

/// Raised when a polynomial is not the Lagrangian of a uniform hypergraph.
class LagrangianError : public std::invalid_argument {
 public:
  enum class Kind { NonSquarefree, BadCoefficient, WrongDegree };
  LagrangianError(Kind kind, std::string monomial);
  Kind kind() const { return kind_; }
  const std::string& monomial() const { return monomial_; }

 private:
  Kind kind_;
  std::string monomial_;
};

/// Sum over edges of the product of edge variables.
Polynomial lagrangian_of(const Hypergraph& h);

/// Inverse of lagrangian_of.  The vertex list is the union of the edge
/// supports together with any `extra_vertices`.
Hypergraph hypergraph_from_lagrangian(const Polynomial& p, unsigned rank,
                                      std::span<const Vertex> extra_vertices = {});

// ".hg" text format:
//   rank m
//   vertices v1 v2 ...
//   one sorted edge per line, lexicographic order
std::string to_hg(const Hypergraph& h);
Hypergraph parse_hg(std::string_view text);
Hypergraph read_hg_file(const std::string& path);
void write_hg_file(const Hypergraph& h, const std::string& path);

nlohmann::json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

}  // namespace polydeck

#endif  // POLYDECK_HYPERGRAPH_HPP
