#include "polydeck/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace polydeck {

namespace {

std::string edge_string(const Edge& e) {
  std::string s = "{";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e[i]);
  }
  return s + "}";
}

}  // namespace

Hypergraph::Hypergraph(unsigned rank, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : rank_(rank), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (rank_ < 1) throw InvalidHypergraph("rank must be positive");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw InvalidHypergraph("duplicate vertex in vertex list");
  for (auto& e : edges_) {
    std::sort(e.begin(), e.end());
    if (e.size() != rank_)
      throw InvalidHypergraph("edge " + edge_string(e) + " does not have " +
                              std::to_string(rank_) + " vertices");
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw InvalidHypergraph("edge " + edge_string(e) + " repeats a vertex");
    for (Vertex v : e)
      if (!has_vertex(v))
        throw InvalidHypergraph("edge " + edge_string(e) + " uses unknown vertex " +
                                std::to_string(v));
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end())
    throw InvalidHypergraph("duplicate edge " + edge_string(*it));
}

bool Hypergraph::has_vertex(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t Hypergraph::index_of(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v)
    throw std::out_of_range("unknown vertex " + std::to_string(v));
  return static_cast<std::size_t>(it - vertices_.begin());
}

Hypergraph Hypergraph::relabeled(const std::map<Vertex, Vertex>& mapping) const {
  auto image = [&](Vertex v) {
    auto it = mapping.find(v);
    if (it == mapping.end())
      throw InvalidHypergraph("relabeling misses vertex " + std::to_string(v));
    return it->second;
  };
  std::vector<Vertex> vs;
  vs.reserve(vertices_.size());
  for (Vertex v : vertices_) vs.push_back(image(v));
  std::vector<Edge> es;
  es.reserve(edges_.size());
  for (const auto& e : edges_) {
    Edge out;
    out.reserve(e.size());
    for (Vertex v : e) out.push_back(image(v));
    es.push_back(std::move(out));
  }
  return Hypergraph(rank_, std::move(vs), std::move(es));
}

LagrangianError::LagrangianError(Kind kind, std::string monomial)
    : std::invalid_argument([&] {
        switch (kind) {
          case Kind::NonSquarefree:
            return "non-squarefree monomial " + monomial;
          case Kind::BadCoefficient:
            return "coefficient other than 1 on monomial " + monomial;
          case Kind::WrongDegree:
            return "monomial of wrong degree " + monomial;
        }
        return monomial;
      }()),
      kind_(kind),
      monomial_(std::move(monomial)) {}

Polynomial lagrangian_of(const Hypergraph& h) {
  Polynomial p;
  for (const auto& e : h.edges()) p.add_term(Monomial::product(e), 1);
  return p;
}

Hypergraph hypergraph_from_lagrangian(const Polynomial& p, unsigned rank,
                                      std::span<const Vertex> extra_vertices) {
  std::vector<Edge> edges;
  edges.reserve(p.size());
  std::vector<Vertex> vertices(extra_vertices.begin(), extra_vertices.end());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != rank) throw LagrangianError(LagrangianError::Kind::WrongDegree, m.to_string());
    if (!m.is_squarefree())
      throw LagrangianError(LagrangianError::Kind::NonSquarefree, m.to_string());
    if (c != 1) throw LagrangianError(LagrangianError::Kind::BadCoefficient, m.to_string());
    Edge e;
    for (const auto& f : m.factors()) e.push_back(f.var);
    vertices.insert(vertices.end(), e.begin(), e.end());
    edges.push_back(std::move(e));
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return Hypergraph(rank, std::move(vertices), std::move(edges));
}

std::string to_hg(const Hypergraph& h) {
  std::ostringstream os;
  os << "rank " << h.rank() << '\n' << "vertices";
  for (Vertex v : h.vertices()) os << ' ' << v;
  os << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << '\n';
  }
  return os.str();
}

Hypergraph parse_hg(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw InvalidHypergraph(".hg line " + std::to_string(lineno) + ": " + what);
  };
  auto next_line = [&]() {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) fail("missing rank line");
  std::istringstream rank_line(line);
  std::string word;
  long long rank = 0;
  if (!(rank_line >> word >> rank) || word != "rank" || rank < 1) fail("expected 'rank m'");

  if (!next_line()) fail("missing vertices line");
  std::istringstream vert_line(line);
  if (!(vert_line >> word) || word != "vertices") fail("expected 'vertices ...'");
  std::vector<Vertex> vertices;
  long long v = 0;
  while (vert_line >> v) {
    if (v < 0) fail("negative vertex id");
    vertices.push_back(static_cast<Vertex>(v));
  }
  if (!vert_line.eof()) fail("malformed vertex id");

  std::vector<Edge> edges;
  while (next_line()) {
    std::istringstream edge_line(line);
    Edge e;
    while (edge_line >> v) {
      if (v < 0) fail("negative vertex id");
      e.push_back(static_cast<Vertex>(v));
    }
    if (!edge_line.eof()) fail("malformed vertex id");
    edges.push_back(std::move(e));
  }
  return Hypergraph(static_cast<unsigned>(rank), std::move(vertices), std::move(edges));
}

Hypergraph read_hg_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_hg(ss.str());
}

void write_hg_file(const Hypergraph& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_hg(h);
}

nlohmann::json to_json(const Hypergraph& h) {
  return {{"rank", h.rank()}, {"vertices", h.vertices()}, {"edges", h.edges()}};
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  try {
    return Hypergraph(j.at("rank").get<unsigned>(), j.at("vertices").get<std::vector<Vertex>>(),
                      j.at("edges").get<std::vector<Edge>>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidHypergraph(std::string("malformed hypergraph JSON: ") + e.what());
  }
}

}  // namespace polydeck
