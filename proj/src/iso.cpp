#include "polydeck/iso.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace polydeck::iso {

SizeBoundExceeded::SizeBoundExceeded(std::size_t vertices, std::size_t bound)
    : std::length_error("hypergraph has " + std::to_string(vertices) +
                        " vertices, canonical labeling is bounded at " + std::to_string(bound)) {}

Hypergraph CanonicalForm::hypergraph() const {
  std::vector<Vertex> vs(num_vertices);
  std::iota(vs.begin(), vs.end(), Vertex{1});
  return Hypergraph(rank, std::move(vs), edges);
}

bool CanonicalForm::operator<(const CanonicalForm& other) const {
  return std::tie(rank, num_vertices, edges) <
         std::tie(other.rank, other.num_vertices, other.edges);
}

Hypergraph delete_vertex(const Hypergraph& h, Vertex v) {
  h.index_of(v);
  std::vector<Vertex> vs;
  for (Vertex u : h.vertices())
    if (u != v) vs.push_back(u);
  std::vector<Edge> es;
  for (const auto& e : h.edges())
    if (!std::binary_search(e.begin(), e.end(), v)) es.push_back(e);
  return Hypergraph(h.rank(), std::move(vs), std::move(es));
}

namespace {

using Colors = std::vector<std::uint32_t>;

/// Dense ranks of `keys`, preserving their order.
template <class Key>
Colors rerank(const std::vector<Key>& keys, std::size_t& classes) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  Colors out(keys.size());
  classes = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i && keys[order[i]] != keys[order[i - 1]]) ++classes;
    out[order[i]] = static_cast<std::uint32_t>(classes);
  }
  if (!keys.empty()) ++classes;
  return out;
}

class Search {
 public:
  explicit Search(const Hypergraph& h) : n_(h.num_vertices()), incident_(n_) {
    for (const auto& e : h.edges()) {
      std::vector<std::uint32_t> pos;
      for (Vertex v : e) pos.push_back(static_cast<std::uint32_t>(h.index_of(v)));
      for (auto p : pos) incident_[p].push_back(static_cast<std::uint32_t>(edges_.size()));
      edges_.push_back(std::move(pos));
    }
  }

  void run() {
    Colors start(n_, 0);
    std::size_t classes = n_ ? 1 : 0;
    refine(start, classes);
    descend(std::move(start), classes);
  }

  const std::vector<Edge>& best() const { return best_; }
  const Colors& best_labels() const { return best_labels_; }
  std::uint64_t leaves_at_best() const { return count_; }

 private:
  // Colour refinement: a vertex's new colour is its old colour together with
  // the sorted multiset of the colour lists of its co-members, edge by edge.
  void refine(Colors& c, std::size_t& classes) const {
    while (true) {
      std::vector<std::vector<std::uint32_t>> keys(n_);
      for (std::size_t v = 0; v < n_; ++v) {
        std::vector<std::vector<std::uint32_t>> blocks;
        blocks.reserve(incident_[v].size());
        for (auto e : incident_[v]) {
          std::vector<std::uint32_t> others;
          for (auto u : edges_[e])
            if (u != v) others.push_back(c[u]);
          std::sort(others.begin(), others.end());
          blocks.push_back(std::move(others));
        }
        std::sort(blocks.begin(), blocks.end());
        auto& key = keys[v];
        key.push_back(c[v]);
        key.push_back(static_cast<std::uint32_t>(blocks.size()));
        for (const auto& b : blocks) key.insert(key.end(), b.begin(), b.end());
      }
      std::size_t next = 0;
      Colors refined = rerank(keys, next);
      c = std::move(refined);
      if (next == classes) return;
      classes = next;
    }
  }

  void descend(Colors c, std::size_t classes) {
    if (classes == n_) {
      leaf(c);
      return;
    }
    std::vector<std::size_t> size(classes, 0);
    for (auto col : c) ++size[col];
    std::uint32_t target = 0;
    std::size_t target_size = n_ + 1;
    for (std::size_t col = 0; col < classes; ++col)
      if (size[col] > 1 && size[col] < target_size) {
        target = static_cast<std::uint32_t>(col);
        target_size = size[col];
      }
    for (std::size_t v = 0; v < n_; ++v) {
      if (c[v] != target) continue;
      std::vector<std::uint64_t> keys(n_);
      for (std::size_t u = 0; u < n_; ++u)
        keys[u] = 2ull * c[u] + (c[u] == target && u != v ? 1 : 0);
      std::size_t next = 0;
      Colors child = rerank(keys, next);
      refine(child, next);
      descend(std::move(child), next);
    }
  }

  void leaf(const Colors& c) {
    std::vector<Edge> cert;
    cert.reserve(edges_.size());
    for (const auto& e : edges_) {
      Edge out;
      for (auto u : e) out.push_back(c[u] + 1);
      std::sort(out.begin(), out.end());
      cert.push_back(std::move(out));
    }
    std::sort(cert.begin(), cert.end());
    if (count_ == 0 || cert < best_) {
      best_ = std::move(cert);
      best_labels_ = c;
      count_ = 1;
    } else if (cert == best_) {
      ++count_;
    }
  }

  std::size_t n_;
  std::vector<std::vector<std::uint32_t>> edges_;
  std::vector<std::vector<std::uint32_t>> incident_;
  std::vector<Edge> best_;
  Colors best_labels_;
  std::uint64_t count_ = 0;
};

bool maps_edges(const Hypergraph& h, const Hypergraph& g, const VertexMap& perm) {
  if (h.rank() != g.rank() || h.num_vertices() != g.num_vertices() ||
      h.num_edges() != g.num_edges() || perm.size() != h.num_vertices())
    return false;
  std::vector<Vertex> images;
  for (Vertex v : h.vertices()) {
    auto it = perm.find(v);
    if (it == perm.end() || !g.has_vertex(it->second)) return false;
    images.push_back(it->second);
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
  for (const auto& e : h.edges()) {
    Edge img;
    for (Vertex v : e) img.push_back(perm.at(v));
    std::sort(img.begin(), img.end());
    if (!std::binary_search(g.edges().begin(), g.edges().end(), img)) return false;
  }
  return true;
}

}  // namespace

CanonicalForm canonical_form(const Hypergraph& h, std::size_t bound) {
  if (h.num_vertices() > bound) throw SizeBoundExceeded(h.num_vertices(), bound);
  Search s(h);
  s.run();
  CanonicalForm cf;
  cf.rank = h.rank();
  cf.num_vertices = h.num_vertices();
  cf.edges = s.best();
  cf.automorphisms = h.num_vertices() ? s.leaves_at_best() : 1;
  for (std::size_t i = 0; i < h.num_vertices(); ++i)
    cf.witness[h.vertices()[i]] = s.best_labels()[i] + 1;
  return cf;
}

std::optional<VertexMap> isomorphism(const Hypergraph& h, const Hypergraph& g, std::size_t bound) {
  if (h.rank() != g.rank() || h.num_vertices() != g.num_vertices() ||
      h.num_edges() != g.num_edges())
    return std::nullopt;
  const CanonicalForm a = canonical_form(h, bound);
  const CanonicalForm b = canonical_form(g, bound);
  if (!a.same_class(b)) return std::nullopt;
  std::map<Vertex, Vertex> from_label;
  for (const auto& [v, label] : b.witness) from_label[label] = v;
  VertexMap out;
  for (const auto& [v, label] : a.witness) out[v] = from_label.at(label);
  return out;
}

bool are_isomorphic(const Hypergraph& h, const Hypergraph& g, std::size_t bound) {
  return isomorphism(h, g, bound).has_value();
}

std::uint64_t automorphism_count(const Hypergraph& h, std::size_t bound) {
  return canonical_form(h, bound).automorphisms;
}

bool is_automorphism(const Hypergraph& h, const VertexMap& perm) { return maps_edges(h, h, perm); }

bool is_isomorphism(const Hypergraph& h, const Hypergraph& g, const VertexMap& perm) {
  return maps_edges(h, g, perm);
}

Deck deck(const Hypergraph& h, std::size_t bound) {
  if (h.num_vertices() > bound) throw SizeBoundExceeded(h.num_vertices(), bound);
  Deck d;
  d.reserve(h.num_vertices());
  for (Vertex v : h.vertices()) d.push_back({v, canonical_form(delete_vertex(h, v), bound)});
  return d;
}

namespace {

std::vector<std::size_t> sorted_order(const Deck& d) {
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a].form < d[b].form; });
  return order;
}

}  // namespace

bool same_deck(const Deck& a, const Deck& b) {
  if (a.size() != b.size()) return false;
  const auto oa = sorted_order(a), ob = sorted_order(b);
  for (std::size_t i = 0; i < oa.size(); ++i)
    if (!a[oa[i]].form.same_class(b[ob[i]].form)) return false;
  return true;
}

std::optional<VertexMap> hypomorphism(const Hypergraph& h, const Hypergraph& g, std::size_t bound) {
  if (h.num_vertices() != g.num_vertices() || h.rank() != g.rank()) return std::nullopt;
  const Deck a = deck(h, bound), b = deck(g, bound);
  if (!same_deck(a, b)) return std::nullopt;
  const auto oa = sorted_order(a), ob = sorted_order(b);
  VertexMap eta;
  for (std::size_t i = 0; i < oa.size(); ++i) eta[a[oa[i]].deleted] = b[ob[i]].deleted;
  return eta;
}

nlohmann::json deck_to_json(const Deck& d) {
  auto out = nlohmann::json::array();
  for (const auto& card : d)
    out.push_back({{"deleted", card.deleted}, {"canonical", to_hg(card.form.hypergraph())}});
  return out;
}

nlohmann::json vertex_map_to_json(const VertexMap& m) {
  auto out = nlohmann::json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

}  // namespace polydeck::iso
