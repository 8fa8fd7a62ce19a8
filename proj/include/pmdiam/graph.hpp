#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pmdiam/error.hpp"

namespace pmdiam {

using VertexId = std::string;
using NamedEdge = std::pair<VertexId, VertexId>;

enum class Side : std::uint8_t { left, right };

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

/// Edge of a BipartiteGraph, stored as (left endpoint, right endpoint)
/// vertex indices.
struct Edge {
  int left = -1;
  int right = -1;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/**
 * Simple bipartite graph with a declared two-sided partition.
 *
 * Vertices are indexed by the rank of their name in lexicographic order, so
 * two graphs over the same vertex names index them identically and index
 * comparisons agree with name comparisons. Edges are sorted by
 * (min endpoint, max endpoint) index. Immutable after construction.
 */
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  BipartiteGraph(std::vector<VertexId> left, std::vector<VertexId> right,
                 const std::vector<NamedEdge>& edges) {
    std::vector<std::pair<VertexId, Side>> all;
    all.reserve(left.size() + right.size());
    for (auto& v : left) all.emplace_back(std::move(v), Side::left);
    for (auto& v : right) all.emplace_back(std::move(v), Side::right);
    std::sort(all.begin(), all.end());
    for (std::size_t i = 1; i < all.size(); ++i) {
      if (all[i].first == all[i - 1].first) {
        throw Error(Errc::invalid_graph, "duplicate vertex '" + all[i].first + "'");
      }
    }
    names_.reserve(all.size());
    sides_.reserve(all.size());
    for (auto& [name, side] : all) {
      index_.emplace(name, static_cast<int>(names_.size()));
      names_.push_back(std::move(name));
      sides_.push_back(side);
    }

    adjacency_.assign(names_.size(), {});
    incident_.assign(names_.size(), {});
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(edges.size());
    for (const auto& [u_name, v_name] : edges) {
      const int u = index_of(u_name);
      const int v = index_of(v_name);
      if (u == v) throw Error(Errc::invalid_graph, "self-loop at '" + u_name + "'");
      if (sides_[u] == sides_[v]) {
        throw Error(Errc::invalid_graph,
                    "edge {" + u_name + "," + v_name + "} joins two vertices on the same side");
      }
      pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(pairs.begin(), pairs.end());
    if (auto dup = std::adjacent_find(pairs.begin(), pairs.end()); dup != pairs.end()) {
      throw Error(Errc::invalid_graph,
                  "duplicate edge {" + names_[dup->first] + "," + names_[dup->second] + "}");
    }
    edges_.reserve(pairs.size());
    for (const auto& [u, v] : pairs) {
      const int id = static_cast<int>(edges_.size());
      Edge e = sides_[u] == Side::left ? Edge{u, v} : Edge{v, u};
      edges_.push_back(e);
      edge_lookup_.emplace(key(u, v), id);
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
      incident_[u].push_back(id);
      incident_[v].push_back(id);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  std::size_t num_vertices() const { return names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const VertexId& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
  const std::vector<VertexId>& names() const { return names_; }
  Side side(int v) const { return sides_.at(static_cast<std::size_t>(v)); }

  std::optional<int> find(const VertexId& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int index_of(const VertexId& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(Errc::invalid_graph, "unknown vertex '" + name + "'");
    return it->second;
  }

  bool contains(const VertexId& name) const { return index_.count(name) != 0; }

  /// Neighbours of v in ascending index order.
  std::span<const int> neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  std::span<const int> incident_edges(int v) const { return incident_.at(static_cast<std::size_t>(v)); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }

  std::optional<int> edge_index(int u, int v) const {
    auto it = edge_lookup_.find(key(std::min(u, v), std::max(u, v)));
    if (it == edge_lookup_.end()) return std::nullopt;
    return it->second;
  }

  bool has_edge(int u, int v) const { return edge_index(u, v).has_value(); }

  bool has_edge(const VertexId& u, const VertexId& v) const {
    auto iu = find(u), iv = find(v);
    return iu && iv && has_edge(*iu, *iv);
  }

  std::vector<int> vertices_on(Side s) const {
    std::vector<int> out;
    for (std::size_t v = 0; v < names_.size(); ++v) {
      if (sides_[v] == s) out.push_back(static_cast<int>(v));
    }
    return out;
  }

  std::vector<VertexId> names_on(Side s) const {
    std::vector<VertexId> out;
    for (int v : vertices_on(s)) out.push_back(names_[static_cast<std::size_t>(v)]);
    return out;
  }

  std::vector<NamedEdge> named_edges() const {
    std::vector<NamedEdge> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.emplace_back(name(e.left), name(e.right));
    return out;
  }

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.names_ == b.names_ && a.sides_ == b.sides_ && a.edges_ == b.edges_;
  }

 private:
  static std::uint64_t key(int lo, int hi) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(lo)) << 32) |
           static_cast<std::uint32_t>(hi);
  }

  std::vector<VertexId> names_;
  std::vector<Side> sides_;
  std::unordered_map<VertexId, int> index_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, int> edge_lookup_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> incident_;
};

/// Undirected simple graph (no partition). Source instances of the
/// Hamiltonian-cycle reduction live here. Vertices are indexed by name rank.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  SimpleGraph(std::vector<VertexId> vertices, const std::vector<NamedEdge>& edges)
      : names_(std::move(vertices)) {
    std::sort(names_.begin(), names_.end());
    if (auto dup = std::adjacent_find(names_.begin(), names_.end()); dup != names_.end()) {
      throw Error(Errc::invalid_graph, "duplicate vertex '" + *dup + "'");
    }
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], static_cast<int>(i));
    adjacency_.assign(names_.size(), {});
    for (const auto& [a, b] : edges) {
      const int u = index_of(a);
      const int v = index_of(b);
      if (u == v) throw Error(Errc::invalid_graph, "self-loop at '" + a + "'");
      edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
      throw Error(Errc::invalid_graph, "duplicate edge {" + names_[dup->first] + "," +
                                           names_[dup->second] + "}");
    }
    for (const auto& [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  std::size_t num_vertices() const { return names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const VertexId& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
  const std::vector<VertexId>& names() const { return names_; }
  std::span<const int> neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  int index_of(const VertexId& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(Errc::invalid_graph, "unknown vertex '" + name + "'");
    return it->second;
  }

  std::optional<int> find(const VertexId& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool has_edge(int u, int v) const {
    auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  std::vector<NamedEdge> named_edges() const {
    std::vector<NamedEdge> out;
    for (const auto& [u, v] : edges_) out.emplace_back(name(u), name(v));
    return out;
  }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.names_ == b.names_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<VertexId> names_;
  std::unordered_map<VertexId, int> index_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// Name-keyed mutable graph used while assembling constructions. Call
/// build() once at the end instead of re-indexing after every edit.
class GraphBuilder {
 public:
  GraphBuilder() = default;

  explicit GraphBuilder(const BipartiteGraph& g) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      sides_.emplace(g.name(static_cast<int>(v)), g.side(static_cast<int>(v)));
    }
    for (const auto& [u, v] : g.named_edges()) edges_.insert(normalized(u, v));
  }

  bool has_vertex(const VertexId& v) const { return sides_.count(v) != 0; }

  Side side(const VertexId& v) const {
    auto it = sides_.find(v);
    if (it == sides_.end()) throw Error(Errc::invalid_graph, "unknown vertex '" + v + "'");
    return it->second;
  }

  void add_vertex(const VertexId& v, Side s) {
    if (!sides_.emplace(v, s).second) {
      throw Error(Errc::invalid_parameter, "vertex name '" + v + "' already in use");
    }
  }

  bool has_edge(const VertexId& u, const VertexId& v) const {
    return edges_.count(normalized(u, v)) != 0;
  }

  void add_edge(const VertexId& u, const VertexId& v) {
    if (side(u) == side(v)) {
      throw Error(Errc::invalid_graph, "edge {" + u + "," + v + "} would break bipartiteness");
    }
    edges_.insert(normalized(u, v));
  }

  void remove_edge(const VertexId& u, const VertexId& v) { edges_.erase(normalized(u, v)); }

  void remove_vertex(const VertexId& v) {
    sides_.erase(v);
    for (auto it = edges_.begin(); it != edges_.end();) {
      if (it->first == v || it->second == v) {
        it = edges_.erase(it);
      } else {
        ++it;
      }
    }
  }

  BipartiteGraph build() const {
    std::vector<VertexId> left, right;
    for (const auto& [name, s] : sides_) (s == Side::left ? left : right).push_back(name);
    return BipartiteGraph(std::move(left), std::move(right),
                          std::vector<NamedEdge>(edges_.begin(), edges_.end()));
  }

 private:
  static NamedEdge normalized(const VertexId& u, const VertexId& v) {
    return u < v ? NamedEdge{u, v} : NamedEdge{v, u};
  }

  std::map<VertexId, Side> sides_;
  std::set<NamedEdge> edges_;
};

/// Two-colours the graph ignoring the declared sides and checks that the
/// declared sides are one of the proper colourings of every component.
inline bool is_properly_two_colored(const BipartiteGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<int> color(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::vector<int> stack{static_cast<int>(s)};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int w : g.neighbors(u)) {
        if (color[w] == -1) {
          color[w] = 1 - color[u];
          stack.push_back(w);
        } else if (color[w] == color[u]) {
          return false;
        }
      }
    }
  }
  for (const auto& e : g.edges()) {
    if (g.side(e.left) == g.side(e.right)) return false;
  }
  return true;
}

}  // namespace pmdiam
