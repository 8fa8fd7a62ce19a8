#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pmdiam/error.hpp"
#include "pmdiam/graph.hpp"
#include "pmdiam/matching.hpp"

namespace pmdiam {

/**
 * Ladder of 2h+2 vertices replacing the edge {v,w}: rungs {a_i,b_i},
 * rails {a_i,a_{i+1}} and {b_i,b_{i+1}}, and the boundary edges {v,a_0},
 * {w,b_0}. Vertices are referenced by name so a descriptor stays valid
 * across graphs that contain the tower.
 */
struct TowerDescriptor {
  VertexId v;
  VertexId w;
  int height = 0;
  std::vector<VertexId> a;  // a_0..a_h
  std::vector<VertexId> b;  // b_0..b_h

  std::set<VertexId> vertex_set() const {
    std::set<VertexId> out(a.begin(), a.end());
    out.insert(b.begin(), b.end());
    return out;
  }

  friend bool operator==(const TowerDescriptor&, const TowerDescriptor&) = default;
};

/// Provenance of a graph built from a source graph H by vertex splitting.
struct SplitOrigin {
  SimpleGraph source;
  int height = 0;
  int towers_per_vertex = 0;
  std::map<VertexId, std::pair<VertexId, VertexId>> copies;  // v -> (v_1, v_2)
  std::map<VertexId, std::vector<int>> chains;              // v -> tower indices, v_1 to v_2

  friend bool operator==(const SplitOrigin&, const SplitOrigin&) = default;
};

struct ToweredGraph {
  BipartiteGraph graph;
  std::vector<TowerDescriptor> towers;
  std::optional<SplitOrigin> origin;

  friend bool operator==(const ToweredGraph&, const ToweredGraph&) = default;
};

/// Tower vertices resolved to indices of one concrete graph.
struct TowerIndices {
  int v = -1;
  int w = -1;
  std::vector<int> a;
  std::vector<int> b;

  int height() const { return static_cast<int>(a.size()) - 1; }
};

inline TowerIndices resolve(const BipartiteGraph& g, const TowerDescriptor& t) {
  TowerIndices r;
  r.v = g.index_of(t.v);
  r.w = g.index_of(t.w);
  for (const auto& n : t.a) r.a.push_back(g.index_of(n));
  for (const auto& n : t.b) r.b.push_back(g.index_of(n));
  return r;
}

inline VertexId tower_vertex_name(int tower, char rail, int level) {
  return "t" + std::to_string(tower) + ":" + rail + std::to_string(level);
}

namespace detail {

/// Replaces {v,w} in the builder by a tower numbered `number`.
inline TowerDescriptor attach_tower(GraphBuilder& builder, const VertexId& v, const VertexId& w, int height,
                                    int number) {
  if (height < 1) throw Error(Errc::invalid_height, "tower height must be >= 1, got " + std::to_string(height));
  if (!builder.has_vertex(v) || !builder.has_vertex(w) || !builder.has_edge(v, w)) {
    throw Error(Errc::edge_absent, "edge {" + v + "," + w + "} is not in the graph");
  }
  const Side v_side = builder.side(v);
  const Side w_side = builder.side(w);
  TowerDescriptor t{v, w, height, {}, {}};
  builder.remove_edge(v, w);
  for (int i = 0; i <= height; ++i) {
    t.a.push_back(tower_vertex_name(number, 'a', i));
    t.b.push_back(tower_vertex_name(number, 'b', i));
    // a_0 sits opposite v, b_0 opposite w; sides alternate up the rails.
    builder.add_vertex(t.a.back(), i % 2 == 0 ? w_side : v_side);
    builder.add_vertex(t.b.back(), i % 2 == 0 ? v_side : w_side);
  }
  for (int i = 0; i <= height; ++i) builder.add_edge(t.a[i], t.b[i]);
  for (int i = 0; i < height; ++i) {
    builder.add_edge(t.a[i], t.a[i + 1]);
    builder.add_edge(t.b[i], t.b[i + 1]);
  }
  builder.add_edge(v, t.a[0]);
  builder.add_edge(w, t.b[0]);
  return t;
}

/// A new tower on {x,y} hangs a_0 on x and b_0 on y. An existing tower whose
/// boundary edge was {x,y} now reaches across that boundary to the new a_0 or
/// b_0, so its descriptor keeps naming edges of the current graph.
inline void retarget_after_attach(std::vector<TowerDescriptor>& registry, const TowerDescriptor& added) {
  const VertexId& x = added.v;
  const VertexId& y = added.w;
  auto across = [&](const VertexId& inner) { return inner == x ? added.a[0] : added.b[0]; };
  for (auto& t : registry) {
    if (&t == &added) continue;
    if ((t.v == x && t.a[0] == y) || (t.v == y && t.a[0] == x)) t.v = across(t.a[0]);
    if ((t.w == x && t.b[0] == y) || (t.w == y && t.b[0] == x)) t.w = across(t.b[0]);
  }
}

inline void attach_registered(GraphBuilder& builder, std::vector<TowerDescriptor>& registry, const VertexId& v,
                              const VertexId& w, int height) {
  registry.push_back(attach_tower(builder, v, w, height, static_cast<int>(registry.size()) + 1));
  retarget_after_attach(registry, registry.back());
}

inline void chain_towers(GraphBuilder& builder, std::vector<TowerDescriptor>& registry, const VertexId& v,
                         const VertexId& w, int count, int height) {
  if (count < 1) throw Error(Errc::invalid_parameter, "tower count must be >= 1");
  VertexId lower = v;
  for (int k = 0; k < count; ++k) {
    attach_registered(builder, registry, lower, w, height);
    lower = registry.back().b[0];
  }
}

}  // namespace detail

inline ToweredGraph add_tower(const ToweredGraph& tg, const NamedEdge& e, int height) {
  GraphBuilder builder(tg.graph);
  ToweredGraph out{{}, tg.towers, tg.origin};
  detail::attach_registered(builder, out.towers, e.first, e.second, height);
  out.graph = builder.build();
  return out;
}

inline ToweredGraph add_tower(const BipartiteGraph& g, const NamedEdge& e, int height) {
  return add_tower(ToweredGraph{g, {}, std::nullopt}, e, height);
}

/// t towers on e = {v,w}: the first on e, each further one on {b_0 of the
/// previous tower, w}. In the finished chain tower k runs from b_0 of tower
/// k-1 (or v) to a_0 of tower k+1 (or w), and its descriptor says so.
inline ToweredGraph add_towers(const ToweredGraph& tg, const NamedEdge& e, int count, int height) {
  if (height < 1) throw Error(Errc::invalid_height, "tower height must be >= 1");
  GraphBuilder builder(tg.graph);
  ToweredGraph out{{}, tg.towers, tg.origin};
  detail::chain_towers(builder, out.towers, e.first, e.second, count, height);
  out.graph = builder.build();
  return out;
}

inline ToweredGraph add_towers(const BipartiteGraph& g, const NamedEdge& e, int count, int height) {
  return add_towers(ToweredGraph{g, {}, std::nullopt}, e, count, height);
}

inline VertexId split_copy_name(const VertexId& v, int copy) { return v + ":" + std::to_string(copy); }

/// The bipartite double cover of H with the {v_1,v_2} edges, before towers.
inline BipartiteGraph split_graph(const SimpleGraph& h) {
  GraphBuilder builder;
  for (const auto& v : h.names()) {
    builder.add_vertex(split_copy_name(v, 1), Side::left);
    builder.add_vertex(split_copy_name(v, 2), Side::right);
  }
  for (const auto& v : h.names()) builder.add_edge(split_copy_name(v, 1), split_copy_name(v, 2));
  for (const auto& [u, v] : h.named_edges()) {
    builder.add_edge(split_copy_name(u, 1), split_copy_name(v, 2));
    builder.add_edge(split_copy_name(u, 2), split_copy_name(v, 1));
  }
  return builder.build();
}

inline ToweredGraph build_GH(const SimpleGraph& h, int height, int towers_per_vertex) {
  if (height < 1) throw Error(Errc::invalid_height, "tower height must be >= 1");
  if (towers_per_vertex < 1) throw Error(Errc::invalid_parameter, "tower count must be >= 1");
  GraphBuilder builder(split_graph(h));
  ToweredGraph out;
  SplitOrigin origin{h, height, towers_per_vertex, {}, {}};
  for (const auto& v : h.names()) {
    const VertexId v1 = split_copy_name(v, 1);
    const VertexId v2 = split_copy_name(v, 2);
    origin.copies[v] = {v1, v2};
    const int first = static_cast<int>(out.towers.size());
    detail::chain_towers(builder, out.towers, v1, v2, towers_per_vertex, height);
    for (int k = first; k < static_cast<int>(out.towers.size()); ++k) origin.chains[v].push_back(k);
  }
  out.graph = builder.build();
  out.origin = std::move(origin);
  return out;
}

/// { i : {a_i,b_i} in m }, ascending.
inline std::vector<int> horizontal_indices(const BipartiteGraph& g, const TowerDescriptor& tower,
                                           const PerfectMatching& m) {
  const auto t = resolve(g, tower);
  std::vector<int> out;
  for (int i = 0; i <= t.height(); ++i) {
    if (m.contains(t.a[i], t.b[i])) out.push_back(i);
  }
  return out;
}

/// Smallest horizontal index, or nullopt when m has no rung of the tower.
inline std::optional<int> depth(const BipartiteGraph& g, const TowerDescriptor& tower, const PerfectMatching& m) {
  const auto h = horizontal_indices(g, tower, m);
  if (h.empty()) return std::nullopt;
  return h.front();
}

inline bool touches(const BipartiteGraph& g, const Cycle& c, const TowerDescriptor& tower) {
  const auto t = resolve(g, tower);
  return c.contains_edge(t.v, t.a[0]) && c.contains_edge(t.b[0], t.w);
}

/// True iff every vertex of c is a rung vertex of the tower.
inline bool inside_tower(const BipartiteGraph& g, const Cycle& c, const TowerDescriptor& tower) {
  const auto vs = tower.vertex_set();
  return std::all_of(c.vertices().begin(), c.vertices().end(),
                     [&](int v) { return vs.count(g.name(v)) != 0; });
}

/// (v, a_0, ..., a_k, b_k, ..., b_0, w)
inline std::vector<VertexId> tower_path(const TowerDescriptor& tower, int k) {
  if (k < 0 || k > tower.height) {
    throw Error(Errc::index_out_of_range,
                "path index " + std::to_string(k) + " outside 0.." + std::to_string(tower.height));
  }
  std::vector<VertexId> path{tower.v};
  for (int i = 0; i <= k; ++i) path.push_back(tower.a[i]);
  for (int i = k; i >= 0; --i) path.push_back(tower.b[i]);
  path.push_back(tower.w);
  return path;
}

/// Removes the tower and restores its base edge {v,w}.
inline BipartiteGraph contract_tower(const BipartiteGraph& g, const TowerDescriptor& tower) {
  GraphBuilder builder(g);
  for (const auto& n : tower.vertex_set()) {
    if (!builder.has_vertex(n)) throw Error(Errc::invalid_parameter, "tower vertex '" + n + "' not in graph");
    builder.remove_vertex(n);
  }
  builder.add_edge(tower.v, tower.w);
  return builder.build();
}

/// Removes tower k from a towered graph. Towers whose boundary reached into
/// tower k are re-targeted to the restored base edge; the split origin no
/// longer describes the result and is dropped.
inline ToweredGraph contract_tower(const ToweredGraph& tg, std::size_t k) {
  if (k >= tg.towers.size()) throw Error(Errc::index_out_of_range, "no tower " + std::to_string(k));
  const TowerDescriptor gone = tg.towers[k];
  ToweredGraph out{contract_tower(tg.graph, gone), {}, std::nullopt};
  for (std::size_t j = 0; j < tg.towers.size(); ++j) {
    if (j == k) continue;
    auto t = tg.towers[j];
    for (auto* end : {&t.v, &t.w}) {
      if (*end == gone.a[0]) *end = gone.w;
      if (*end == gone.b[0]) *end = gone.v;
    }
    out.towers.push_back(std::move(t));
  }
  return out;
}

/// Restriction of m to contract_tower(g, tower); m must contain both boundary
/// edges, which become the base edge.
inline PerfectMatching contract_matching(const BipartiteGraph& g, const BipartiteGraph& contracted,
                                         const TowerDescriptor& tower, const PerfectMatching& m) {
  const auto t = resolve(g, tower);
  if (!m.contains(t.v, t.a[0]) || !m.contains(t.w, t.b[0])) {
    throw Error(Errc::precondition_violation, "matching does not contain both tower boundary edges");
  }
  const auto rungs = tower.vertex_set();
  std::vector<NamedEdge> edges;
  for (const auto& [u, v] : m.named_edges(g)) {
    if (rungs.count(u) || rungs.count(v)) continue;
    edges.emplace_back(u, v);
  }
  edges.emplace_back(tower.v, tower.w);
  return PerfectMatching::from_named_edges(contracted, edges);
}

/// Extends a matching of the contracted graph that contains the base edge:
/// the base edge is replaced by the boundary edges plus `inner`, which must
/// perfectly match the rung vertices.
inline PerfectMatching expand_matching(const BipartiteGraph& contracted, const BipartiteGraph& g,
                                       const TowerDescriptor& tower, const PerfectMatching& m,
                                       const std::vector<NamedEdge>& inner) {
  const int v = contracted.index_of(tower.v);
  const int w = contracted.index_of(tower.w);
  if (!m.contains(v, w)) throw Error(Errc::e_not_in_matching, "matching does not use the base edge");
  std::vector<NamedEdge> edges;
  for (const auto& [x, y] : m.named_edges(contracted)) {
    if ((x == tower.v && y == tower.w) || (x == tower.w && y == tower.v)) continue;
    edges.emplace_back(x, y);
  }
  edges.emplace_back(tower.v, tower.a[0]);
  edges.emplace_back(tower.w, tower.b[0]);
  edges.insert(edges.end(), inner.begin(), inner.end());
  return PerfectMatching::from_named_edges(g, edges);
}

}  // namespace pmdiam
