#pragma once

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pmdiam/circuits.hpp"
#include "pmdiam/error.hpp"
#include "pmdiam/flip_engine.hpp"
#include "pmdiam/gadgets.hpp"
#include "pmdiam/graph.hpp"
#include "pmdiam/matching.hpp"
#include "pmdiam/reductions.hpp"
#include "pmdiam/skeleton.hpp"

namespace pmdiam::io {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::parse_error, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw Error(Errc::parse_error, std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw Error(Errc::parse_error, std::string(what) + " entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline std::vector<NamedEdge> edge_list(const json& j) {
  if (!j.is_array()) throw Error(Errc::parse_error, "edges must be an array");
  std::vector<NamedEdge> out;
  for (const auto& e : j) {
    const auto pair = string_list(e, "edge");
    if (pair.size() != 2) throw Error(Errc::parse_error, "edge must have two endpoints");
    out.emplace_back(pair[0], pair[1]);
  }
  return out;
}

inline json edges_json(const std::vector<NamedEdge>& edges) {
  json out = json::array();
  for (const auto& [u, v] : edges) out.push_back({u, v});
  return out;
}

}  // namespace detail

// -- graphs ------------------------------------------------------------------

inline json to_json(const BipartiteGraph& g) {
  return {{"left", g.names_on(Side::left)},
          {"right", g.names_on(Side::right)},
          {"edges", detail::edges_json(g.named_edges())}};
}

inline BipartiteGraph graph_from_json(const json& j) {
  return BipartiteGraph(detail::string_list(detail::field(j, "left"), "left"),
                        detail::string_list(detail::field(j, "right"), "right"),
                        detail::edge_list(detail::field(j, "edges")));
}

inline json to_json(const SimpleGraph& h) {
  return {{"vertices", h.names()}, {"edges", detail::edges_json(h.named_edges())}};
}

/// Accepts {"vertices": [...], "edges": [...]}; without "vertices" the
/// vertex set is read off the edges.
inline SimpleGraph simple_graph_from_json(const json& j) {
  auto edges = detail::edge_list(detail::field(j, "edges"));
  std::vector<std::string> vertices;
  if (j.contains("vertices")) {
    vertices = detail::string_list(j.at("vertices"), "vertices");
  } else {
    std::set<std::string> seen;
    for (const auto& [u, v] : edges) {
      seen.insert(u);
      seen.insert(v);
    }
    vertices.assign(seen.begin(), seen.end());
  }
  return SimpleGraph(std::move(vertices), edges);
}

// -- matchings, cycles, sequences -------------------------------------------

inline json to_json(const BipartiteGraph& g, const PerfectMatching& m) {
  return {{"edges", detail::edges_json(m.named_edges(g))}};
}

inline PerfectMatching matching_from_json(const BipartiteGraph& g, const json& j) {
  return PerfectMatching::from_named_edges(g, detail::edge_list(detail::field(j, "edges")));
}

inline json to_json(const BipartiteGraph& g, const Cycle& c) { return {{"vertices", c.names(g)}}; }

inline Cycle cycle_from_json(const BipartiteGraph& g, const json& j) {
  return Cycle::from_names(g, detail::string_list(detail::field(j, "vertices"), "vertices"));
}

inline json to_json(const BipartiteGraph& g, const FlipSequence& seq) {
  json out = json::array();
  for (const auto& c : seq.cycles) out.push_back(to_json(g, c));
  return out;
}

inline FlipSequence flip_sequence_from_json(const BipartiteGraph& g, const json& j) {
  if (!j.is_array()) throw Error(Errc::parse_error, "flip sequence must be an array of cycles");
  FlipSequence seq;
  for (const auto& c : j) seq.cycles.push_back(cycle_from_json(g, c));
  return seq;
}

inline json to_json(const SkeletonGraph& s) {
  json nodes = json::array();
  for (const auto& m : s.nodes) nodes.push_back(to_json(s.graph, m));
  return {{"nodes", nodes}, {"adjacency", s.adjacency}};
}

/// Nodes are re-parsed against the graph the skeleton was built from.
inline SkeletonGraph skeleton_from_json(const BipartiteGraph& g, const json& j) {
  SkeletonGraph s{g, {}, {}};
  for (const auto& m : detail::field(j, "nodes")) s.nodes.push_back(matching_from_json(g, m));
  s.adjacency = detail::field(j, "adjacency").get<std::vector<std::vector<int>>>();
  if (s.adjacency.size() != s.nodes.size()) throw Error(Errc::parse_error, "adjacency does not match node count");
  for (const auto& nbrs : s.adjacency) {
    for (int x : nbrs) {
      if (x < 0 || static_cast<std::size_t>(x) >= s.nodes.size()) throw Error(Errc::parse_error, "adjacency index out of range");
    }
  }
  return s;
}

inline json to_json(const BipartiteGraph& g, const CircuitVector& c) {
  json edges = json::array();
  json coeffs = json::array();
  for (int e : c.support()) {
    const auto& ed = g.edge(e);
    edges.push_back({g.name(ed.left), g.name(ed.right)});
    coeffs.push_back(c.coefficients[static_cast<std::size_t>(e)]);
  }
  return {{"edges", edges}, {"coefficients", coeffs}};
}

inline CircuitVector circuit_from_json(const BipartiteGraph& g, const json& j) {
  const auto edges = detail::edge_list(detail::field(j, "edges"));
  const auto coeffs = detail::field(j, "coefficients").get<std::vector<long long>>();
  if (edges.size() != coeffs.size()) throw Error(Errc::parse_error, "one coefficient per support edge expected");
  CircuitVector c{std::vector<long long>(g.num_edges(), 0)};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto e = g.edge_index(g.index_of(edges[i].first), g.index_of(edges[i].second));
    if (!e) throw Error(Errc::edge_absent, "circuit edge {" + edges[i].first + "," + edges[i].second + "} not in graph");
    c.coefficients[static_cast<std::size_t>(*e)] = coeffs[i];
  }
  return c;
}

// -- gadgets ------------------------------------------------------------------

inline json to_json(const TowerDescriptor& t) {
  return {{"base_edge", {t.v, t.w}}, {"height", t.height}, {"a", t.a}, {"b", t.b}};
}

inline TowerDescriptor tower_from_json(const json& j) {
  const auto base = detail::string_list(detail::field(j, "base_edge"), "base_edge");
  if (base.size() != 2) throw Error(Errc::parse_error, "base_edge must have two endpoints");
  TowerDescriptor t{base[0], base[1], detail::field(j, "height").get<int>(),
                    detail::string_list(detail::field(j, "a"), "a"), detail::string_list(detail::field(j, "b"), "b")};
  if (t.height < 1 || t.a.size() != static_cast<std::size_t>(t.height) + 1 || t.b.size() != t.a.size()) {
    throw Error(Errc::parse_error, "tower rails do not match its height");
  }
  return t;
}

inline json to_json(const SplitOrigin& o) {
  json copies = json::object();
  for (const auto& [v, c] : o.copies) copies[v] = {c.first, c.second};
  return {{"source", to_json(o.source)},
          {"height", o.height},
          {"towers_per_vertex", o.towers_per_vertex},
          {"copies", copies},
          {"chains", o.chains}};
}

inline SplitOrigin origin_from_json(const json& j) {
  SplitOrigin o;
  o.source = simple_graph_from_json(detail::field(j, "source"));
  o.height = detail::field(j, "height").get<int>();
  o.towers_per_vertex = detail::field(j, "towers_per_vertex").get<int>();
  for (const auto& [v, c] : detail::field(j, "copies").items()) {
    const auto pair = detail::string_list(c, "copies");
    if (pair.size() != 2) throw Error(Errc::parse_error, "copies entry must have two names");
    o.copies[v] = {pair[0], pair[1]};
  }
  for (const auto& [v, c] : detail::field(j, "chains").items()) o.chains[v] = c.get<std::vector<int>>();
  return o;
}

inline json to_json(const ToweredGraph& tg) {
  json towers = json::array();
  for (const auto& t : tg.towers) towers.push_back(to_json(t));
  json out = {{"graph", to_json(tg.graph)}, {"towers", towers}};
  if (tg.origin) out["origin"] = to_json(*tg.origin);
  return out;
}

inline ToweredGraph towered_graph_from_json(const json& j) {
  ToweredGraph tg;
  tg.graph = graph_from_json(detail::field(j, "graph"));
  for (const auto& t : detail::field(j, "towers")) tg.towers.push_back(tower_from_json(t));
  if (j.contains("origin")) tg.origin = origin_from_json(j.at("origin"));
  for (const auto& t : tg.towers) resolve(tg.graph, t);
  return tg;
}

// -- reductions ---------------------------------------------------------------

inline json to_json(const Hypergraph4DM& inst) {
  json edges = json::array();
  for (const auto& q : inst.hyperedges) edges.push_back({q[0], q[1], q[2], q[3]});
  return {{"W", inst.w_set}, {"X", inst.x_set}, {"Y", inst.y_set}, {"Z", inst.z_set}, {"edges", edges}};
}

inline Hypergraph4DM hypergraph_from_json(const json& j) {
  Hypergraph4DM inst;
  inst.w_set = detail::string_list(detail::field(j, "W"), "W");
  inst.x_set = detail::string_list(detail::field(j, "X"), "X");
  inst.y_set = detail::string_list(detail::field(j, "Y"), "Y");
  inst.z_set = detail::string_list(detail::field(j, "Z"), "Z");
  for (const auto& e : detail::field(j, "edges")) {
    const auto q = detail::string_list(e, "hyperedge");
    if (q.size() != 4) throw Error(Errc::parse_error, "hyperedge must have four components");
    inst.hyperedges.push_back({q[0], q[1], q[2], q[3]});
  }
  inst.validate();
  return inst;
}

/// 3DM instance file: {"X": [...], "Y": [...], "Z": [...], "triples": [[x,y,z], ...]}.
struct ThreeDMInstance {
  std::vector<std::string> x_set, y_set, z_set;
  std::vector<std::array<std::string, 3>> triples;
};

inline ThreeDMInstance three_dm_from_json(const json& j) {
  ThreeDMInstance inst;
  inst.x_set = detail::string_list(detail::field(j, "X"), "X");
  inst.y_set = detail::string_list(detail::field(j, "Y"), "Y");
  inst.z_set = detail::string_list(detail::field(j, "Z"), "Z");
  for (const auto& e : detail::field(j, "triples")) {
    const auto t = detail::string_list(e, "triple");
    if (t.size() != 3) throw Error(Errc::parse_error, "triple must have three components");
    inst.triples.push_back({t[0], t[1], t[2]});
  }
  return inst;
}

inline json to_json(const ReductionCertificate& c) {
  return {{"kind", c.kind}, {"vertex_map", c.vertex_map}, {"gadget_map", c.gadget_map}, {"parameters", c.parameters}};
}

inline ReductionCertificate certificate_from_json(const json& j) {
  ReductionCertificate c;
  c.kind = detail::field(j, "kind").get<std::string>();
  c.vertex_map = detail::field(j, "vertex_map").get<std::map<std::string, std::vector<VertexId>>>();
  c.gadget_map = detail::field(j, "gadget_map").get<std::map<std::string, std::vector<VertexId>>>();
  c.parameters = detail::field(j, "parameters").get<std::map<std::string, long long>>();
  return c;
}

// -- DOT ----------------------------------------------------------------------

namespace detail {

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

inline void write_edges(std::ostream& os, const BipartiteGraph& g, const std::optional<PerfectMatching>& m,
                        const std::set<NamedEdge>& skip = {}) {
  for (const auto& e : g.edges()) {
    const NamedEdge named{g.name(e.left), g.name(e.right)};
    if (skip.count(named)) continue;
    os << "  " << quoted(named.first) << " -- " << quoted(named.second);
    if (m && m->contains(e.left, e.right)) os << " [style=bold, penwidth=3]";
    os << ";\n";
  }
}

}  // namespace detail

/// Undirected DOT; left vertices are boxes, matching edges are bold.
inline std::string to_dot(const BipartiteGraph& g, const std::optional<PerfectMatching>& m = std::nullopt) {
  std::ostringstream os;
  os << "graph G {\n";
  for (const auto& name : g.names()) {
    os << "  " << detail::quoted(name)
       << (g.side(g.index_of(name)) == Side::left ? " [shape=box];\n" : " [shape=ellipse];\n");
  }
  detail::write_edges(os, g, m);
  os << "}\n";
  return os.str();
}

/// Each tower is a cluster with its rungs ranked level by level.
inline std::string to_dot(const ToweredGraph& tg, const std::optional<PerfectMatching>& m = std::nullopt) {
  std::ostringstream os;
  os << "graph G {\n";
  std::set<VertexId> in_tower;
  for (std::size_t k = 0; k < tg.towers.size(); ++k) {
    const auto& t = tg.towers[k];
    os << "  subgraph cluster_t" << k + 1 << " {\n    label=" << detail::quoted("t" + std::to_string(k + 1)) << ";\n";
    for (int i = 0; i <= t.height; ++i) {
      os << "    { rank=same; " << detail::quoted(t.a[static_cast<std::size_t>(i)]) << "; "
         << detail::quoted(t.b[static_cast<std::size_t>(i)]) << "; }\n";
      in_tower.insert(t.a[static_cast<std::size_t>(i)]);
      in_tower.insert(t.b[static_cast<std::size_t>(i)]);
    }
    os << "  }\n";
  }
  for (const auto& name : tg.graph.names()) {
    if (in_tower.count(name)) continue;
    os << "  " << detail::quoted(name)
       << (tg.graph.side(tg.graph.index_of(name)) == Side::left ? " [shape=box];\n" : " [shape=ellipse];\n");
  }
  detail::write_edges(os, tg.graph, m);
  os << "}\n";
  return os.str();
}

/// Skeleton nodes are labelled by matching index.
inline std::string to_dot(const SkeletonGraph& s) {
  std::ostringstream os;
  os << "graph skeleton {\n";
  for (std::size_t i = 0; i < s.nodes.size(); ++i) os << "  m" << i << " [label=\"" << i << "\"];\n";
  for (std::size_t i = 0; i < s.adjacency.size(); ++i) {
    for (int j : s.adjacency[i]) {
      if (static_cast<std::size_t>(j) > i) os << "  m" << i << " -- m" << j << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace pmdiam::io
