#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pmdiam/error.hpp"
#include "pmdiam/flip_engine.hpp"
#include "pmdiam/gadgets.hpp"
#include "pmdiam/graph.hpp"
#include "pmdiam/matching.hpp"

namespace pmdiam {

inline constexpr std::size_t kDefaultHamiltonianCap = 20;
inline constexpr std::size_t kDefault4dmCap = 10;
inline constexpr std::size_t kDefaultCoverCap = 40;

/// Forward maps from source objects to constructed vertices, plus the
/// numeric parameters of the construction.
struct ReductionCertificate {
  std::string kind;
  std::map<std::string, std::vector<VertexId>> vertex_map;
  std::map<std::string, std::vector<VertexId>> gadget_map;
  std::map<std::string, long long> parameters;

  /// Source key owning a constructed vertex, searching both maps.
  std::optional<std::string> source_of(const VertexId& v) const {
    for (const auto* m : {&vertex_map, &gadget_map}) {
      for (const auto& [key, vs] : *m) {
        if (std::find(vs.begin(), vs.end(), v) != vs.end()) return key;
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const ReductionCertificate&, const ReductionCertificate&) = default;
};

// ---------------------------------------------------------------------------
// Hamiltonian cycle -> diameter of P_{G_H}

struct HamiltonianReduction {
  ToweredGraph graph;
  long long threshold = 0;
  ReductionCertificate certificate;
};

inline long long default_tower_height(long long n) { return 2 * n * n - n + 1; }

inline HamiltonianReduction reduce_hamiltonian_to_diameter(const SimpleGraph& h,
                                                           std::optional<int> height_override = std::nullopt,
                                                           std::optional<int> towers_override = std::nullopt) {
  const long long n = static_cast<long long>(h.num_vertices());
  if (n < 3) throw Error(Errc::too_small, "the reduction needs at least 3 source vertices");
  const long long height = height_override ? *height_override : default_tower_height(n);
  const long long towers = towers_override ? *towers_override : 4 * height;
  HamiltonianReduction r;
  r.graph = build_GH(h, static_cast<int>(height), static_cast<int>(towers));
  r.threshold = 2 * height + 4 * n;
  r.certificate.kind = "hamiltonian-to-diameter";
  r.certificate.parameters = {{"n", n},
                              {"h", height},
                              {"t", towers},
                              {"threshold", r.threshold},
                              {"vertices", static_cast<long long>(r.graph.graph.num_vertices())},
                              {"edges", static_cast<long long>(r.graph.graph.num_edges())}};
  for (const auto& [v, copies] : r.graph.origin->copies) {
    r.certificate.vertex_map[v] = {copies.first, copies.second};
    auto& owned = r.certificate.gadget_map[v];
    for (int k : r.graph.origin->chains.at(v)) {
      const auto& t = r.graph.towers[static_cast<std::size_t>(k)];
      owned.insert(owned.end(), t.a.begin(), t.a.end());
      owned.insert(owned.end(), t.b.begin(), t.b.end());
    }
  }
  return r;
}

/// Rotates a cyclic vertex order to start at the smallest name, heading
/// toward the smaller neighbour.
inline std::vector<VertexId> canonical_cycle_order(std::vector<VertexId> order) {
  if (order.size() < 3) return order;
  std::rotate(order.begin(), std::min_element(order.begin(), order.end()), order.end());
  if (order.back() < order[1]) std::reverse(order.begin() + 1, order.end());
  return order;
}

/// Contracts each v_1..v_2 stretch of a cycle of G_H and returns the induced
/// Hamiltonian cycle of the source graph.
inline std::vector<VertexId> extract_hamiltonian_from_cycle(const ToweredGraph& tg, const Cycle& c) {
  const auto& origin = detail::require_origin(tg);
  for (const auto& [v, chain] : origin.chains) {
    const bool touched = std::any_of(chain.begin(), chain.end(), [&](int k) {
      return touches(tg.graph, c, tg.towers[static_cast<std::size_t>(k)]);
    });
    if (!touched) throw Error(Errc::not_spanning, "cycle touches no tower on the chain of '" + v + "'");
  }
  std::map<VertexId, VertexId> owner;
  for (const auto& [v, copies] : origin.copies) {
    owner[copies.first] = v;
    owner[copies.second] = v;
    for (int k : origin.chains.at(v)) {
      for (const auto& n : tg.towers[static_cast<std::size_t>(k)].vertex_set()) owner[n] = v;
    }
  }
  std::vector<VertexId> labels;
  for (const auto& n : c.names(tg.graph)) labels.push_back(owner.at(n));
  std::vector<VertexId> order;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != labels[(i + labels.size() - 1) % labels.size()]) order.push_back(labels[i]);
  }
  order = canonical_cycle_order(std::move(order));
  if (!is_hamiltonian_cycle(origin.source, order)) {
    throw Error(Errc::not_hamiltonian, "contracted cycle is not a Hamiltonian cycle of the source graph");
  }
  return order;
}

inline std::optional<std::vector<VertexId>> brute_hamiltonian(const SimpleGraph& h,
                                                              std::size_t cap = kDefaultHamiltonianCap) {
  const std::size_t n = h.num_vertices();
  if (n > cap) throw Error(Errc::cap_exceeded, "Hamiltonian search limited to " + std::to_string(cap) + " vertices");
  if (n < 3) return std::nullopt;
  std::vector<int> path{0};
  std::vector<char> used(n);
  used[0] = 1;
  std::function<bool()> extend = [&]() -> bool {
    if (path.size() == n) return h.has_edge(path.back(), 0);
    for (int next : h.neighbors(path.back())) {
      if (used[static_cast<std::size_t>(next)]) continue;
      used[static_cast<std::size_t>(next)] = 1;
      path.push_back(next);
      if (extend()) return true;
      path.pop_back();
      used[static_cast<std::size_t>(next)] = 0;
    }
    return false;
  };
  if (!extend()) return std::nullopt;
  std::vector<VertexId> order;
  for (int v : path) order.push_back(h.name(v));
  return canonical_cycle_order(std::move(order));
}

// ---------------------------------------------------------------------------
// 4-dimensional matching -> vertex-disjoint 4-cycle cover

/// Hyperedges are (w, x, y, z) quadruples. Parallel hyperedges are allowed
/// and get separate gadgets.
struct Hypergraph4DM {
  std::vector<std::string> w_set, x_set, y_set, z_set;
  std::vector<std::array<std::string, 4>> hyperedges;

  std::array<const std::vector<std::string>*, 4> sets() const { return {&w_set, &x_set, &y_set, &z_set}; }

  void validate() const {
    std::set<std::string> seen;
    for (const auto* s : sets()) {
      for (const auto& e : *s) {
        if (!seen.insert(e).second) throw Error(Errc::invalid_parameter, "element '" + e + "' appears twice");
      }
    }
    for (const auto& q : hyperedges) {
      for (std::size_t i = 0; i < 4; ++i) {
        const auto& s = *sets()[i];
        if (std::find(s.begin(), s.end(), q[i]) == s.end()) {
          throw Error(Errc::invalid_parameter, "hyperedge component '" + q[i] + "' is not in its set");
        }
      }
    }
  }

  friend bool operator==(const Hypergraph4DM&, const Hypergraph4DM&) = default;
};

/// Adds a fresh fourth set of q elements and crosses it with every triple.
inline Hypergraph4DM lift_3dm_to_4dm(const std::vector<std::string>& x_set, const std::vector<std::string>& y_set,
                                     const std::vector<std::string>& z_set,
                                     const std::vector<std::array<std::string, 3>>& triples) {
  const std::size_t q = x_set.size();
  if (y_set.size() != q || z_set.size() != q) {
    throw Error(Errc::unbalanced_sets, "3DM sets must all have the same size");
  }
  std::set<std::string> taken(x_set.begin(), x_set.end());
  taken.insert(y_set.begin(), y_set.end());
  taken.insert(z_set.begin(), z_set.end());
  std::string prefix = "w";
  auto collides = [&] {
    for (std::size_t i = 1; i <= q; ++i) {
      if (taken.count(prefix + ":" + std::to_string(i))) return true;
    }
    return false;
  };
  while (collides()) prefix += "'";

  Hypergraph4DM out{{}, x_set, y_set, z_set, {}};
  for (std::size_t i = 1; i <= q; ++i) out.w_set.push_back(prefix + ":" + std::to_string(i));
  std::set<std::array<std::string, 3>> distinct;
  for (const auto& t : triples) {
    if (!distinct.insert(t).second) continue;
    for (const auto& w : out.w_set) out.hyperedges.push_back({w, t[0], t[1], t[2]});
  }
  out.validate();
  return out;
}

inline VertexId gadget_vertex_name(std::size_t hyperedge, const std::string& element, int level) {
  return "e" + std::to_string(hyperedge + 1) + ":" + element + ":" + std::to_string(level);
}

struct CoverReduction {
  BipartiteGraph graph;
  ReductionCertificate certificate;
};

/**
 * One exterior vertex per element and, per hyperedge e = (w,x,y,z), twelve
 * auxiliary vertices a_i^e with the 16 edges of the four exterior 4-cycles
 * (a, a_1, a_2, a_3) and the 12 edges of the three interior 4-cycles
 * (w_i, x_i, y_i, z_i). X and Z elements are left, W and Y elements right.
 */
inline CoverReduction reduce_4dm_to_4cycle_cover(const Hypergraph4DM& inst) {
  inst.validate();
  GraphBuilder builder;
  CoverReduction out;
  out.certificate.kind = "4dm-to-4cycle-cover";
  // Side of the exterior vertex per coordinate: W right, X left, Y right, Z left.
  constexpr std::array<Side, 4> exterior_side{Side::right, Side::left, Side::right, Side::left};
  const auto sets = inst.sets();
  for (std::size_t c = 0; c < 4; ++c) {
    for (const auto& e : *sets[c]) {
      builder.add_vertex(e, exterior_side[c]);
      out.certificate.vertex_map[e] = {e};
    }
  }
  for (std::size_t j = 0; j < inst.hyperedges.size(); ++j) {
    const auto& q = inst.hyperedges[j];
    auto& owned = out.certificate.gadget_map["e" + std::to_string(j + 1)];
    for (std::size_t c = 0; c < 4; ++c) {
      const Side outer = exterior_side[c];
      for (int i = 1; i <= 3; ++i) {
        const VertexId name = gadget_vertex_name(j, q[c], i);
        builder.add_vertex(name, i == 2 ? outer : opposite(outer));
        owned.push_back(name);
      }
      builder.add_edge(q[c], gadget_vertex_name(j, q[c], 1));
      builder.add_edge(gadget_vertex_name(j, q[c], 1), gadget_vertex_name(j, q[c], 2));
      builder.add_edge(gadget_vertex_name(j, q[c], 2), gadget_vertex_name(j, q[c], 3));
      builder.add_edge(gadget_vertex_name(j, q[c], 3), q[c]);
    }
    for (int i = 1; i <= 3; ++i) {
      for (std::size_t c = 0; c < 4; ++c) {
        builder.add_edge(gadget_vertex_name(j, q[c], i), gadget_vertex_name(j, q[(c + 1) % 4], i));
      }
    }
  }
  out.graph = builder.build();
  out.certificate.parameters = {{"elements", static_cast<long long>(out.certificate.vertex_map.size())},
                                {"hyperedges", static_cast<long long>(inst.hyperedges.size())},
                                {"vertices", static_cast<long long>(out.graph.num_vertices())},
                                {"edges", static_cast<long long>(out.graph.num_edges())}};
  return out;
}

/// Exhaustive subset search; returns the indices of a perfect 4D matching.
inline std::optional<std::vector<std::size_t>> brute_4dm(const Hypergraph4DM& inst,
                                                         std::size_t cap = kDefault4dmCap) {
  const std::size_t m = inst.hyperedges.size();
  if (m > cap || m >= 63) throw Error(Errc::cap_exceeded, "4DM search limited to " + std::to_string(cap) + " hyperedges");
  const std::size_t q = inst.w_set.size();
  if (inst.x_set.size() != q || inst.y_set.size() != q || inst.z_set.size() != q) return std::nullopt;
  std::map<std::string, int> element_index;
  for (const auto* s : inst.sets()) {
    for (const auto& e : *s) element_index.emplace(e, static_cast<int>(element_index.size()));
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != q) continue;
    std::vector<int> hits(element_index.size());
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) {
      if (!(mask >> j & 1U)) continue;
      for (const auto& e : inst.hyperedges[j]) ok = ok && ++hits[static_cast<std::size_t>(element_index.at(e))] == 1;
    }
    if (!ok) continue;
    std::vector<std::size_t> chosen;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask >> j & 1U) chosen.push_back(j);
    }
    return chosen;
  }
  return std::nullopt;
}

/// Backtracking over the smallest uncovered vertex; returns 4-cycles that
/// cover every vertex exactly once.
inline std::optional<std::vector<Cycle>> has_4cycle_cover(const BipartiteGraph& g,
                                                          std::size_t cap = kDefaultCoverCap) {
  const std::size_t n = g.num_vertices();
  if (n > cap) throw Error(Errc::cap_exceeded, "cover search limited to " + std::to_string(cap) + " vertices");
  if (n % 4 != 0) return std::nullopt;
  std::vector<char> covered(n);
  std::vector<std::array<int, 4>> chosen;
  std::function<bool(std::size_t)> search = [&](std::size_t from) -> bool {
    while (from < n && covered[from]) ++from;
    if (from == n) return true;
    const int u = static_cast<int>(from);
    const auto nbrs = g.neighbors(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const int x = nbrs[i];
      if (covered[static_cast<std::size_t>(x)]) continue;
      for (std::size_t k = i + 1; k < nbrs.size(); ++k) {
        const int z = nbrs[k];
        if (covered[static_cast<std::size_t>(z)]) continue;
        for (int y : g.neighbors(x)) {
          if (y == u || covered[static_cast<std::size_t>(y)] || !g.has_edge(y, z)) continue;
          for (int v : {u, x, y, z}) covered[static_cast<std::size_t>(v)] = 1;
          chosen.push_back({u, x, y, z});
          if (search(from + 1)) return true;
          chosen.pop_back();
          for (int v : {u, x, y, z}) covered[static_cast<std::size_t>(v)] = 0;
        }
      }
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  std::vector<Cycle> out;
  for (const auto& c : chosen) out.emplace_back(g, std::vector<int>(c.begin(), c.end()));
  return out;
}

}  // namespace pmdiam
