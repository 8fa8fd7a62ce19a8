#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pmdiam/error.hpp"
#include "pmdiam/gadgets.hpp"
#include "pmdiam/graph.hpp"
#include "pmdiam/matching.hpp"
#include "pmdiam/skeleton.hpp"

namespace pmdiam {

/// Ordered cycles C_1..C_l; flipping them in order walks the skeleton.
struct FlipSequence {
  std::vector<Cycle> cycles;

  std::size_t size() const { return cycles.size(); }

  friend bool operator==(const FlipSequence&, const FlipSequence&) = default;
};

inline FlipSequence reversed(FlipSequence seq) {
  std::reverse(seq.cycles.begin(), seq.cycles.end());
  return seq;
}

inline FlipSequence concat(const FlipSequence& a, const FlipSequence& b) {
  FlipSequence out = a;
  out.cycles.insert(out.cycles.end(), b.cycles.begin(), b.cycles.end());
  return out;
}

struct VerifyResult {
  bool ok = true;
  std::optional<std::size_t> failed_index;  // 1-based index of the first non-alternating cycle
  std::string reason;

  explicit operator bool() const { return ok; }
};

inline VerifyResult verify_flip_sequence(const BipartiteGraph& g, const PerfectMatching& m1, const FlipSequence& seq,
                                         const PerfectMatching& m2) {
  PerfectMatching running = m1;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!is_alternating(running, seq.cycles[i])) {
      return {false, i + 1, "cycle " + std::to_string(i + 1) + " is not alternating"};
    }
    running = flip(g, running, seq.cycles[i]);
  }
  if (running != m2) return {false, std::nullopt, "final matching differs from the target"};
  return {};
}

namespace detail {

inline const SplitOrigin& require_origin(const ToweredGraph& tg) {
  if (!tg.origin) throw Error(Errc::wrong_origin, "graph was not built by build_GH");
  return *tg.origin;
}

/// Replaces the base edge {v,w} of a contracted-graph cycle by the tower path P_k.
inline Cycle lift_cycle(const BipartiteGraph& contracted, const Cycle& c, const BipartiteGraph& g,
                        const TowerDescriptor& tower, int k) {
  const auto names = c.names(contracted);
  const std::size_t n = names.size();
  const auto pv = std::find(names.begin(), names.end(), tower.v) - names.begin();
  const auto pw = std::find(names.begin(), names.end(), tower.w) - names.begin();
  const bool forward_is_v = names[(static_cast<std::size_t>(pw) + 1) % n] == tower.v;
  std::vector<VertexId> seq;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t idx = forward_is_v ? (static_cast<std::size_t>(pw) + n - step) % n
                                         : (static_cast<std::size_t>(pw) + step) % n;
    seq.push_back(names[idx]);
  }
  if (seq.back() != names[static_cast<std::size_t>(pv)]) {
    throw Error(Errc::precondition_violation, "base cycle does not use the edge {v,w}");
  }
  const auto path = tower_path(tower, k);
  seq.insert(seq.end(), path.begin() + 1, path.end() - 1);
  return Cycle::from_names(g, seq);
}

}  // namespace detail

/// Takes every other edge along each towered {v_1,v_2} chain, starting at
/// v_1, and the rungs {a_i,b_i}, i >= 1, of every tower.
inline PerfectMatching aux_matching(const ToweredGraph& tg) {
  const auto& origin = detail::require_origin(tg);
  std::vector<NamedEdge> edges;
  for (const auto& [v, chain] : origin.chains) {
    const auto& [v1, v2] = origin.copies.at(v);
    VertexId lower = v1;
    for (int k : chain) {
      const auto& t = tg.towers.at(static_cast<std::size_t>(k));
      edges.emplace_back(lower, t.a[0]);
      lower = t.b[0];
      for (int i = 1; i <= t.height; ++i) edges.emplace_back(t.a[i], t.b[i]);
    }
    edges.emplace_back(lower, v2);
  }
  return PerfectMatching::from_named_edges(tg.graph, edges);
}

/// Flips the cycles of m Δ aux_matching that meet a split copy v_1 or v_2.
inline std::pair<PerfectMatching, FlipSequence> normalize_to_aux(const ToweredGraph& tg, const PerfectMatching& m) {
  const auto& origin = detail::require_origin(tg);
  const auto aux = aux_matching(tg);
  std::vector<char> is_copy(tg.graph.num_vertices());
  for (const auto& [v, copies] : origin.copies) {
    is_copy[static_cast<std::size_t>(tg.graph.index_of(copies.first))] = 1;
    is_copy[static_cast<std::size_t>(tg.graph.index_of(copies.second))] = 1;
  }
  FlipSequence seq;
  PerfectMatching running = m;
  for (const auto& c : symmetric_difference_cycles(tg.graph, m, aux)) {
    const bool meets = std::any_of(c.vertices().begin(), c.vertices().end(),
                                   [&](int v) { return is_copy[static_cast<std::size_t>(v)] != 0; });
    if (!meets) continue;
    running = flip(tg.graph, running, c);
    seq.cycles.push_back(c);
  }
  return {std::move(running), std::move(seq)};
}

/**
 * Extends a length-2h flip sequence of the tower-contracted graph, whose
 * cycles all use the base edge, to a length-2h flip sequence from m1 to m2 in
 * the towered graph `g`. Cycle i has the base edge replaced by P_{k_i}, where
 * k runs through H(m1) ascending, then H(m2) descending, then 0 as padding.
 * Base cycles must be expressed over contract_tower(g, tower).
 */
inline FlipSequence extend_over_tower(const BipartiteGraph& g, const TowerDescriptor& tower,
                                      const FlipSequence& base_seq, const PerfectMatching& m1,
                                      const PerfectMatching& m2) {
  const int h = tower.height;
  if (base_seq.size() != static_cast<std::size_t>(2 * h)) {
    throw Error(Errc::precondition_violation, "base sequence length " + std::to_string(base_seq.size()) +
                                                  " differs from 2h = " + std::to_string(2 * h));
  }
  const BipartiteGraph contracted = contract_tower(g, tower);
  const PerfectMatching base1 = contract_matching(g, contracted, tower, m1);
  const PerfectMatching base2 = contract_matching(g, contracted, tower, m2);
  const int v = contracted.index_of(tower.v);
  const int w = contracted.index_of(tower.w);
  for (std::size_t i = 0; i < base_seq.size(); ++i) {
    if (!base_seq.cycles[i].contains_edge(v, w)) {
      throw Error(Errc::precondition_violation, "base cycle " + std::to_string(i + 1) + " misses the base edge");
    }
  }
  if (auto r = verify_flip_sequence(contracted, base1, base_seq, base2); !r) {
    throw Error(Errc::precondition_violation, "base sequence is not a flip sequence between the contracted matchings: " +
                                                  r.reason);
  }

  std::vector<int> schedule = horizontal_indices(g, tower, m1);
  const auto h2 = horizontal_indices(g, tower, m2);
  schedule.insert(schedule.end(), h2.rbegin(), h2.rend());
  schedule.resize(static_cast<std::size_t>(2 * h), 0);

  FlipSequence out;
  for (std::size_t i = 0; i < base_seq.size(); ++i) {
    out.cycles.push_back(detail::lift_cycle(contracted, base_seq.cycles[i], g, tower, schedule[i]));
  }
  return out;
}

/// Extensions of base1, base2 (matchings of contract_tower(g, tower) that use
/// the base edge) that are far apart inside the tower: the first takes every
/// rung 1..h, the second replaces the top two rungs by rail edges.
inline std::pair<PerfectMatching, PerfectMatching> far_matchings(const BipartiteGraph& g, const TowerDescriptor& tower,
                                                                 const PerfectMatching& base1,
                                                                 const PerfectMatching& base2) {
  const int h = tower.height;
  if (h < 2) throw Error(Errc::invalid_height, "far matchings need tower height >= 2");
  const BipartiteGraph contracted = contract_tower(g, tower);
  std::vector<NamedEdge> inner1, inner2;
  for (int i = 1; i <= h; ++i) inner1.emplace_back(tower.a[i], tower.b[i]);
  for (int i = 1; i <= h - 2; ++i) inner2.emplace_back(tower.a[i], tower.b[i]);
  inner2.emplace_back(tower.a[h - 1], tower.a[h]);
  inner2.emplace_back(tower.b[h - 1], tower.b[h]);
  return {expand_matching(contracted, g, tower, base1, inner1), expand_matching(contracted, g, tower, base2, inner2)};
}

/// Validates a Hamiltonian cycle given as a vertex order of a simple graph.
inline bool is_hamiltonian_cycle(const SimpleGraph& h, const std::vector<VertexId>& order) {
  const std::size_t n = h.num_vertices();
  if (n < 3 || order.size() != n) return false;
  std::vector<char> seen(n);
  std::vector<int> ids;
  for (const auto& name : order) {
    auto id = h.find(name);
    if (!id || seen[static_cast<std::size_t>(*id)]) return false;
    seen[static_cast<std::size_t>(*id)] = 1;
    ids.push_back(*id);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!h.has_edge(ids[i], ids[(i + 1) % n])) return false;
  }
  return true;
}

/**
 * Flip sequence from m1 to m2 in G_H of length at most 2h + 4n: normalize m1,
 * carry 2h copies of the lifted Hamiltonian cycle through every tower in
 * construction order, then undo the normalization of m2.
 */
inline FlipSequence hamiltonian_upper_walk(const ToweredGraph& tg, const std::vector<VertexId>& ham_cycle,
                                           const PerfectMatching& m1, const PerfectMatching& m2) {
  const auto& origin = detail::require_origin(tg);
  if (!is_hamiltonian_cycle(origin.source, ham_cycle)) {
    throw Error(Errc::not_hamiltonian, "vertex order is not a Hamiltonian cycle of the source graph");
  }
  const int h = origin.height;
  auto [n1, prefix] = normalize_to_aux(tg, m1);
  auto [n2, suffix] = normalize_to_aux(tg, m2);

  // graphs[j] keeps towers 0..j-1; tower j-1 is the last one in its graph.
  const std::size_t k = tg.towers.size();
  std::vector<ToweredGraph> graphs(k + 1);
  std::vector<PerfectMatching> lower1(k + 1), lower2(k + 1);
  graphs[k] = tg;
  lower1[k] = n1;
  lower2[k] = n2;
  for (std::size_t j = k; j >= 1; --j) {
    const auto& t = graphs[j].towers[j - 1];
    graphs[j - 1] = contract_tower(graphs[j], j - 1);
    lower1[j - 1] = contract_matching(graphs[j].graph, graphs[j - 1].graph, t, lower1[j]);
    lower2[j - 1] = contract_matching(graphs[j].graph, graphs[j - 1].graph, t, lower2[j]);
  }

  std::vector<VertexId> lifted;
  for (const auto& v : ham_cycle) {
    lifted.push_back(origin.copies.at(v).first);
    lifted.push_back(origin.copies.at(v).second);
  }
  FlipSequence middle;
  const Cycle base = Cycle::from_names(graphs[0].graph, lifted);
  middle.cycles.assign(static_cast<std::size_t>(2 * h), base);
  for (std::size_t j = 1; j <= k; ++j) {
    middle = extend_over_tower(graphs[j].graph, graphs[j].towers[j - 1], middle, lower1[j], lower2[j]);
  }

  FlipSequence walk = concat(concat(prefix, middle), reversed(suffix));
  if (auto r = verify_flip_sequence(tg.graph, m1, walk, m2); !r) {
    throw std::logic_error("assembled Hamiltonian walk failed verification: " + r.reason);
  }
  return walk;
}

inline int min_flip_distance(const BipartiteGraph& g, const PerfectMatching& m1, const PerfectMatching& m2,
                             std::size_t cap = kDefaultMatchingCap) {
  const auto s = build_skeleton(g, cap);
  const auto from = s.find(m1);
  const auto to = s.find(m2);
  if (!from || !to) throw Error(Errc::invalid_parameter, "matching not found among perfect matchings");
  const int d = bfs_distances(s.adjacency, *from)[static_cast<std::size_t>(*to)];
  if (d < 0) throw Error(Errc::disconnected_skeleton, "target unreachable");
  return d;
}

/**
 * Minimum number of tower-touching cycles over all flip sequences from m1 to
 * m2 that never flip a cycle lying inside the tower. 0-1 BFS over all perfect
 * matchings: touching moves cost 1, every other admissible move costs 0.
 */
inline int min_touching_flips(const BipartiteGraph& g, const TowerDescriptor& tower, const PerfectMatching& m1,
                              const PerfectMatching& m2, std::size_t cap = kDefaultMatchingCap) {
  const auto nodes = enumerate_perfect_matchings(g, cap);
  std::unordered_map<PerfectMatching, int, PerfectMatchingHash> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], static_cast<int>(i));
  auto find = [&](const PerfectMatching& m) {
    auto it = index.find(m);
    if (it == index.end()) throw Error(Errc::invalid_parameter, "matching not found among perfect matchings");
    return it->second;
  };
  const int source = find(m1);
  const int target = find(m2);

  const auto t = resolve(g, tower);
  std::vector<char> in_tower(g.num_vertices());
  for (int x : t.a) in_tower[static_cast<std::size_t>(x)] = 1;
  for (int x : t.b) in_tower[static_cast<std::size_t>(x)] = 1;

  // -1: forbidden (inside tower), 0: free, 1: touching. Assumes one Δ-cycle.
  auto move_weight = [&](const PerfectMatching& x, const PerfectMatching& y) {
    bool inside = true;
    for (std::size_t v = 0; v < x.num_vertices(); ++v) {
      if (x.mates()[v] != y.mates()[v] && !in_tower[v]) inside = false;
    }
    if (inside) return -1;
    const bool left_boundary = x.contains(t.v, t.a[0]) != y.contains(t.v, t.a[0]);
    const bool right_boundary = x.contains(t.w, t.b[0]) != y.contains(t.w, t.b[0]);
    return left_boundary && right_boundary ? 1 : 0;
  };

  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> dist(nodes.size(), kInf);
  std::vector<char> done(nodes.size());
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (done[static_cast<std::size_t>(u)]) continue;
    done[static_cast<std::size_t>(u)] = 1;
    if (u == target) return dist[static_cast<std::size_t>(u)];
    const auto& mu = nodes[static_cast<std::size_t>(u)];
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (done[j] || !adjacent(mu, nodes[j])) continue;
      const int wgt = move_weight(mu, nodes[j]);
      if (wgt < 0) continue;
      const int nd = dist[static_cast<std::size_t>(u)] + wgt;
      if (nd < dist[j]) {
        dist[j] = nd;
        if (wgt == 0) {
          queue.push_front(static_cast<int>(j));
        } else {
          queue.push_back(static_cast<int>(j));
        }
      }
    }
  }
  throw Error(Errc::unreachable, "every flip sequence needs a cycle inside the tower");
}

}  // namespace pmdiam
