#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <vector>

#include "pmdiam/error.hpp"
#include "pmdiam/graph.hpp"
#include "pmdiam/matching.hpp"

namespace pmdiam {

/// 1-skeleton of the perfect matching polytope: one node per perfect
/// matching (enumeration order), an edge per pair whose symmetric difference
/// is a single cycle.
struct SkeletonGraph {
  BipartiteGraph graph;
  std::vector<PerfectMatching> nodes;
  std::vector<std::vector<int>> adjacency;

  std::size_t num_edges() const {
    std::size_t total = 0;
    for (const auto& nbrs : adjacency) total += nbrs.size();
    return total / 2;
  }

  std::optional<int> find(const PerfectMatching& m) const {
    auto it = std::find(nodes.begin(), nodes.end(), m);
    if (it == nodes.end()) return std::nullopt;
    return static_cast<int>(it - nodes.begin());
  }
};

struct CostFunction {
  std::vector<long long> weights;  // indexed by edge id

  long long cost(const BipartiteGraph& g, const PerfectMatching& m) const {
    long long total = 0;
    for (const auto& e : m.edges(g)) total += weights.at(static_cast<std::size_t>(*g.edge_index(e.left, e.right)));
    return total;
  }
};

inline SkeletonGraph build_skeleton(const BipartiteGraph& g, std::size_t cap = kDefaultMatchingCap) {
  SkeletonGraph s{g, enumerate_perfect_matchings(g, cap), {}};
  if (s.nodes.empty()) throw Error(Errc::no_perfect_matching, "graph has no perfect matching");
  s.adjacency.assign(s.nodes.size(), {});
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < s.nodes.size(); ++j) {
      if (adjacent(s.nodes[i], s.nodes[j])) {
        s.adjacency[i].push_back(static_cast<int>(j));
        s.adjacency[j].push_back(static_cast<int>(i));
      }
    }
  }
  for (auto& nbrs : s.adjacency) std::sort(nbrs.begin(), nbrs.end());
  return s;
}

/// BFS distances from `source`; -1 marks unreachable nodes.
inline std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adjacency, int source) {
  std::vector<int> dist(adjacency.size(), -1);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : adjacency[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] == -1) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline int diameter(const SkeletonGraph& s) {
  if (s.nodes.empty()) throw Error(Errc::no_perfect_matching, "empty skeleton");
  int best = 0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    for (int d : bfs_distances(s.adjacency, static_cast<int>(i))) {
      if (d < 0) throw Error(Errc::disconnected_skeleton, "skeleton is disconnected");
      best = std::max(best, d);
    }
  }
  return best;
}

/// Maximum number of cycles in the symmetric difference of two perfect
/// matchings, which equals the monotone diameter of the matching polytope.
inline int monotone_diameter(const BipartiteGraph& g, std::size_t cap = kDefaultMatchingCap) {
  const auto nodes = enumerate_perfect_matchings(g, cap);
  if (nodes.empty()) throw Error(Errc::no_perfect_matching, "graph has no perfect matching");
  int best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      best = std::max(best, count_symmetric_difference_cycles(nodes[i], nodes[j]));
    }
  }
  return best;
}

/// Costs 0 on mstar, 1 on m \ mstar and |V| elsewhere.
inline CostFunction witness_cost_function(const BipartiteGraph& g, const PerfectMatching& m,
                                          const PerfectMatching& mstar) {
  CostFunction c;
  c.weights.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    if (mstar.contains(e.left, e.right)) {
      c.weights.push_back(0);
    } else if (m.contains(e.left, e.right)) {
      c.weights.push_back(1);
    } else {
      c.weights.push_back(static_cast<long long>(g.num_vertices()));
    }
  }
  return c;
}

/// Shortest path from `start` to a c-optimal node that never increases the
/// cost, by BFS on the directed monotone skeleton.
inline int monotone_distance(const SkeletonGraph& s, const CostFunction& c, int start) {
  if (start < 0 || static_cast<std::size_t>(start) >= s.nodes.size()) {
    throw Error(Errc::index_out_of_range, "start is not a skeleton node");
  }
  std::vector<long long> cost;
  cost.reserve(s.nodes.size());
  for (const auto& m : s.nodes) cost.push_back(c.cost(s.graph, m));
  const long long optimum = *std::min_element(cost.begin(), cost.end());

  std::vector<int> dist(s.nodes.size(), -1);
  std::deque<int> queue{start};
  dist[static_cast<std::size_t>(start)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (cost[static_cast<std::size_t>(u)] == optimum) return dist[static_cast<std::size_t>(u)];
    for (int w : s.adjacency[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(w)] == -1 && cost[static_cast<std::size_t>(w)] <= cost[static_cast<std::size_t>(u)]) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  throw Error(Errc::unreachable_optimum, "no monotone path reaches a c-optimal node");
}

}  // namespace pmdiam
