#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pmdiam/error.hpp"
#include "pmdiam/graph.hpp"

namespace pmdiam {

inline constexpr std::size_t kDefaultMatchingCap = 1'000'000;

/// Perfect matching of a specific BipartiteGraph, stored as a mate array.
class PerfectMatching {
 public:
  PerfectMatching() = default;

  /// Validates that `mate` is an involution without fixed points whose pairs
  /// are graph edges.
  PerfectMatching(const BipartiteGraph& g, std::vector<int> mate) : mate_(std::move(mate)) {
    const int n = static_cast<int>(g.num_vertices());
    if (static_cast<int>(mate_.size()) != n) {
      throw Error(Errc::invalid_parameter, "mate array size does not match the graph");
    }
    for (int v = 0; v < n; ++v) {
      const int u = mate_[v];
      if (u < 0 || u >= n || u == v || mate_[u] != v) {
        throw Error(Errc::invalid_parameter, "vertex '" + g.name(v) + "' is not matched exactly once");
      }
      if (!g.has_edge(u, v)) {
        throw Error(Errc::invalid_parameter,
                    "pair {" + g.name(v) + "," + g.name(u) + "} is not a graph edge");
      }
    }
  }

  static PerfectMatching from_named_edges(const BipartiteGraph& g, const std::vector<NamedEdge>& edges) {
    std::vector<int> mate(g.num_vertices(), -1);
    for (const auto& [a, b] : edges) {
      const int u = g.index_of(a);
      const int v = g.index_of(b);
      if (mate[u] != -1 || mate[v] != -1) {
        throw Error(Errc::invalid_parameter, "edge {" + a + "," + b + "} reuses a matched vertex");
      }
      mate[u] = v;
      mate[v] = u;
    }
    return PerfectMatching(g, std::move(mate));
  }

  int mate(int v) const { return mate_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& mates() const { return mate_; }
  std::size_t num_vertices() const { return mate_.size(); }

  bool contains(int u, int v) const { return mate(u) == v; }

  /// Matching edges sorted by left endpoint index.
  std::vector<Edge> edges(const BipartiteGraph& g) const {
    std::vector<Edge> out;
    for (int v = 0; v < static_cast<int>(mate_.size()); ++v) {
      if (g.side(v) == Side::left) out.push_back({v, mate_[v]});
    }
    return out;
  }

  std::vector<NamedEdge> named_edges(const BipartiteGraph& g) const {
    std::vector<NamedEdge> out;
    for (const auto& e : edges(g)) out.emplace_back(g.name(e.left), g.name(e.right));
    return out;
  }

  friend bool operator==(const PerfectMatching&, const PerfectMatching&) = default;
  friend auto operator<=>(const PerfectMatching&, const PerfectMatching&) = default;

 private:
  std::vector<int> mate_;
};

struct PerfectMatchingHash {
  std::size_t operator()(const PerfectMatching& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : m.mates()) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
    return h;
  }
};

/**
 * Simple cycle of a bipartite graph in canonical form: rotated so the
 * smallest vertex comes first, oriented toward the smaller of its two
 * neighbours on the cycle.
 */
class Cycle {
 public:
  Cycle() = default;

  Cycle(const BipartiteGraph& g, std::vector<int> vertices) : vertices_(std::move(vertices)) {
    const std::size_t k = vertices_.size();
    if (k < 4 || k % 2 != 0) {
      throw Error(Errc::invalid_parameter, "cycle length " + std::to_string(k) + " is not even and >= 4");
    }
    std::vector<int> sorted = vertices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(Errc::invalid_parameter, "cycle repeats a vertex");
    }
    for (std::size_t i = 0; i < k; ++i) {
      const int u = vertices_[i];
      const int v = vertices_[(i + 1) % k];
      if (u < 0 || v < 0 || u >= static_cast<int>(g.num_vertices()) ||
          v >= static_cast<int>(g.num_vertices()) || !g.has_edge(u, v)) {
        throw Error(Errc::invalid_parameter, "consecutive cycle vertices are not adjacent");
      }
    }
    canonicalize();
  }

  static Cycle from_names(const BipartiteGraph& g, const std::vector<VertexId>& names) {
    std::vector<int> ids;
    ids.reserve(names.size());
    for (const auto& n : names) ids.push_back(g.index_of(n));
    return Cycle(g, std::move(ids));
  }

  const std::vector<int>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  std::vector<VertexId> names(const BipartiteGraph& g) const {
    std::vector<VertexId> out;
    for (int v : vertices_) out.push_back(g.name(v));
    return out;
  }

  /// The i-th edge joins vertices()[i] and vertices()[i+1] (cyclically).
  std::pair<int, int> edge_at(std::size_t i) const {
    return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
  }

  bool contains_vertex(int v) const {
    return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
  }

  bool contains_edge(int u, int v) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      auto [a, b] = edge_at(i);
      if ((a == u && b == v) || (a == v && b == u)) return true;
    }
    return false;
  }

  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle&, const Cycle&) = default;

 private:
  void canonicalize() {
    auto first = std::min_element(vertices_.begin(), vertices_.end());
    std::rotate(vertices_.begin(), first, vertices_.end());
    if (vertices_.back() < vertices_[1]) std::reverse(vertices_.begin() + 1, vertices_.end());
  }

  std::vector<int> vertices_;
};

/// Calls `visit` for every perfect matching in enumeration order: the smallest
/// uncovered left vertex is matched first, right neighbours are tried in
/// ascending order. Stops early once `visit` returns false.
inline void for_each_perfect_matching(const BipartiteGraph& g,
                                      const std::function<bool(const std::vector<int>&)>& visit) {
  const auto left = g.vertices_on(Side::left);
  if (left.size() * 2 != g.num_vertices()) return;
  std::vector<int> mate(g.num_vertices(), -1);
  bool stop = false;
  std::function<void(std::size_t)> recurse = [&](std::size_t depth) {
    if (stop) return;
    if (depth == left.size()) {
      if (!visit(mate)) stop = true;
      return;
    }
    const int u = left[depth];
    for (int r : g.neighbors(u)) {
      if (mate[r] != -1) continue;
      mate[u] = r;
      mate[r] = u;
      recurse(depth + 1);
      mate[u] = -1;
      mate[r] = -1;
      if (stop) return;
    }
  };
  recurse(0);
}

inline std::vector<PerfectMatching> enumerate_perfect_matchings(const BipartiteGraph& g,
                                                                std::size_t cap = kDefaultMatchingCap) {
  std::vector<PerfectMatching> out;
  for_each_perfect_matching(g, [&](const std::vector<int>& mate) {
    if (out.size() >= cap) {
      throw Error(Errc::cap_exceeded, "more than " + std::to_string(cap) + " perfect matchings");
    }
    out.emplace_back(g, mate);
    return true;
  });
  return out;
}

/// Augmenting-path (Kuhn) search for one perfect matching.
inline std::optional<PerfectMatching> find_perfect_matching(const BipartiteGraph& g) {
  const auto left = g.vertices_on(Side::left);
  if (left.size() * 2 != g.num_vertices()) return std::nullopt;
  std::vector<int> mate(g.num_vertices(), -1);
  std::vector<char> seen(g.num_vertices());
  std::function<bool(int)> augment = [&](int u) -> bool {
    for (int r : g.neighbors(u)) {
      if (seen[r]) continue;
      seen[r] = 1;
      if (mate[r] == -1 || augment(mate[r])) {
        mate[u] = r;
        mate[r] = u;
        return true;
      }
    }
    return false;
  };
  for (int u : left) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(u)) return std::nullopt;
  }
  return PerfectMatching(g, std::move(mate));
}

/// Number of cycles in m1 Δ m2, computed from the mate arrays alone.
inline int count_symmetric_difference_cycles(const PerfectMatching& m1, const PerfectMatching& m2) {
  const auto& a = m1.mates();
  const auto& b = m2.mates();
  std::vector<char> seen(a.size());
  int cycles = 0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (seen[s] || a[s] == b[s]) continue;
    ++cycles;
    int v = static_cast<int>(s);
    bool use_first = true;
    while (!seen[v]) {
      seen[v] = 1;
      v = use_first ? a[v] : b[v];
      use_first = !use_first;
    }
  }
  return cycles;
}

/// Vertex-disjoint cycles whose edge union is m1 Δ m2, ordered by their
/// smallest vertex.
inline std::vector<Cycle> symmetric_difference_cycles(const BipartiteGraph& g, const PerfectMatching& m1,
                                                      const PerfectMatching& m2) {
  const auto& a = m1.mates();
  const auto& b = m2.mates();
  std::vector<char> seen(a.size());
  std::vector<Cycle> out;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (seen[s] || a[s] == b[s]) continue;
    std::vector<int> verts;
    int v = static_cast<int>(s);
    bool use_first = true;
    while (!seen[v]) {
      seen[v] = 1;
      verts.push_back(v);
      v = use_first ? a[v] : b[v];
      use_first = !use_first;
    }
    out.emplace_back(g, std::move(verts));
  }
  return out;
}

/// True iff one parity class of c's edges lies entirely in m.
inline bool is_alternating(const PerfectMatching& m, const Cycle& c) {
  bool even_in = true;
  bool odd_in = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto [u, v] = c.edge_at(i);
    const bool in = m.contains(u, v);
    if (i % 2 == 0) {
      even_in = even_in && in;
    } else {
      odd_in = odd_in && in;
    }
  }
  return even_in || odd_in;
}

inline PerfectMatching flip(const BipartiteGraph& g, const PerfectMatching& m, const Cycle& c) {
  if (!is_alternating(m, c)) throw Error(Errc::not_alternating, "cycle is not alternating for the matching");
  std::vector<int> mate = m.mates();
  const auto [u0, v0] = c.edge_at(0);
  const std::size_t offset = m.contains(u0, v0) ? 1 : 0;
  for (std::size_t i = offset; i < c.size(); i += 2) {
    auto [u, v] = c.edge_at(i);
    mate[u] = v;
    mate[v] = u;
  }
  return PerfectMatching(g, std::move(mate));
}

inline bool adjacent(const PerfectMatching& m1, const PerfectMatching& m2) {
  return count_symmetric_difference_cycles(m1, m2) == 1;
}

/// Random m-alternating cycle found by randomized DFS from a random left
/// vertex, or nullopt when m has no alternating cycle at all.
template <class Rng>
std::optional<Cycle> random_alternating_cycle(const BipartiteGraph& g, const PerfectMatching& m, Rng& rng) {
  auto left = g.vertices_on(Side::left);
  std::shuffle(left.begin(), left.end(), rng);
  for (int start : left) {
    // path holds left vertices l0, l1, ...; step l -> r (non-matching) -> mate(r).
    std::vector<int> path{start};
    std::vector<char> on_path(g.num_vertices());
    on_path[start] = 1;
    std::vector<char> dead(g.num_vertices());
    std::vector<std::vector<int>> options;
    auto choices = [&](int l) {
      std::vector<int> rs;
      for (int r : g.neighbors(l)) {
        if (m.mate(l) != r) rs.push_back(r);
      }
      std::shuffle(rs.begin(), rs.end(), rng);
      return rs;
    };
    options.push_back(choices(start));
    while (!path.empty()) {
      if (options.back().empty()) {
        dead[path.back()] = 1;
        on_path[path.back()] = 0;
        path.pop_back();
        options.pop_back();
        continue;
      }
      const int r = options.back().back();
      options.back().pop_back();
      const int next = m.mate(r);
      if (next == start) {
        std::vector<int> verts;
        for (std::size_t i = 0; i < path.size(); ++i) {
          verts.push_back(path[i]);
          verts.push_back(i + 1 < path.size() ? m.mate(path[i + 1]) : r);
        }
        return Cycle(g, std::move(verts));
      }
      if (on_path[next] || dead[next]) continue;
      on_path[next] = 1;
      path.push_back(next);
      options.push_back(choices(next));
    }
  }
  return std::nullopt;
}

/// Random perfect matching: start from an augmenting-path matching and flip
/// `steps` random alternating cycles.
template <class Rng>
std::optional<PerfectMatching> random_perfect_matching(const BipartiteGraph& g, Rng& rng, int steps = -1) {
  auto m = find_perfect_matching(g);
  if (!m) return std::nullopt;
  if (steps < 0) steps = static_cast<int>(g.num_vertices());
  for (int i = 0; i < steps; ++i) {
    auto c = random_alternating_cycle(g, *m, rng);
    if (!c) break;
    m = flip(g, *m, *c);
  }
  return m;
}

}  // namespace pmdiam
