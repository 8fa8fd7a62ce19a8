#pragma once

// Shared fixtures: named standard graphs, seeded random instances and the
// exhaustive small-graph catalog used by the unit and acceptance suites.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pmdiam/pmdiam.hpp"

namespace pmdiam::testing {

/// Code of the pmdiam::Error thrown by f, or nullopt when f returns normally.
template <class F>
std::optional<Errc> error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::string lname(int i) { return "u" + std::to_string(i); }
inline std::string rname(int i) { return "w" + std::to_string(i); }

/// Bipartite graph on u0..u{nl-1} / w0..w{nr-1} from index pairs.
inline BipartiteGraph bipartite(int nl, int nr, const std::vector<std::pair<int, int>>& edges) {
  std::vector<VertexId> left, right;
  for (int i = 0; i < nl; ++i) left.push_back(lname(i));
  for (int i = 0; i < nr; ++i) right.push_back(rname(i));
  std::vector<NamedEdge> named;
  for (auto [a, b] : edges) named.emplace_back(lname(a), rname(b));
  return BipartiteGraph(left, right, named);
}

inline BipartiteGraph complete_bipartite(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) edges.emplace_back(i, j);
  }
  return bipartite(n, n, edges);
}

inline BipartiteGraph k2() { return bipartite(1, 1, {{0, 0}}); }

/// Even cycle C_{2k}: u_i - w_i - u_{i+1}.
inline BipartiteGraph even_cycle(int k) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) {
    edges.emplace_back(i, i);
    edges.emplace_back((i + 1) % k, i);
  }
  return bipartite(k, k, edges);
}

inline PerfectMatching matching_of(const BipartiteGraph& g, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<NamedEdge> named;
  for (auto [a, b] : pairs) named.emplace_back(lname(a), rname(b));
  return PerfectMatching::from_named_edges(g, named);
}

/// Identity matching u_i - w_i.
inline PerfectMatching identity_matching(const BipartiteGraph& g, int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace_back(i, i);
  return matching_of(g, pairs);
}

inline SimpleGraph simple_cycle(int n) {
  std::vector<VertexId> vs;
  std::vector<NamedEdge> es;
  for (int i = 0; i < n; ++i) vs.push_back("h" + std::to_string(i));
  for (int i = 0; i < n; ++i) es.emplace_back(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>((i + 1) % n)]);
  return SimpleGraph(vs, es);
}

inline SimpleGraph triangle() { return simple_cycle(3); }

inline SimpleGraph petersen() {
  std::vector<VertexId> vs;
  for (int i = 0; i < 10; ++i) vs.push_back("p" + std::to_string(i));
  std::vector<NamedEdge> es;
  for (int i = 0; i < 5; ++i) {
    es.emplace_back(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>((i + 1) % 5)]);
    es.emplace_back(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(i + 5)]);
    es.emplace_back(vs[static_cast<std::size_t>(5 + i)], vs[static_cast<std::size_t>(5 + (i + 2) % 5)]);
  }
  return SimpleGraph(vs, es);
}

/// Random balanced bipartite graph on 2k vertices containing a planted
/// perfect matching, with each further edge present with probability p.
template <class Rng>
BipartiteGraph random_graph_with_matching(int k, double p, Rng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (perm[static_cast<std::size_t>(i)] == j || coin(rng)) edges.emplace_back(i, j);
    }
  }
  return bipartite(k, k, edges);
}

/// Uniformly random perfect matching among all enumerated ones.
template <class Rng>
PerfectMatching random_enumerated_matching(const std::vector<PerfectMatching>& all, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

/**
 * Every bipartite graph on at most 8 vertices that has a perfect matching,
 * up to isomorphism. A graph with a perfect matching is balanced, so these
 * are the subgraphs of K_{k,k}, k <= 4, without isolated vertices (isolated
 * vertices rule out a perfect matching). Isomorphism is decided by a
 * canonical form: the smallest sorted column-mask vector over all row
 * permutations of the biadjacency matrix and of its transpose.
 */
inline std::vector<BipartiteGraph> small_graph_catalog() {
  std::vector<BipartiteGraph> out;
  for (int k = 1; k <= 4; ++k) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    auto bit = [k](int i, int j) { return 1u << (i * k + j); };
    // Column permutations are absorbed by sorting the column bitmasks.
    auto canonical = [&](unsigned mask) {
      std::vector<unsigned> best;
      for (int transpose = 0; transpose < 2; ++transpose) {
        for (const auto& pr : perms) {
          std::vector<unsigned> cols(static_cast<std::size_t>(k), 0);
          for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
              const bool on = transpose ? (mask & bit(j, i)) : (mask & bit(i, j));
              if (on) cols[static_cast<std::size_t>(j)] |= 1u << pr[static_cast<std::size_t>(i)];
            }
          }
          std::sort(cols.begin(), cols.end());
          if (best.empty() || cols < best) best = cols;
        }
      }
      return best;
    };
    std::set<std::vector<unsigned>> seen;
    const unsigned total = 1u << (k * k);
    for (unsigned mask = 1; mask < total; ++mask) {
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          if (mask & bit(i, j)) edges.emplace_back(i, j);
        }
      }
      auto g = bipartite(k, k, edges);
      if (!find_perfect_matching(g)) continue;
      if (!seen.insert(canonical(mask)).second) continue;
      out.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace pmdiam::testing
