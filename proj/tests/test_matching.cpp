#include <gtest/gtest.h>

#include "support.hpp"

namespace pmdiam {
namespace {

using testing::complete_bipartite;
using testing::error_code;
using testing::even_cycle;
using testing::matching_of;

// u0-w1, u1-w0, u2-w3, u3-w2: two disjoint transpositions of the identity.
PerfectMatching double_swap(const BipartiteGraph& g) { return matching_of(g, {{0, 1}, {1, 0}, {2, 3}, {3, 2}}); }

TEST(PerfectMatching, ValidatesMates) {
  const auto g = even_cycle(2);
  EXPECT_EQ(error_code([&] { PerfectMatching(g, {1, 0, 3}); }), Errc::invalid_parameter);
  const int u0 = g.index_of("u0"), u1 = g.index_of("u1"), w0 = g.index_of("w0"), w1 = g.index_of("w1");
  std::vector<int> mate(4);
  mate[u0] = w0, mate[w0] = u0, mate[u1] = w1, mate[w1] = u1;
  EXPECT_NO_THROW(PerfectMatching(g, mate));
  mate[w1] = u0;  // not an involution
  EXPECT_THROW(PerfectMatching(g, mate), Error);
  // Non-edge u0-u1 is rejected even if involutive.
  std::vector<int> bad(4);
  bad[u0] = u1, bad[u1] = u0, bad[w0] = w1, bad[w1] = w0;
  EXPECT_THROW(PerfectMatching(g, bad), Error);
  EXPECT_THROW(PerfectMatching::from_named_edges(g, {{"u0", "w0"}}), Error);
  EXPECT_THROW(PerfectMatching::from_named_edges(g, {{"u0", "w0"}, {"u0", "w1"}}), Error);
}

TEST(Enumerate, KnownValues) {
  EXPECT_EQ(enumerate_perfect_matchings(testing::k2()).size(), 1u);
  EXPECT_EQ(enumerate_perfect_matchings(even_cycle(2)).size(), 2u);
  EXPECT_EQ(enumerate_perfect_matchings(complete_bipartite(3)).size(), 6u);
  EXPECT_EQ(enumerate_perfect_matchings(complete_bipartite(5)).size(), 120u);
}

TEST(Enumerate, MatchesEdgeSubsetBruteForce) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = testing::random_graph_with_matching(4, 0.45, rng);
    const std::size_t m = g.num_edges();
    std::set<std::vector<NamedEdge>> brute;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) != 4) continue;
      std::vector<int> deg(g.num_vertices());
      std::vector<NamedEdge> es;
      for (std::size_t e = 0; e < m; ++e) {
        if (!(mask >> e & 1u)) continue;
        ++deg[g.edge(static_cast<int>(e)).left];
        ++deg[g.edge(static_cast<int>(e)).right];
        es.emplace_back(g.name(g.edge(static_cast<int>(e)).left), g.name(g.edge(static_cast<int>(e)).right));
      }
      if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 1; })) {
        std::sort(es.begin(), es.end());
        brute.insert(es);
      }
    }
    std::set<std::vector<NamedEdge>> enumerated;
    for (const auto& pm : enumerate_perfect_matchings(g)) {
      auto es = pm.named_edges(g);
      std::sort(es.begin(), es.end());
      enumerated.insert(es);
    }
    EXPECT_EQ(brute, enumerated);
  }
}

TEST(Enumerate, DeterministicLexicographicOrder) {
  const auto all = enumerate_perfect_matchings(complete_bipartite(3));
  // Left vertices in index order, right neighbours ascending: permutations in
  // lexicographic order.
  EXPECT_EQ(all.front(), testing::identity_matching(complete_bipartite(3), 3));
  EXPECT_EQ(all.back(), matching_of(complete_bipartite(3), {{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), [&](const auto& a, const auto& b) {
    return a.named_edges(complete_bipartite(3)) < b.named_edges(complete_bipartite(3));
  }));
}

TEST(Enumerate, EmptyAndCap) {
  const auto g = testing::bipartite(2, 2, {{0, 0}, {1, 0}});
  EXPECT_TRUE(enumerate_perfect_matchings(g).empty());
  EXPECT_EQ(find_perfect_matching(g), std::nullopt);
  EXPECT_EQ(error_code([] { enumerate_perfect_matchings(complete_bipartite(4), 23); }), Errc::cap_exceeded);
  EXPECT_EQ(enumerate_perfect_matchings(complete_bipartite(4), 24).size(), 24u);
}

TEST(SymmetricDifference, KnownValues) {
  const auto c4 = even_cycle(2);
  const auto ms = enumerate_perfect_matchings(c4);
  EXPECT_TRUE(symmetric_difference_cycles(c4, ms[0], ms[0]).empty());
  const auto one = symmetric_difference_cycles(c4, ms[0], ms[1]);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].size(), 4u);

  const auto k44 = complete_bipartite(4);
  const auto id = testing::identity_matching(k44, 4);
  const auto two = symmetric_difference_cycles(k44, id, double_swap(k44));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].size(), 4u);
  EXPECT_EQ(two[1].size(), 4u);
  EXPECT_EQ(count_symmetric_difference_cycles(id, double_swap(k44)), 2);
}

TEST(Flip, KnownValues) {
  const auto c4 = even_cycle(2);
  const auto ms = enumerate_perfect_matchings(c4);
  const auto c = symmetric_difference_cycles(c4, ms[0], ms[1])[0];
  EXPECT_EQ(flip(c4, ms[0], c), ms[1]);
  EXPECT_EQ(flip(c4, flip(c4, ms[0], c), c), ms[0]);

  // A 4-cycle of K_{3,3} using no edge of the identity matching.
  const auto k33 = complete_bipartite(3);
  const auto id = testing::identity_matching(k33, 3);
  const auto bad = Cycle::from_names(k33, {"u0", "w1", "u1", "w2"});
  EXPECT_FALSE(is_alternating(id, bad));
  EXPECT_EQ(error_code([&] { flip(k33, id, bad); }), Errc::not_alternating);
}

TEST(Adjacent, KnownValues) {
  const auto c4 = even_cycle(2);
  const auto ms = enumerate_perfect_matchings(c4);
  EXPECT_TRUE(adjacent(ms[0], ms[1]));
  EXPECT_FALSE(adjacent(ms[0], ms[0]));
  const auto k44 = complete_bipartite(4);
  EXPECT_FALSE(adjacent(testing::identity_matching(k44, 4), double_swap(k44)));
}

TEST(Cycle, CanonicalForm) {
  const auto g = complete_bipartite(3);
  const auto a = Cycle::from_names(g, {"w1", "u2", "w0", "u0"});
  const auto b = Cycle::from_names(g, {"u0", "w0", "u2", "w1"});
  const auto c = Cycle::from_names(g, {"u2", "w1", "u0", "w0"});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  // Smallest vertex first, oriented toward its smaller neighbour.
  EXPECT_EQ(a.names(g), (std::vector<VertexId>{"u0", "w0", "u2", "w1"}));
  EXPECT_TRUE(a.contains_edge(g.index_of("w1"), g.index_of("u0")));
  EXPECT_FALSE(a.contains_edge(g.index_of("u0"), g.index_of("w2")));
  EXPECT_TRUE(a.contains_vertex(g.index_of("u2")));
}

TEST(Cycle, RejectsMalformed) {
  const auto g = complete_bipartite(3);
  EXPECT_THROW(Cycle::from_names(g, {"u0", "w0"}), Error);                      // too short
  EXPECT_THROW(Cycle::from_names(g, {"u0", "w0", "u1"}), Error);                // odd
  EXPECT_THROW(Cycle::from_names(g, {"u0", "w0", "u0", "w1"}), Error);          // repeat
  EXPECT_THROW(Cycle::from_names(g, {"u0", "u1", "w0", "w1"}), Error);          // non-edge
  EXPECT_THROW(Cycle::from_names(g, {"u0", "w0", "u1", "nope"}), Error);        // unknown
}

class MatchingProperties : public ::testing::TestWithParam<int> {};

TEST_P(MatchingProperties, DecompositionFlipAdjacency) {
  std::mt19937 rng(static_cast<unsigned>(GetParam()));
  const int k = 3 + GetParam() % 3;
  const auto g = testing::random_graph_with_matching(k, 0.5, rng);
  const auto all = enumerate_perfect_matchings(g);
  ASSERT_FALSE(all.empty());
  for (int trial = 0; trial < 20; ++trial) {
    const auto m1 = testing::random_enumerated_matching(all, rng);
    const auto m2 = testing::random_enumerated_matching(all, rng);
    const auto cycles = symmetric_difference_cycles(g, m1, m2);
    // Vertex-disjoint, alternating for both, edge union = m1 Δ m2.
    std::set<int> seen;
    std::set<std::pair<int, int>> union_edges;
    for (const auto& c : cycles) {
      EXPECT_TRUE(is_alternating(m1, c));
      EXPECT_TRUE(is_alternating(m2, c));
      for (int v : c.vertices()) EXPECT_TRUE(seen.insert(v).second);
      for (std::size_t i = 0; i < c.size(); ++i) {
        auto [a, b] = c.edge_at(i);
        union_edges.emplace(std::min(a, b), std::max(a, b));
      }
    }
    std::set<std::pair<int, int>> delta;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      const int x = static_cast<int>(v);
      if (m1.mate(x) != m2.mate(x)) {
        delta.emplace(std::min(x, m1.mate(x)), std::max(x, m1.mate(x)));
        delta.emplace(std::min(x, m2.mate(x)), std::max(x, m2.mate(x)));
      }
    }
    EXPECT_EQ(union_edges, delta);
    EXPECT_EQ(static_cast<int>(cycles.size()), count_symmetric_difference_cycles(m1, m2));
    // Flipping every Δ-cycle walks m1 to m2; each flip is an involution.
    auto running = m1;
    for (const auto& c : cycles) {
      const auto next = flip(g, running, c);
      EXPECT_EQ(flip(g, next, c), running);
      running = next;
    }
    EXPECT_EQ(running, m2);
    // adjacency is symmetric and irreflexive.
    EXPECT_EQ(adjacent(m1, m2), adjacent(m2, m1));
    EXPECT_FALSE(adjacent(m1, m1));
    EXPECT_EQ(adjacent(m1, m2), cycles.size() == 1);
    for (const auto& c : cycles) EXPECT_EQ(c.size() % 2, 0u);
  }
}

TEST_P(MatchingProperties, RandomAlternatingCyclesAreAlternating) {
  std::mt19937 rng(static_cast<unsigned>(100 + GetParam()));
  const auto g = testing::random_graph_with_matching(5, 0.5, rng);
  const auto all = enumerate_perfect_matchings(g);
  for (const auto& m : all) {
    const auto c = random_alternating_cycle(g, m, rng);
    // An alternating cycle exists iff m is not the only perfect matching.
    EXPECT_EQ(c.has_value(), all.size() > 1);
    if (c) {
      EXPECT_TRUE(is_alternating(m, *c));
      const auto next = flip(g, m, *c);
      EXPECT_TRUE(adjacent(m, next));
    }
  }
  const auto r = random_perfect_matching(g, rng);
  ASSERT_TRUE(r.has_value());
  EXPECT_NE(std::find(all.begin(), all.end(), *r), all.end());
}

INSTANTIATE_TEST_SUITE_P(Seeds, MatchingProperties, ::testing::Range(1, 13));

TEST(FindPerfectMatching, AgreesWithEnumeration) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<int, int>> edges;
    std::bernoulli_distribution coin(0.35);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (coin(rng)) edges.emplace_back(i, j);
      }
    }
    const auto g = testing::bipartite(4, 4, edges);
    EXPECT_EQ(find_perfect_matching(g).has_value(), !enumerate_perfect_matchings(g).empty());
  }
}

}  // namespace
}  // namespace pmdiam
