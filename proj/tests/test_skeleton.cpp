#include <gtest/gtest.h>

#include "support.hpp"

namespace pmdiam {
namespace {

using testing::complete_bipartite;
using testing::error_code;
using testing::even_cycle;
using testing::matching_of;

TEST(BuildSkeleton, KnownValues) {
  const auto c4 = build_skeleton(even_cycle(2));
  EXPECT_EQ(c4.nodes.size(), 2u);
  EXPECT_EQ(c4.num_edges(), 1u);
  const auto k33 = build_skeleton(complete_bipartite(3));
  EXPECT_EQ(k33.nodes.size(), 6u);
  EXPECT_EQ(k33.num_edges(), 15u);
  const auto k2 = build_skeleton(testing::k2());
  EXPECT_EQ(k2.nodes.size(), 1u);
  EXPECT_EQ(k2.num_edges(), 0u);
}

TEST(BuildSkeleton, Errors) {
  EXPECT_EQ(error_code([] { build_skeleton(testing::bipartite(2, 2, {{0, 0}, {1, 0}})); }),
            Errc::no_perfect_matching);
  EXPECT_EQ(error_code([] { build_skeleton(complete_bipartite(4), 10); }), Errc::cap_exceeded);
  EXPECT_EQ(error_code([] { monotone_diameter(testing::bipartite(1, 2, {{0, 0}, {0, 1}})); }),
            Errc::no_perfect_matching);
}

TEST(BuildSkeleton, AdjacencyInvariants) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = testing::random_graph_with_matching(4, 0.5, rng);
    const auto s = build_skeleton(g);
    EXPECT_EQ(s.nodes, enumerate_perfect_matchings(g));
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      std::set<int> nbrs(s.adjacency[i].begin(), s.adjacency[i].end());
      EXPECT_EQ(nbrs.count(static_cast<int>(i)), 0u);
      for (std::size_t j = 0; j < s.nodes.size(); ++j) {
        EXPECT_EQ(nbrs.count(static_cast<int>(j)) == 1, adjacent(s.nodes[i], s.nodes[j]));
        const auto& back = s.adjacency[j];
        EXPECT_EQ(nbrs.count(static_cast<int>(j)) == 1,
                  std::find(back.begin(), back.end(), static_cast<int>(i)) != back.end());
      }
      EXPECT_EQ(s.find(s.nodes[i]), static_cast<int>(i));
    }
  }
}

TEST(Diameter, KnownValues) {
  EXPECT_EQ(diameter(build_skeleton(even_cycle(2))), 1);
  EXPECT_EQ(diameter(build_skeleton(complete_bipartite(3))), 1);
  EXPECT_EQ(diameter(build_skeleton(complete_bipartite(4))), 2);
  EXPECT_EQ(diameter(build_skeleton(testing::k2())), 0);
}

TEST(Diameter, DisconnectedIsReported) {
  SkeletonGraph s;
  s.nodes = enumerate_perfect_matchings(even_cycle(2));
  s.graph = even_cycle(2);
  s.adjacency = {{}, {}};
  EXPECT_EQ(error_code([&] { diameter(s); }), Errc::disconnected_skeleton);
}

TEST(MonotoneDiameter, AssignmentPolytope) {
  for (int n = 2; n <= 5; ++n) EXPECT_EQ(monotone_diameter(complete_bipartite(n)), n / 2) << "n=" << n;
  EXPECT_EQ(monotone_diameter(testing::k2()), 0);
}

TEST(WitnessCost, KnownValues) {
  const auto c4 = even_cycle(2);
  const auto ms = enumerate_perfect_matchings(c4);
  auto count = [](const CostFunction& c, long long w) { return std::count(c.weights.begin(), c.weights.end(), w); };
  const auto same = witness_cost_function(c4, ms[0], ms[0]);
  EXPECT_EQ(count(same, 0), 2);
  EXPECT_EQ(count(same, 4), 2);
  const auto diff = witness_cost_function(c4, ms[0], ms[1]);
  EXPECT_EQ(count(diff, 0), 2);
  EXPECT_EQ(count(diff, 1), 2);
  for (const auto& e : ms[1].edges(c4)) EXPECT_EQ(diff.weights[*c4.edge_index(e.left, e.right)], 0);
  for (const auto& e : ms[0].edges(c4)) EXPECT_EQ(diff.weights[*c4.edge_index(e.left, e.right)], 1);

  const auto k44 = complete_bipartite(4);
  const auto id = testing::identity_matching(k44, 4);
  const auto swap = matching_of(k44, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  const auto w = witness_cost_function(k44, id, swap);
  EXPECT_EQ(count(w, 0), 4);
  EXPECT_EQ(count(w, 1), 4);
  EXPECT_EQ(count(w, 8), 8);
  EXPECT_EQ(w.cost(k44, swap), 0);
  EXPECT_EQ(w.cost(k44, id), 4);
}

TEST(MonotoneDistance, KnownValues) {
  const auto c4 = even_cycle(2);
  const auto s = build_skeleton(c4);
  const auto c = witness_cost_function(c4, s.nodes[0], s.nodes[1]);
  EXPECT_EQ(monotone_distance(s, c, 1), 0);
  EXPECT_EQ(monotone_distance(s, c, 0), 1);

  const auto k44 = complete_bipartite(4);
  const auto sk = build_skeleton(k44);
  const auto id = testing::identity_matching(k44, 4);
  const auto swap = matching_of(k44, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  EXPECT_EQ(monotone_distance(sk, witness_cost_function(k44, id, swap), *sk.find(id)), 2);
  EXPECT_EQ(error_code([&] { monotone_distance(sk, witness_cost_function(k44, id, swap), -1); }),
            Errc::index_out_of_range);
}

TEST(MonotoneDistance, UnreachableOptimumIsReported) {
  const auto c4 = even_cycle(2);
  auto s = build_skeleton(c4);
  s.adjacency = {{}, {}};
  const auto c = witness_cost_function(c4, s.nodes[0], s.nodes[1]);
  EXPECT_EQ(error_code([&] { monotone_distance(s, c, 0); }), Errc::unreachable_optimum);
}

class SkeletonProperties : public ::testing::TestWithParam<int> {};

TEST_P(SkeletonProperties, WitnessCostAndBounds) {
  std::mt19937 rng(static_cast<unsigned>(GetParam()));
  const int k = 3 + GetParam() % 2;
  const auto g = testing::random_graph_with_matching(k, 0.6, rng);
  const auto s = build_skeleton(g);
  const int diam = diameter(s);
  const int mdiam = monotone_diameter(g);
  EXPECT_GE(mdiam, diam);
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto dist = bfs_distances(s.adjacency, static_cast<int>(i));
    for (std::size_t j = 0; j < s.nodes.size(); ++j) {
      const int cycles = count_symmetric_difference_cycles(s.nodes[i], s.nodes[j]);
      EXPECT_LE(dist[j], cycles);
      const auto c = witness_cost_function(g, s.nodes[i], s.nodes[j]);
      EXPECT_EQ(monotone_distance(s, c, static_cast<int>(i)), cycles);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, SkeletonProperties, ::testing::Range(1, 11));

}  // namespace
}  // namespace pmdiam
