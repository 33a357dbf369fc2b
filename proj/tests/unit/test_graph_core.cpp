#include <gtest/gtest.h>

#include <stdexcept>

#include "treespan/graph_core.hpp"

using namespace treespan;

TEST(RootedTree, RejectsNonTrees) {
  EXPECT_THROW(RootedTree(3, 0, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(RootedTree(3, 0, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(RootedTree(3, 0, {{0, 1}, {0, 0}}), std::invalid_argument);
  EXPECT_THROW(RootedTree(3, 5, {{0, 1}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(RootedTree(0, 0, {}), std::invalid_argument);
}

TEST(RootedTree, OrientationFollowsRoot) {
  RootedTree t(4, 2, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(t.root(), 2);
  EXPECT_EQ(t.parent(1), 2);
  EXPECT_EQ(t.parent(0), 1);
  EXPECT_EQ(t.parent(3), 2);
  EXPECT_EQ(t.leaves(), (std::vector<int>{0, 3}));
  EXPECT_EQ(t.height(), 2);
}

TEST(RootedTree, CompleteBinaryShape) {
  RootedTree t = RootedTree::complete_binary(2);
  EXPECT_EQ(t.size(), 7);
  EXPECT_EQ(t.num_leaves(), 4);
  EXPECT_EQ(t.children(0), (std::vector<int>{1, 2}));
  EXPECT_EQ(t.children(1), (std::vector<int>{3, 4}));
  EXPECT_EQ(t.children(2), (std::vector<int>{5, 6}));
  EXPECT_EQ(t.leaves(), (std::vector<int>{3, 4, 5, 6}));
  EXPECT_EQ(t.internal_nodes(), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(RootedTree::complete_binary(3).size(), 15);
  EXPECT_EQ(t.subtree_leaves(2), (std::vector<int>{5, 6}));
  EXPECT_TRUE(t.in_subtree(6, 2));
  EXPECT_FALSE(t.in_subtree(6, 1));
}

TEST(RootedTree, PathAndStar) {
  RootedTree p = RootedTree::path(3);
  EXPECT_EQ(p.num_edges(), 2);
  EXPECT_EQ(p.leaves(), (std::vector<int>{2}));
  RootedTree s = RootedTree::star(3);
  EXPECT_EQ(s.size(), 4);
  EXPECT_EQ(s.num_leaves(), 3);
  EXPECT_EQ(RootedTree::singleton().leaves(), (std::vector<int>{0}));
}

TEST(RootedTree, ExtendedAdjacency) {
  RootedTree t = RootedTree::complete_binary(2);
  EXPECT_TRUE(t.adjacent(kSource, kSink));
  EXPECT_TRUE(t.adjacent(kSource, 0));
  EXPECT_FALSE(t.adjacent(kSource, 1));
  EXPECT_TRUE(t.adjacent(3, kSink));
  EXPECT_FALSE(t.adjacent(1, kSink));
  EXPECT_TRUE(t.adjacent(1, 4));
  EXPECT_FALSE(t.adjacent(1, 5));
  EXPECT_EQ(t.shared_leaves(kSource, kSink), (std::vector<int>{3, 4, 5, 6}));
  EXPECT_EQ(t.shared_leaves(0, 2), (std::vector<int>{5, 6}));
  EXPECT_EQ(t.shared_leaves(4, kSink), (std::vector<int>{4}));
  EXPECT_THROW(t.shared_leaves(1, 2), std::invalid_argument);
}

TEST(RootedTree, EveryLeafFlowsThroughTwoNeighbours) {
  RootedTree t = RootedTree::complete_binary(2);
  for (int f : t.leaves()) {
    std::vector<int> path{kSource, 0, t.parent(f), f, kSink};
    for (std::size_t q = 0; q < path.size(); ++q) {
      auto nb = t.flow_neighbors(path[q], f);
      int prev = path[(q + path.size() - 1) % path.size()];
      int next = path[(q + 1) % path.size()];
      EXPECT_TRUE((nb[0] == prev && nb[1] == next) || (nb[0] == next && nb[1] == prev))
          << "node " << path[q] << " leaf " << f;
    }
  }
  EXPECT_THROW(t.flow_neighbors(1, 5), std::invalid_argument);
}

TEST(RootedTree, SlotsRoundTrip) {
  RootedTree t = RootedTree::star(2);
  EXPECT_EQ(t.num_slots(), 5);
  EXPECT_EQ(t.slot(kSource), 3);
  EXPECT_EQ(t.slot(kSink), 4);
  for (int s = 0; s < t.num_slots(); ++s) EXPECT_EQ(t.slot(t.node_at_slot(s)), s);
  EXPECT_THROW(t.node_at_slot(5), std::out_of_range);
}

TEST(InputGraph, EdgesAreSimple) {
  InputGraph g(4);
  g.add_edge(2, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 3);
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 3}, {1, 2}}));
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 4), std::out_of_range);
  g.remove_edge(1, 2);
  EXPECT_FALSE(g.has_edge(2, 1));
  EXPECT_EQ(g.num_edges(), 1);
  EXPECT_TRUE(g.neighbors(1).empty());
}

TEST(InputGraph, InducedRenumbers) {
  InputGraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  InputGraph h = g.induced({1, 2, 4});
  EXPECT_EQ(h.size(), 3);
  EXPECT_EQ(h.edges(), (std::vector<Edge>{{0, 1}}));
}

TEST(InputGraph, ComponentsWithinSubset) {
  InputGraph g(6, {{0, 1}, {1, 2}, {3, 4}});
  auto comps = connected_components(g, {0, 2, 3, 4, 5});
  ASSERT_EQ(comps.size(), 4u);
  EXPECT_EQ(comps[0], (VertexSet{0}));
  EXPECT_EQ(comps[1], (VertexSet{2}));
  EXPECT_EQ(comps[2], (VertexSet{3, 4}));
  EXPECT_EQ(comps[3], (VertexSet{5}));
  EXPECT_TRUE(connected_components(g, {}).empty());
}

TEST(VertexSets, Algebra) {
  VertexSet a{1, 3, 5}, b{3, 4, 5};
  EXPECT_EQ(set_union(a, b), (VertexSet{1, 3, 4, 5}));
  EXPECT_EQ(set_intersection(a, b), (VertexSet{3, 5}));
  EXPECT_EQ(set_difference(a, b), (VertexSet{1}));
  EXPECT_TRUE(set_contains(a, 3));
  EXPECT_FALSE(set_contains(a, 4));
}
