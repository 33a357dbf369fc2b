#include <gtest/gtest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "treespan/coloring.hpp"
#include "treespan/instance_lab.hpp"
#include "treespan/random.hpp"

using namespace treespan;

TEST(Coloring, RandomColoringIsReproducible) {
  InputGraph g(30);
  RootedTree t = RootedTree::star(3);
  Coloring a = random_coloring(g, t, 17), b = random_coloring(g, t, 17), c = random_coloring(g, t, 18);
  EXPECT_EQ(a.colors, b.colors);
  EXPECT_NE(a.colors, c.colors);
  for (int x : a.colors) {
    EXPECT_GE(x, 0);
    EXPECT_LT(x, t.size());
  }
}

TEST(Coloring, CounterRngDrawsArePureFunctions) {
  CounterRng r(42, 3);
  std::uint64_t first = r.next(), second = r.next();
  CounterRng q(42, 3);
  EXPECT_EQ(q.at(1), second);
  EXPECT_EQ(q.at(0), first);
  EXPECT_NE(CounterRng(42, 4).at(0), first);
}

TEST(ColoredGraph, KeepsOnlyTreeAdjacentColorPairs) {
  RootedTree t = RootedTree::path(3);  // 0 - 1 - 2
  InputGraph g(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {0, 3}});
  ColoredGraph cg(g, Coloring{0, {0, 1, 2, 0}}, t);
  EXPECT_EQ(cg.kept_edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(cg.removed_edges(), (std::vector<Edge>{{0, 2}, {0, 3}, {2, 3}}));
  EXPECT_EQ(cg.block(0), (VertexSet{0, 3}));
  EXPECT_EQ(cg.block(2), (VertexSet{2}));
}

TEST(ColoredGraph, RejectsBadColorings) {
  RootedTree t = RootedTree::path(2);
  InputGraph g(2);
  EXPECT_THROW(ColoredGraph(g, Coloring{0, {0}}, t), std::invalid_argument);
  EXPECT_THROW(ColoredGraph(g, Coloring{0, {0, 2}}, t), std::invalid_argument);
  EXPECT_THROW(ColoredGraph(g, Coloring{0, {-1, 0}}, t), std::invalid_argument);
}

TEST(AugmentedGraph, SourceAndSinkAttachments) {
  RootedTree t = RootedTree::star(2);  // 0 root, leaves 1, 2
  InputGraph g(4, {{0, 1}, {0, 2}});
  ColoredGraph cg(g, Coloring{0, {0, 1, 2, 1}}, t);
  AugmentedGraph ag = augment(cg, t);
  EXPECT_EQ(ag.source, 4);
  EXPECT_EQ(ag.sink, 5);
  EXPECT_EQ(ag.graph.neighbors(ag.source), (std::vector<int>{0}));
  EXPECT_EQ(ag.graph.neighbors(ag.sink), (std::vector<int>{1, 2, 3}));
}

TEST(Embedding, WorkedExampleHasTheListedCopy) {
  PromiseInstance inst = worked_example();
  ColoredGraph cg = inst.colored();
  auto iota = correctly_colored_subgraph(cg, inst.tree);
  ASSERT_TRUE(iota.has_value());
  EXPECT_TRUE(is_correct_embedding(cg, inst.tree, *iota));
  // u1 -> r, u3 -> d1, u6 -> d2, u7, u9, u11, u12 -> leaves
  EXPECT_EQ(*iota, (std::vector<int>{0, 2, 5, 6, 8, 10, 11}));
  // (u2, u8) joins r and f2, which are not tree-adjacent
  EXPECT_FALSE(cg.kept().has_edge(1, 7));
  EXPECT_TRUE(inst.graph.has_edge(1, 7));
}

TEST(Embedding, RejectsWrongColorsAndMissingEdges) {
  PromiseInstance inst = worked_example();
  ColoredGraph cg = inst.colored();
  EXPECT_FALSE(is_correct_embedding(cg, inst.tree, {1, 2, 5, 6, 8, 10, 11}));
  EXPECT_FALSE(is_correct_embedding(cg, inst.tree, {0, 2, 5, 6, 8, 10}));
  EXPECT_FALSE(is_correct_embedding(cg, inst.tree, {0, 2, 5, 6, 7, 10, 11}));
}

TEST(Embedding, AgreesWithExhaustiveChoiceOfOneVertexPerBlock) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    RootedTree t = random_tree(2 + static_cast<int>(seed % 4), seed);
    CounterRng rng(seed, 99);
    int n = t.size() + static_cast<int>(rng.below(4));
    InputGraph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.bernoulli(0.45)) g.add_edge(u, v);
    ColoredGraph cg(g, random_coloring(g, t, seed), t);
    auto fast = correctly_colored_subgraph(cg, t);
    auto slow = oracle::brute_force_embedding(cg, t);
    EXPECT_EQ(fast.has_value(), slow.has_value()) << "seed " << seed;
    if (fast) {
      EXPECT_TRUE(is_correct_embedding(cg, t, *fast));
    }
  }
}
