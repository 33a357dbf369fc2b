#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "treespan/errors.hpp"
#include "treespan/instance_lab.hpp"
#include "treespan/minor_structure.hpp"
#include "treespan/random.hpp"

using namespace treespan;

namespace {

VertexSet all_vertices(int n) {
  VertexSet v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

// u_i -> vertex i - 1
VertexSet us(std::initializer_list<int> ids) {
  VertexSet v;
  for (int i : ids) v.push_back(i - 1);
  std::sort(v.begin(), v.end());
  return v;
}

PromiseInstance random_instance(std::uint64_t seed) {
  RootedTree t = random_tree(2 + static_cast<int>(seed % 4), seed);
  CounterRng rng(seed, 41);
  int n = t.size() + static_cast<int>(rng.below(3));
  InputGraph g(n);
  double p = 0.15 + 0.5 * rng.uniform();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  Coloring c = random_coloring(g, t, seed);
  return PromiseInstance{g, t, c, derive_label(g, t, c), {"test", seed}};
}

}  // namespace

TEST(Minor, NeighborsAcross) {
  PromiseInstance inst = bad_vertex_example();
  ColoredGraph cg = inst.colored();
  EXPECT_EQ(neighbors_across(cg, inst.tree, 0, 2, us({1, 2})), us({6, 7}));
  EXPECT_EQ(neighbors_across(cg, inst.tree, 0, 1, us({3})), us({5}));
  EXPECT_THROW(neighbors_across(cg, inst.tree, 1, 2, {}), std::invalid_argument);
  EXPECT_THROW(neighbors_across(cg, inst.tree, 0, 1, us({4})), std::invalid_argument);
}

TEST(Minor, ModelSearchAgreesWithExhaustiveAssignment) {
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    RootedTree t = random_tree(2 + static_cast<int>(seed % 3), seed);
    CounterRng rng(seed, 8);
    int n = 3 + static_cast<int>(rng.below(5));
    InputGraph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.bernoulli(0.35)) g.add_edge(u, v);
    VertexSet allowed = all_vertices(n);
    int root_vertex = seed % 3 == 0 ? static_cast<int>(rng.below(n)) : -1;
    auto model = find_minor_model(g, allowed, t, root_vertex);
    EXPECT_EQ(model.has_value(), oracle::brute_force_minor(g, allowed, t, root_vertex)) << "seed " << seed;
    if (model) {
      EXPECT_TRUE(is_minor_model(g, allowed, t, *model, root_vertex));
    }
  }
}

TEST(Minor, ModelValidatorRejectsBrokenModels) {
  InputGraph g(4, {{0, 1}, {1, 2}, {2, 3}});
  RootedTree t = RootedTree::path(2);
  VertexSet all = all_vertices(4);
  EXPECT_TRUE(is_minor_model(g, all, t, {{0, 1}, {2}}));
  EXPECT_FALSE(is_minor_model(g, all, t, {{0, 2}, {3}}));     // disconnected
  EXPECT_FALSE(is_minor_model(g, all, t, {{0}, {2}}));        // not touching
  EXPECT_FALSE(is_minor_model(g, all, t, {{0, 1}, {1, 2}}));  // overlapping
  EXPECT_FALSE(is_minor_model(g, {0, 1}, t, {{0, 1}, {2}}));  // outside allowed
  EXPECT_FALSE(is_minor_model(g, all, t, {{0, 1}, {2}}, 3));  // root vertex misplaced
}

TEST(Minor, GuardOnLargeGraphs) {
  InputGraph g(kMaxOracleVertices + 1);
  EXPECT_THROW(find_minor_model(g, all_vertices(g.size()), RootedTree::path(2)), InstanceTooLarge);
}

TEST(Minor, BadVertexExampleHasNoMinor) {
  PromiseInstance inst = bad_vertex_example();
  EXPECT_EQ(inst.label, Label::Negative);
  EXPECT_FALSE(minor_oracle(inst.colored(), inst.tree));
  // u2 is the bad vertex: its neighbours in d2 cannot both reach leaf pairs
  EXPECT_FALSE(is_good(inst.colored(), all_vertices(19), 1, inst.tree));
}

TEST(Minor, BadVertexCollapsedSets) {
  PromiseInstance inst = bad_vertex_example();
  ColoredGraph cg = inst.colored();
  MinorDecomposition dec = decompose(cg, inst.tree);
  EXPECT_TRUE(dec.W.empty());
  EXPECT_TRUE(check_conditions(dec, cg, inst.tree).all());
  CollapsedSets cs = collapse(dec, inst.tree);
  // r = 0, d1 = 1, d2 = 2, b1..b4 = 3..6
  EXPECT_EQ(cs.V_a[0], us({1, 2, 3}));
  EXPECT_EQ(cs.V_ab[1], us({3}));
  EXPECT_EQ(cs.V_ab[2], us({1, 2}));
  EXPECT_EQ(cs.V_a[1], us({5}));
  EXPECT_EQ(cs.V_ab[3], us({5}));
  EXPECT_EQ(cs.V_a[2], us({6, 7}));
  EXPECT_EQ(cs.V_ab[5], us({7}));
  EXPECT_EQ(cs.V_ab[6], us({6}));
  auto four = check_collapsed(cs, cg, inst.tree);
  for (bool b : four) EXPECT_TRUE(b);

  TreeProgram tp = build_tree_program(inst.tree, cg);
  NegativeWitness nw = negative_witness_from(cs, inst.tree, cg, tp);
  EXPECT_NEAR(nw.tau_overlap, 1.0, 1e-12);
  EXPECT_LT(nw.max_available, 1e-12);
  EXPECT_LE(nw.size, 4.0 * tp.program().num_inputs() + 1e-9);
  EXPECT_GE(nw.size, evaluate(tp.program(), tp.availability()).wsize - 1e-9);
}

TEST(Minor, GoodRootTrace) {
  PromiseInstance inst = good_root_example();
  ColoredGraph cg = inst.colored();
  MinorDecomposition dec = decompose(cg, inst.tree);
  const DecompositionTrace& tr = dec.trace;
  ASSERT_EQ(tr.children, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(tr.child_W[0], us({4, 5}));
  EXPECT_EQ(tr.child_U[0], us({6}));
  EXPECT_EQ(tr.child_W[1], us({7}));
  EXPECT_EQ(tr.child_U[1], us({8}));
  EXPECT_EQ(tr.child_W[2], us({11}));
  EXPECT_EQ(tr.child_U[2], us({9, 10, 19}));
  auto has = [&](const VertexSet& s) { return std::find(tr.A.begin(), tr.A.end(), s) != tr.A.end(); };
  EXPECT_TRUE(has(us({1, 2, 3, 6, 9, 10, 19})));
  EXPECT_TRUE(has(us({8})));
  EXPECT_EQ(dec.W, us({1, 2, 3}));
  EXPECT_TRUE(check_conditions(dec, cg, inst.tree).all());
  EXPECT_THROW(collapse(dec, inst.tree), std::invalid_argument);
  for (int w : dec.W) EXPECT_TRUE(is_good(cg, all_vertices(cg.size()), w, inst.tree));
}

TEST(Minor, ConditionsHoldOnRandomInstances) {
  int with_minor = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    PromiseInstance inst = random_instance(seed);
    ColoredGraph cg = inst.colored();
    MinorDecomposition dec = decompose(cg, inst.tree);
    ConditionReport rep = check_conditions(dec, cg, inst.tree);
    for (int c = 0; c < 6; ++c) EXPECT_TRUE(rep.pass[c]) << "seed " << seed << ": " << rep.detail[c];
    bool minor = oracle::brute_force_minor(cg.kept(), all_vertices(cg.size()), inst.tree);
    bool rooted = oracle::root_block_minor(cg, inst.tree);
    if (!dec.W.empty()) {
      EXPECT_TRUE(rooted) << "seed " << seed;
      EXPECT_TRUE(minor) << "seed " << seed;
    }
    if (!minor) {
      EXPECT_TRUE(dec.W.empty()) << "seed " << seed;
    }
    with_minor += minor;
    MinorDecomposition alt = decompose(cg, inst.tree, DecomposeOptions{false});
    EXPECT_EQ(alt.W, dec.W);
    EXPECT_EQ(alt.V_al, dec.V_al);
    EXPECT_EQ(alt.V_abl, dec.V_abl);
  }
  EXPECT_GT(with_minor, 20);
  EXPECT_LT(with_minor, 180);
}

TEST(Minor, EmptyWDoesNotRuleOutAMinor) {
  // star r -> {a, b}; u2 (color r) sees u0 and u1 (both color b), nothing is colored a
  RootedTree t = RootedTree::star(2);
  ColoredGraph cg(InputGraph(3, {{0, 2}, {1, 2}}), Coloring{0, {2, 2, 0}}, t);
  EXPECT_TRUE(minor_oracle(cg, t));
  MinorDecomposition dec = decompose(cg, t);
  EXPECT_TRUE(check_conditions(dec, cg, t).all());
  EXPECT_TRUE(dec.W.empty());
  EXPECT_EQ(collapse(dec, t).V_a[0], (VertexSet{2}));
  TreeProgram tp = build_tree_program(t, cg);
  EXPECT_FALSE(evaluate(tp.program(), tp.availability()).accepted);
}

TEST(Minor, NegativeWitnessOnGeneratedNegatives) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    RootedTree t = random_tree(2 + static_cast<int>(seed % 5), seed);
    PromiseInstance inst = gen_negative(t, t.size() + 2, seed);
    ColoredGraph cg = inst.colored();
    MinorDecomposition dec = decompose(cg, t);
    ASSERT_TRUE(dec.W.empty());
    CollapsedSets cs = collapse(dec, t);
    for (bool b : check_collapsed(cs, cg, t)) EXPECT_TRUE(b) << "seed " << seed;
    TreeProgram tp = build_tree_program(t, cg);
    NegativeWitness nw = negative_witness_from(cs, t, cg, tp);
    NegativeCheck chk = check_negative(tp.program(), tp.availability(), nw.w);
    EXPECT_NEAR(chk.tau_overlap, 1.0, 1e-10);
    EXPECT_LT(chk.max_available, 1e-10);
    EXPECT_LE(nw.size, 4.0 * tp.program().num_inputs() + 1e-9);
  }
}
