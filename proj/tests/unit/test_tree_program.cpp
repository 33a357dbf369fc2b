#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "treespan/errors.hpp"
#include "treespan/instance_lab.hpp"
#include "treespan/tree_program.hpp"

using namespace treespan;

TEST(TreeProgram, BasisIndexLayout) {
  PromiseInstance inst = worked_example();
  TreeProgram tp = build_tree_program(inst.tree, inst.colored());
  EXPECT_EQ(tp.num_leaves(), 4);
  EXPECT_EQ(tp.program().dimension(), 4 * (12 + 2));
  EXPECT_EQ(tp.basis_index(kSource, 3), 0);
  EXPECT_EQ(tp.basis_index(kSink, 6), 4 + 3);
  EXPECT_EQ(tp.basis_index(5, 4), (5 + 2) * 4 + 1);
  EXPECT_THROW(tp.basis_index(5, 1), std::invalid_argument);
}

TEST(TreeProgram, CandidatesAreTreeAdjacentPairs) {
  PromiseInstance inst = worked_example();
  ColoredGraph cg = inst.colored();
  TreeProgram tp = build_tree_program(inst.tree, cg);
  int expected = 0;
  for (int u = 0; u < cg.size(); ++u)
    for (int v = u + 1; v < cg.size(); ++v)
      if (inst.tree.has_edge(cg.color(u), cg.color(v))) {
        ++expected;
        int var = tp.candidate_variable(u, v);
        ASSERT_GE(var, 0);
        EXPECT_EQ(tp.candidate_variable(v, u), var);
        EXPECT_EQ(tp.availability()[var], cg.kept().has_edge(u, v));
      } else {
        EXPECT_EQ(tp.candidate_variable(u, v), -1);
      }
  EXPECT_EQ(static_cast<int>(tp.candidates().size()), expected);
  EXPECT_EQ(tp.program().free_indices().size(), 2u + 6u);  // root block 2, leaf blocks 1+2+2+1
}

TEST(TreeProgram, WorkedExampleWitnessSizeIsSix) {
  PromiseInstance inst = worked_example();
  ColoredGraph cg = inst.colored();
  TreeProgram tp = build_tree_program(inst.tree, cg);
  EvalResult r = evaluate(tp.program(), tp.availability());
  ASSERT_TRUE(r.accepted);
  EXPECT_LT(r.residual, 1e-8);
  EXPECT_NEAR(r.wsize, 6.0, 1e-8);
  EXPECT_NEAR(oracle::kkt_positive_size(tp.program(), tp.availability()), 6.0, 1e-8);

  auto iota = correctly_colored_subgraph(cg, inst.tree);
  ASSERT_TRUE(iota);
  Eigen::VectorXd w = positive_witness_from_embedding(tp, *iota);
  EXPECT_LT(positive_residual(tp.program(), tp.availability(), w), 1e-12);
  EXPECT_NEAR(positive_size(tp.program(), tp.availability(), w), 6.0, 1e-12);
}

TEST(TreeProgram, EmbeddingWitnessNeedsAvailableEdges) {
  PromiseInstance inst = worked_example();
  TreeProgram tp = build_tree_program(inst.tree, inst.colored());
  // u4 stands in for d1 but has no kept edges
  EXPECT_THROW(positive_witness_from_embedding(tp, {0, 3, 5, 6, 8, 10, 11}), InfeasibleWitness);
}

TEST(TreeProgram, PromiseSidesDecidedCorrectly) {
  int pos = 0, neg = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RootedTree t = random_tree(2 + static_cast<int>(seed % 4), seed);
    int n = t.size() + static_cast<int>(seed % 3);
    PromiseInstance inst = seed % 2 == 0 ? gen_positive(t, n, seed) : gen_negative(t, n, seed);
    ColoredGraph cg = inst.colored();
    TreeProgram tp = build_tree_program(t, cg);
    EvalResult r = evaluate(tp.program(), tp.availability());
    EXPECT_EQ(r.accepted, oracle::exact_accepts(tp.program(), tp.availability())) << "seed " << seed;
    if (inst.label == Label::Positive) {
      ++pos;
      EXPECT_TRUE(r.accepted) << "seed " << seed;
      EXPECT_LE(r.wsize, t.num_edges() + 1e-6);
    } else {
      ++neg;
      EXPECT_FALSE(oracle::brute_force_minor(cg.kept(), [&] {
        VertexSet all(cg.size());
        for (int i = 0; i < cg.size(); ++i) all[i] = i;
        return all;
      }(), t));
      EXPECT_FALSE(r.accepted) << "seed " << seed;
    }
  }
  EXPECT_EQ(pos, 100);
  EXPECT_EQ(neg, 100);
}

TEST(NormalizedProgram, IndexFamilies) {
  PromiseInstance inst = worked_example();
  TreeProgram tp = build_tree_program(inst.tree, inst.colored());
  NormalizedProgram np = build_normalized_program(tp, default_w1(inst.tree), 11.0, 3);
  const RootedTree& t = inst.tree;
  // |I| = n * sum over extended nodes of their leaf counts
  int leaf_total = 2 * t.num_leaves();
  for (int x = 0; x < t.size(); ++x) leaf_total += static_cast<int>(t.subtree_leaves(x).size());
  EXPECT_EQ(static_cast<int>(np.I().size()), 3 * leaf_total);
  // |J| = n^2 * number of ordered extended-adjacent pairs
  int pairs = 0;
  for (int s = 0; s < t.num_slots(); ++s) pairs += static_cast<int>(t.extended_neighbors(t.node_at_slot(s)).size());
  EXPECT_EQ(pairs, 2 * (t.num_edges() + 1 + 1 + t.num_leaves()));
  EXPECT_EQ(static_cast<int>(np.J().size()), 9 * pairs);
  for (int i = 0; i < static_cast<int>(np.I().size()); ++i) {
    auto [x, k, f] = np.I()[i];
    EXPECT_EQ(np.i_index(x, k, f), i);
  }
  for (int j = 0; j < static_cast<int>(np.J().size()); ++j) {
    auto [x1, k1, x2, k2] = np.J()[j];
    EXPECT_EQ(np.j_index(x1, k1, x2, k2), j);
  }
  EXPECT_EQ(np.j_index(1, 0, 2, 0), -1);
  EXPECT_EQ(np.i_index(1, 0, 5), -1);
}

TEST(NormalizedProgram, ColumnNormsAndKinds) {
  PromiseInstance inst = worked_example();
  TreeProgram tp = build_tree_program(inst.tree, inst.colored());
  NormalizedProgram np = build_normalized_program(tp, default_w1(inst.tree), 11.0, 2);
  EXPECT_DOUBLE_EQ(np.alpha(), 11.0 * std::sqrt(6.0));
  Eigen::MatrixXd v = np.dense_V();
  double beta = std::sqrt(1 - 1 / (np.alpha() * np.alpha()));
  for (int j = 0; j < v.cols(); ++j) {
    double norm = v.col(j).norm();
    switch (np.kind(j)) {
      case ColumnKind::Target: EXPECT_NEAR(norm, std::sqrt(2.0) / np.alpha(), 1e-14); break;
      case ColumnKind::Gamma: EXPECT_NEAR(norm, std::sqrt(2.0) * beta, 1e-14); break;
      default: EXPECT_NEAR(norm, 1.0, 1e-14);
    }
    EXPECT_NEAR(v.col(j).sum(), 0.0, 1e-14);
  }
  // tau~ and gamma span the same line
  EXPECT_NEAR(std::abs(v.col(np.tau_index()).normalized().dot(v.col(np.gamma_index()).normalized())), 1.0, 1e-14);
  EXPECT_EQ(np.vertex_at(kSource, 0), kSource);
  EXPECT_EQ(np.vertex_at(kSource, 1), kPadding);
  EXPECT_EQ(np.vertex_at(0, 0), 0);
  EXPECT_EQ(np.vertex_at(0, 1), 1);
  EXPECT_EQ(np.vertex_at(6, 1), kPadding);  // f4 holds only u12
  int jsu = np.j_index(kSource, 0, 0, 1);
  EXPECT_EQ(np.kind(jsu), ColumnKind::Free);
  int jdummy = np.j_index(kSource, 1, 0, 0);
  EXPECT_EQ(np.kind(jdummy), ColumnKind::Dummy);
  int jcand = np.j_index(0, 0, 2, 1);  // u1 - u6
  ASSERT_EQ(np.kind(jcand), ColumnKind::Candidate);
  EXPECT_EQ(np.variable(jcand), tp.candidate_variable(0, 5));
  EXPECT_THROW(build_normalized_program(tp, 6.0, 11.0, 1), std::invalid_argument);
  EXPECT_THROW(build_normalized_program(tp, 6.0, 10.0, 2), std::invalid_argument);
}

TEST(NormalizedProgram, DecisionMatchesOriginalProgram) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RootedTree t = random_tree(2 + static_cast<int>(seed % 3), seed);
    int n = t.size() + 1;
    PromiseInstance inst = seed % 2 == 0 ? gen_positive(t, n, seed) : gen_negative(t, n, seed);
    TreeProgram tp = build_tree_program(t, inst.colored());
    bool original = evaluate(tp.program(), tp.availability()).accepted;
    for (int pad : {min_block_size(tp), n}) {
      NormalizedProgram np = build_normalized_program(tp, default_w1(t), 11.0, pad);
      SpanProgram sp = np.as_span_program();
      Availability x = np.lift(tp.availability());
      EXPECT_EQ(evaluate(sp, x).accepted, original) << "seed " << seed << " pad " << pad;
      auto avail = np.available_columns(tp.availability());
      EXPECT_TRUE(avail[np.tau_index()]);
      EXPECT_FALSE(avail[np.gamma_index()]);
    }
  }
}
