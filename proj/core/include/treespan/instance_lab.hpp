#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treespan/coloring.hpp"
#include "treespan/graph_core.hpp"

namespace treespan {

enum class Label { Positive, Negative, OutsidePromise };

const char* label_name(Label l);
/// Inverse of label_name; throws std::invalid_argument.
Label parse_label(const std::string& s);

struct Provenance {
  std::string generator;
  std::uint64_t seed = 0;
};

/// Colored instance of the promise problem with an oracle-derived label.
struct PromiseInstance {
  InputGraph graph;
  RootedTree tree;
  Coloring coloring;
  Label label = Label::OutsidePromise;
  Provenance provenance;

  ColoredGraph colored() const { return ColoredGraph(graph, coloring, tree); }
};

/// POSITIVE if a correctly colored copy of the tree exists, NEGATIVE if G_c
/// has no tree minor, OUTSIDE_PROMISE otherwise. Uses the exhaustive oracles.
Label derive_label(const InputGraph& graph, const RootedTree& tree, const Coloring& coloring);

/// Random tree on `nodes` nodes rooted at 0 (each node i > 0 attaches to a
/// uniform earlier node).
RootedTree random_tree(int nodes, std::uint64_t seed);

/// Plants a correctly colored copy of `tree` on n vertices and adds noise:
/// each color-respecting pair becomes an edge with probability `noise`, and
/// each other pair (dropped by the coloring) with probability `noise` / 2.
/// Requires n >= |V_T|.
PromiseInstance gen_positive(const RootedTree& tree, int n, std::uint64_t seed, double noise = 0.3);

/// Rejection-samples colored random graphs on n vertices until G_c has no
/// tree minor. Edge density varies per attempt. Throws std::runtime_error
/// after `budget` attempts.
PromiseInstance gen_negative(const RootedTree& tree, int n, std::uint64_t seed, int budget = 2000);

/// Instance with a tree minor in G_c, no correctly colored subgraph, and an
/// accepting tree program. Tries the 12-vertex reconstruction first, then
/// random layered 12-vertex graphs. Throws std::runtime_error if nothing is
/// found within `budget` attempts.
PromiseInstance gen_counterexample(std::uint64_t seed, int budget = 20000);

/// Complete binary tree with 7 nodes: r = 0, d1 = 1, d2 = 2, leaves 3..6.
RootedTree binary7();

/// The 12-vertex example with a planted binary7 copy and one edge (u2,u8)
/// whose colors are not tree-adjacent.
PromiseInstance worked_example();

/// 12-vertex binary7 instance with a minor but no correctly colored copy.
/// `spare_color` is the color of the isolated vertex u4.
PromiseInstance counterexample_reconstruction(int spare_color = 0);

/// 19-vertex instance over the 15-node complete binary tree with no minor.
PromiseInstance bad_vertex_example();

/// 19-vertex instance over a 9-node tree in which W = root block.
PromiseInstance good_root_example();

/// Tree of good_root_example: r = 0; d1, d2, d3 = 1, 2, 3; p = 4 under d1;
/// q = 5 under d2; e = 6 under d3; g = 7 under e.
RootedTree good_root_tree();

}  // namespace treespan
