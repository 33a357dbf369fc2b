#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treespan/graph_core.hpp"

namespace treespan {

/// Vertex -> tree node assignment.
struct Coloring {
  std::uint64_t seed = 0;
  std::vector<int> colors;
};

/// Each vertex independently gets a uniform tree node; reproducible in `seed`.
Coloring random_coloring(const InputGraph& graph, const RootedTree& tree, std::uint64_t seed);

/// Input graph with a coloring applied: only edges whose endpoint colors are
/// adjacent in the tree survive.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  /// Throws std::invalid_argument if the coloring is not total or leaves V_T.
  ColoredGraph(InputGraph base, Coloring coloring, const RootedTree& tree);

  int size() const { return base_.size(); }
  const InputGraph& base() const { return base_; }
  const Coloring& coloring() const { return coloring_; }
  int color(int u) const { return coloring_.colors[u]; }
  /// The graph G_c of surviving edges.
  const InputGraph& kept() const { return kept_; }
  std::vector<Edge> kept_edges() const { return kept_.edges(); }
  /// c^{-1}(x), sorted.
  const VertexSet& block(int x) const { return blocks_[x]; }
  int num_colors() const { return static_cast<int>(blocks_.size()); }
  /// Edges of G that were dropped because their colors are not tree-adjacent.
  std::vector<Edge> removed_edges() const;

 private:
  InputGraph base_;
  Coloring coloring_;
  InputGraph kept_;
  std::vector<VertexSet> blocks_;
};

ColoredGraph apply_coloring(const InputGraph& graph, const Coloring& coloring, const RootedTree& tree);

/// G'_c: the kept graph plus two extra vertices s = size() and t = size()+1,
/// s joined to the root block and t joined to every leaf block.
struct AugmentedGraph {
  InputGraph graph;
  int source = 0;
  int sink = 0;
};
AugmentedGraph augment(const ColoredGraph& colored, const RootedTree& tree);

/// Injection iota: V_T -> V_G with c(iota(x)) = x mapping every tree edge to a
/// kept edge, or nullopt. Exhaustive backtracking in preorder.
std::optional<std::vector<int>> correctly_colored_subgraph(const ColoredGraph& colored,
                                                           const RootedTree& tree);

/// True iff iota is a correctly colored embedding of the tree.
bool is_correct_embedding(const ColoredGraph& colored, const RootedTree& tree,
                          const std::vector<int>& iota);

}  // namespace treespan
