#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace treespan {

using Edge = std::pair<int, int>;
/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<int>;

/// Sentinel ids for the two extra extended nodes.
inline constexpr int kSource = -1;
inline constexpr int kSink = -2;
inline constexpr int kNoParent = -3;

/// Rooted tree on dense node ids 0..size()-1. Orientation is derived by BFS
/// from the root; children lists are in ascending id order.
class RootedTree {
 public:
  RootedTree() = default;
  /// Throws std::invalid_argument unless `edges` form a spanning tree on
  /// `nodes` vertices.
  RootedTree(int nodes, int root, const std::vector<Edge>& edges);

  /// Single-node tree.
  static RootedTree singleton() { return RootedTree(1, 0, {}); }
  static RootedTree path(int nodes);
  static RootedTree star(int leaves);
  /// Complete binary tree of the given height (height 2 has 7 nodes).
  static RootedTree complete_binary(int height);

  int size() const { return static_cast<int>(parent_.size()); }
  int root() const { return root_; }
  int parent(int x) const;
  const std::vector<int>& children(int x) const;
  bool is_leaf(int x) const { return children(x).empty(); }
  int num_edges() const { return size() - 1; }
  /// (parent, child) pairs in preorder of the child.
  std::vector<Edge> edges() const;
  bool has_edge(int x, int y) const;

  const std::vector<int>& leaves() const { return leaves_; }
  const std::vector<int>& internal_nodes() const { return internal_; }
  const std::vector<int>& preorder() const { return preorder_; }
  int num_leaves() const { return static_cast<int>(leaves_.size()); }
  /// Position of leaf f within leaves(); -1 if f is not a leaf.
  int leaf_position(int f) const;
  /// Number of edges on the longest root-to-leaf path.
  int height() const;
  /// Nodes of the subtree rooted at x, in preorder.
  std::vector<int> subtree_nodes(int x) const;
  bool in_subtree(int x, int ancestor) const;

  // Extended-node notation. Arguments may be tree nodes or kSource/kSink.

  /// Leaves below x; for the sentinels, all leaves.
  const std::vector<int>& subtree_leaves(int x) const;
  /// x ~ y: a tree edge, {s,t}, {s,root}, or {t,leaf}.
  bool adjacent(int x, int y) const;
  /// Leaves shared by the subtrees of x and y. Throws unless x ~ y.
  std::vector<int> shared_leaves(int x, int y) const;
  /// The two extended neighbours y of x whose shared leaf set contains f.
  std::array<int, 2> flow_neighbors(int x, int f) const;
  /// Extended neighbours of x in slot order.
  std::vector<int> extended_neighbors(int x) const;

  /// Dense slot for an extended node: tree nodes keep their id, s -> size(),
  /// t -> size()+1.
  int slot(int x) const;
  int node_at_slot(int slot) const;
  int num_slots() const { return size() + 2; }

 private:
  void check_node(int x) const;
  void check_extended(int x) const;

  int root_ = 0;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> leaves_, internal_, preorder_;
  std::vector<int> leaf_pos_, pre_in_, pre_out_;
  std::vector<std::vector<int>> subtree_leaves_;
};

/// Simple undirected graph on vertices 0..n-1, stored as a dense adjacency
/// matrix plus sorted neighbour lists.
class InputGraph {
 public:
  InputGraph() = default;
  explicit InputGraph(int n);
  InputGraph(int n, const std::vector<Edge>& edges);

  int size() const { return n_; }
  /// Ignores duplicates; throws on self-loops or out-of-range ids.
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  bool has_edge(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v] != 0; }
  const std::vector<int>& neighbors(int u) const { return nbr_[u]; }
  /// All edges (u, v) with u < v, lexicographic.
  std::vector<Edge> edges() const;
  int num_edges() const { return m_; }
  /// Induced subgraph on `keep`, vertices renumbered by position in `keep`.
  InputGraph induced(const VertexSet& keep) const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<int>> nbr_;
};

/// Connected components of the subgraph induced on `within`, each sorted,
/// ordered by smallest vertex.
std::vector<VertexSet> connected_components(const InputGraph& g, const VertexSet& within);

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool set_contains(const VertexSet& a, int v);

}  // namespace treespan
