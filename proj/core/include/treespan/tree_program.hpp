#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "treespan/coloring.hpp"
#include "treespan/graph_core.hpp"
#include "treespan/span_program.hpp"

namespace treespan {

/// Tree-detection span program over the basis (u, f), u in {s, t} ∪ V_G and
/// f a leaf. Basis index = slot(u) * L + leaf_position(f) with s at slot 0,
/// t at slot 1 and vertex v at slot v + 2.
///
/// Inputs are ordered: free (s,u) vectors for the root block, free (u,t)
/// vectors for leaf blocks, then one labeled vector per candidate edge.
/// Candidate edges are all vertex pairs in tree-adjacent blocks, ordered
/// lexicographically as (min, max); candidate i reads variable i, and the
/// variable is 1 exactly when the edge survives the coloring.
class TreeProgram {
 public:
  const RootedTree& tree() const { return tree_; }
  const std::vector<int>& colors() const { return colors_; }
  int num_vertices() const { return static_cast<int>(colors_.size()); }
  int num_leaves() const { return tree_.num_leaves(); }
  int basis_index(int u, int f) const;

  const SpanProgram& program() const { return program_; }
  const Availability& availability() const { return availability_; }
  const std::vector<Edge>& candidates() const { return candidates_; }
  /// Variable of candidate edge {u, v}, or -1 if the pair is not a candidate.
  int candidate_variable(int u, int v) const;
  /// Input index of candidate edge {u, v}, or -1.
  int edge_input(int u, int v) const;
  /// Free (s, u) input for u in the root block, or -1.
  int source_input(int u) const { return source_input_[u]; }
  /// Free (u, t) input for u in a leaf block, or -1.
  int sink_input(int u) const { return sink_input_[u]; }

  /// Availability for an arbitrary kept-edge set over the same coloring.
  Availability availability_for(const InputGraph& kept) const;

 private:
  friend TreeProgram build_tree_program(const RootedTree&, const ColoredGraph&);
  RootedTree tree_;
  std::vector<int> colors_;
  SpanProgram program_;
  Availability availability_;
  std::vector<Edge> candidates_;
  std::vector<int> cand_lookup_;  // n*n -> variable
  std::vector<int> source_input_, sink_input_;
  int first_labeled_ = 0;
};

TreeProgram build_tree_program(const RootedTree& tree, const ColoredGraph& colored);

/// Coefficients (over all inputs) of the witness that puts +1 on (s, iota(r)),
/// on every embedded tree edge, and on every (iota(f), t). Throws
/// InfeasibleWitness if an embedded edge is not available.
Eigen::VectorXd positive_witness_from_embedding(const TreeProgram& tp, const std::vector<int>& iota);

/// (x, k, f) with x an extended node id (kSource/kSink allowed), k a 0-based
/// position in the padded block, f a leaf.
struct IIndex {
  int x, k, f;
};
/// Directed edge (x1, k1) -> (x2, k2) between adjacent padded blocks.
struct JIndex {
  int x1, k1, x2, k2;
};

/// Marks a padding position in NormalizedProgram::vertex_at.
inline constexpr int kPadding = -4;

/// What availability governs a column of V.
enum class ColumnKind {
  Target,     // the scaled target column tau~, treated as always available
  Gamma,      // never available
  Free,       // real edge incident to s or t
  Candidate,  // real edge between tree blocks; reads a variable
  Dummy,      // touches a padding vertex; never available
};

/// Padded, unit-normalized version of the tree program: every block (s and t
/// included) padded to n vertices, dummies at the high positions, every edge
/// represented in both orientations, target split into tau~ and gamma.
class NormalizedProgram {
 public:
  const RootedTree& tree() const { return tree_; }
  int n() const { return n_; }
  double alpha() const { return alpha_; }
  double C() const { return c_; }
  double w1() const { return w1_; }
  int num_variables() const { return num_variables_; }

  const std::vector<IIndex>& I() const { return i_; }
  const std::vector<JIndex>& J() const { return j_; }
  /// Index in I, or -1 if (x, k, f) is outside the family.
  int i_index(int x, int k, int f) const;
  /// Index in J, or -1 if x1 and x2 are not adjacent.
  int j_index(int x1, int k1, int x2, int k2) const;
  int tau_index() const { return tau_; }
  int gamma_index() const { return gamma_; }

  /// |I| x |J|.
  const Eigen::SparseMatrix<double>& V() const { return v_; }
  Eigen::MatrixXd dense_V() const { return Eigen::MatrixXd(v_); }

  /// Graph vertex at padded position (x, k); kPadding for dummies. For s and
  /// t only k = 0 is real and maps to kSource/kSink.
  int vertex_at(int x, int k) const;
  ColumnKind kind(int j) const { return kind_[j]; }
  /// Variable read by a Candidate column, else -1.
  int variable(int j) const { return var_[j]; }

  /// Availability of each column of V on input x (tau~ counts as available).
  std::vector<bool> available_columns(const Availability& x) const;

  /// Span program with target alpha * tau~ and every other column as input.
  /// Gamma and dummy columns are labeled by an extra variable that is always
  /// 0; use lift() to extend an availability vector with it.
  SpanProgram as_span_program() const;
  Availability lift(const Availability& x) const;

 private:
  friend NormalizedProgram build_normalized_program(const TreeProgram&, double, double, int);
  RootedTree tree_;
  int n_ = 0;
  double alpha_ = 0, c_ = 0, w1_ = 0;
  int num_variables_ = 0;
  std::vector<IIndex> i_;
  std::vector<JIndex> j_;
  std::vector<int> i_offset_, pair_offset_, pair_lookup_;
  std::vector<std::vector<int>> vertex_;  // slot -> k -> vertex
  std::vector<ColumnKind> kind_;
  std::vector<int> var_;
  int tau_ = -1, gamma_ = -1;
  Eigen::SparseMatrix<double> v_;
};

/// Default positive-witness bound used for alpha: |E_T|, floored at 1.
double default_w1(const RootedTree& tree);

/// Pads every block to size n; n = 0 means the vertex count of the graph.
/// n must cover the largest block. Requires C > 10 and C * sqrt(W1) > 1.
NormalizedProgram build_normalized_program(const TreeProgram& tp, double w1_bound,
                                           double C = 11.0, int n = 0);

/// Smallest block size that fits every color class of tp.
int min_block_size(const TreeProgram& tp);

}  // namespace treespan
