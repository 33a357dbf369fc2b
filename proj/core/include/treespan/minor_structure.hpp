#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "treespan/coloring.hpp"
#include "treespan/graph_core.hpp"
#include "treespan/tree_program.hpp"

namespace treespan {

/// Largest graph the exhaustive branch-set search accepts.
inline constexpr int kMaxOracleVertices = 40;

/// N_{a->b}(U): vertices of block b adjacent in G_c to some vertex of U.
/// Throws std::invalid_argument unless (a,b) is a tree edge and U lies in block a.
VertexSet neighbors_across(const ColoredGraph& colored, const RootedTree& tree, int a, int b,
                           const VertexSet& U);

/// Branch sets {B_x} (indexed by tree node) of a model of `tree` as a minor of
/// g restricted to `allowed`: disjoint, each connected, with an edge between
/// B_x and B_y for every tree edge. If root_vertex >= 0 it must lie in the
/// root's set. Colors are ignored. Throws InstanceTooLarge beyond the guard.
std::optional<std::vector<VertexSet>> find_minor_model(const InputGraph& g, const VertexSet& allowed,
                                                       const RootedTree& tree, int root_vertex = -1);

/// True iff the branch sets form a valid model inside `allowed`.
bool is_minor_model(const InputGraph& g, const VertexSet& allowed, const RootedTree& tree,
                    const std::vector<VertexSet>& sets, int root_vertex = -1);

/// T is a minor of G_c.
bool minor_oracle(const ColoredGraph& colored, const RootedTree& tree);

/// (G_c restricted to `restriction`, u) is good: some subgraph contracts to a
/// copy of T whose root contains u. Requires u in restriction.
bool is_good(const ColoredGraph& colored, const VertexSet& restriction, int u, const RootedTree& tree);

/// Record of one level of the recursive construction.
struct DecompositionTrace {
  int root = 0;                            // tree node this level is rooted at
  bool basis_path = false;                 // produced by a basis case
  std::vector<int> children;               // d_1..d_k
  std::vector<VertexSet> child_W;          // W^j
  std::vector<VertexSet> child_U;          // U^j
  std::vector<VertexSet> A;                // components of H
  std::vector<std::vector<VertexSet>> B;   // B^j_t, per child
  std::vector<std::vector<std::vector<int>>> E;  // E[i][j] = t's with B^j_t in A_i
  std::vector<std::vector<std::vector<int>>> F;  // F[j][t] = child labels inside B^j_t
  std::vector<int> chosen;                 // per A_i: -1 if added to W, else child index j
  std::vector<DecompositionTrace> sub;     // child levels
};

/// Certificate sets W, V_{a,l}, V_{a,b,l}. Sets are indexed by global tree
/// node ids; V_{a,b,l} is stored under the child b (a = parent(b)).
struct MinorDecomposition {
  int root = 0;  // tree node the decomposition is rooted at
  int L = 0;
  VertexSet W;
  std::vector<std::vector<VertexSet>> V_al;   // [l][a]
  std::vector<std::vector<VertexSet>> V_abl;  // [l][b]
  DecompositionTrace trace;

  VertexSet U_l(int l) const;
  VertexSet U() const;
  /// Vertices of `universe` outside U.
  VertexSet Z(const VertexSet& universe) const;
};

struct DecomposeOptions {
  /// Use the dedicated per-vertex procedure for depth-1 subtrees instead of
  /// the general inductive step. Both give the same result.
  bool use_depth1_basis = true;
};

MinorDecomposition decompose(const ColoredGraph& colored, const RootedTree& tree,
                             const DecomposeOptions& options = {});

struct ConditionReport {
  std::array<bool, 6> pass{};
  std::array<std::string, 6> detail;
  bool all() const {
    for (bool p : pass)
      if (!p) return false;
    return true;
  }
};

/// Checks the six structural conditions of a decomposition. Condition 6 runs
/// the goodness oracle for every w in W.
ConditionReport check_conditions(const MinorDecomposition& dec, const ColoredGraph& colored,
                                 const RootedTree& tree);

/// V_a and V_{a,b} for the no-minor case, indexed like MinorDecomposition.
struct CollapsedSets {
  std::vector<VertexSet> V_a;   // [a]
  std::vector<VertexSet> V_ab;  // [b]
};

/// Unions over labels. Throws std::invalid_argument if W is non-empty.
CollapsedSets collapse(const MinorDecomposition& dec, const RootedTree& tree);

/// Checks the four conditions of the collapsed sets: V_a is the disjoint union
/// of its V_{a,b}; V_r is the whole root block; neighbourhoods close across
/// internal children; no neighbours into leaf children.
std::array<bool, 4> check_collapsed(const CollapsedSets& sets, const ColoredGraph& colored,
                                    const RootedTree& tree);

struct NegativeWitness {
  Eigen::VectorXd w;             // over the tree-program basis
  double tau_overlap = 0.0;      // <w|tau>
  double max_available = 0.0;    // max |<w|v_j>| over available inputs
  double max_coefficient = 0.0;  // max |mu_{u,f}|
  double max_column = 0.0;       // max |<w|v_j>| over all inputs
  double size = 0.0;             // ||A^T w||^2
};

/// Builds w = w_s + sum_{a,b} w_{a,b} in the basis of tp and verifies it.
/// Throws InvariantViolation if <w|tau> != 1 or w is not orthogonal to every
/// available input (tolerance 1e-10).
NegativeWitness negative_witness_from(const CollapsedSets& sets, const RootedTree& tree,
                                      const ColoredGraph& colored, const TreeProgram& tp);

}  // namespace treespan
