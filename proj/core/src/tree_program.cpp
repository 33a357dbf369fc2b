#include "treespan/tree_program.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "treespan/errors.hpp"

namespace treespan {

using Eigen::MatrixXd;
using Eigen::VectorXd;

int TreeProgram::basis_index(int u, int f) const {
  int slot;
  if (u == kSource) {
    slot = 0;
  } else if (u == kSink) {
    slot = 1;
  } else {
    if (u < 0 || u >= num_vertices()) throw std::out_of_range("vertex out of range");
    slot = u + 2;
  }
  int pos = tree_.leaf_position(f);
  if (pos < 0) throw std::invalid_argument("node " + std::to_string(f) + " is not a leaf");
  return slot * tree_.num_leaves() + pos;
}

int TreeProgram::candidate_variable(int u, int v) const {
  int n = num_vertices();
  if (u < 0 || v < 0 || u >= n || v >= n) return -1;
  return cand_lookup_[static_cast<std::size_t>(u) * n + v];
}

int TreeProgram::edge_input(int u, int v) const {
  int var = candidate_variable(u, v);
  return var < 0 ? -1 : first_labeled_ + var;
}

Availability TreeProgram::availability_for(const InputGraph& kept) const {
  Availability x(candidates_.size(), false);
  for (std::size_t i = 0; i < candidates_.size(); ++i)
    x[i] = kept.has_edge(candidates_[i].first, candidates_[i].second);
  return x;
}

TreeProgram build_tree_program(const RootedTree& tree, const ColoredGraph& colored) {
  TreeProgram tp;
  tp.tree_ = tree;
  tp.colors_ = colored.coloring().colors;
  const int n = colored.size();
  const int L = tree.num_leaves();
  const int d = L * (n + 2);

  std::vector<VectorXd> cols;
  std::vector<InputLabel> labels;
  auto leaf_sum = [&](int u, const std::vector<int>& leaves, double sign, VectorXd& v) {
    for (int f : leaves) v[tp.basis_index(u, f)] += sign;
  };

  tp.source_input_.assign(n, -1);
  tp.sink_input_.assign(n, -1);
  for (int u : colored.block(tree.root())) {
    VectorXd v = VectorXd::Zero(d);
    leaf_sum(kSource, tree.leaves(), 1.0, v);
    leaf_sum(u, tree.leaves(), -1.0, v);
    tp.source_input_[u] = static_cast<int>(cols.size());
    cols.push_back(std::move(v));
    labels.push_back({});
  }
  for (int f : tree.leaves())
    for (int u : colored.block(f)) {
      VectorXd v = VectorXd::Zero(d);
      v[tp.basis_index(u, f)] = 1.0;
      v[tp.basis_index(kSink, f)] = -1.0;
      tp.sink_input_[u] = static_cast<int>(cols.size());
      cols.push_back(std::move(v));
      labels.push_back({});
    }
  tp.first_labeled_ = static_cast<int>(cols.size());

  tp.cand_lookup_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int cu = colored.color(u), cv = colored.color(v);
      if (!tree.has_edge(cu, cv)) continue;
      int var = static_cast<int>(tp.candidates_.size());
      tp.candidates_.push_back({u, v});
      tp.cand_lookup_[static_cast<std::size_t>(u) * n + v] = var;
      tp.cand_lookup_[static_cast<std::size_t>(v) * n + u] = var;
      // orient parent-side minus child-side
      int up = u, dn = v;
      if (tree.parent(cu) == cv) std::swap(up, dn);
      VectorXd col = VectorXd::Zero(d);
      const auto& s = tree.subtree_leaves(colored.color(dn));
      leaf_sum(up, s, 1.0, col);
      leaf_sum(dn, s, -1.0, col);
      cols.push_back(std::move(col));
      labels.push_back({var, true});
    }

  VectorXd tau = VectorXd::Zero(d);
  leaf_sum(kSource, tree.leaves(), 1.0, tau);
  leaf_sum(kSink, tree.leaves(), -1.0, tau);
  MatrixXd a(d, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) a.col(j) = cols[j];
  tp.program_ = SpanProgram(std::move(tau), std::move(a), std::move(labels),
                            static_cast<int>(tp.candidates_.size()));
  tp.availability_ = tp.availability_for(colored.kept());
  return tp;
}

VectorXd positive_witness_from_embedding(const TreeProgram& tp, const std::vector<int>& iota) {
  const RootedTree& t = tp.tree();
  if (static_cast<int>(iota.size()) != t.size())
    throw std::invalid_argument("embedding must map every tree node");
  VectorXd w = VectorXd::Zero(tp.program().num_inputs());
  int s = tp.source_input(iota[t.root()]);
  if (s < 0) throw InfeasibleWitness("embedded root is not in the root block");
  w[s] = 1.0;
  for (auto [a, b] : t.edges()) {
    int var = tp.candidate_variable(iota[a], iota[b]);
    if (var < 0 || !tp.availability()[var])
      throw InfeasibleWitness("embedded edge (" + std::to_string(iota[a]) + "," +
                              std::to_string(iota[b]) + ") is not available");
    w[tp.edge_input(iota[a], iota[b])] = 1.0;
  }
  for (int f : t.leaves()) {
    int k = tp.sink_input(iota[f]);
    if (k < 0) throw InfeasibleWitness("embedded leaf is not in its leaf block");
    w[k] = 1.0;
  }
  return w;
}

// ---------------------------------------------------------------------------

double default_w1(const RootedTree& tree) { return std::max(1, tree.num_edges()); }

int min_block_size(const TreeProgram& tp) {
  std::vector<int> count(tp.tree().size(), 0);
  for (int c : tp.colors()) ++count[c];
  return std::max(1, *std::max_element(count.begin(), count.end()));
}

int NormalizedProgram::i_index(int x, int k, int f) const {
  int s = tree_.slot(x);
  if (k < 0 || k >= n_) return -1;
  const auto& lx = tree_.subtree_leaves(x);
  auto it = std::lower_bound(lx.begin(), lx.end(), f);
  if (it == lx.end() || *it != f) return -1;
  return i_offset_[s] + k * static_cast<int>(lx.size()) + static_cast<int>(it - lx.begin());
}

int NormalizedProgram::j_index(int x1, int k1, int x2, int k2) const {
  int p = pair_lookup_[tree_.slot(x1) * tree_.num_slots() + tree_.slot(x2)];
  if (p < 0 || k1 < 0 || k2 < 0 || k1 >= n_ || k2 >= n_) return -1;
  return pair_offset_[p] + k1 * n_ + k2;
}

int NormalizedProgram::vertex_at(int x, int k) const { return vertex_[tree_.slot(x)][k]; }

std::vector<bool> NormalizedProgram::available_columns(const Availability& x) const {
  if (static_cast<int>(x.size()) != num_variables_)
    throw std::invalid_argument("availability length mismatch");
  std::vector<bool> out(j_.size(), false);
  for (std::size_t j = 0; j < j_.size(); ++j) {
    switch (kind_[j]) {
      case ColumnKind::Target:
      case ColumnKind::Free: out[j] = true; break;
      case ColumnKind::Candidate: out[j] = x[var_[j]]; break;
      default: break;
    }
  }
  return out;
}

SpanProgram NormalizedProgram::as_span_program() const {
  MatrixXd dense(v_);
  VectorXd target = alpha_ * dense.col(tau_);
  MatrixXd inputs(dense.rows(), dense.cols() - 1);
  std::vector<InputLabel> labels;
  int never = num_variables_;
  for (int j = 0, c = 0; j < static_cast<int>(j_.size()); ++j) {
    if (j == tau_) continue;
    inputs.col(c++) = dense.col(j);
    switch (kind_[j]) {
      case ColumnKind::Free: labels.push_back({}); break;
      case ColumnKind::Candidate: labels.push_back({var_[j], true}); break;
      default: labels.push_back({never, true}); break;
    }
  }
  return SpanProgram(std::move(target), std::move(inputs), std::move(labels), num_variables_ + 1);
}

Availability NormalizedProgram::lift(const Availability& x) const {
  Availability out = x;
  out.push_back(false);
  return out;
}

NormalizedProgram build_normalized_program(const TreeProgram& tp, double w1_bound, double C, int n) {
  const RootedTree& t = tp.tree();
  if (n == 0) n = std::max(1, tp.num_vertices());
  if (n < min_block_size(tp))
    throw std::invalid_argument("block size " + std::to_string(n) + " is smaller than a color class");
  if (!(w1_bound > 0)) throw std::invalid_argument("W1 bound must be positive");
  if (!(C > 10.0) || !(C * std::sqrt(w1_bound) > 1.0))
    throw std::invalid_argument("constant C must exceed 10 and make alpha exceed 1");

  NormalizedProgram np;
  np.tree_ = t;
  np.n_ = n;
  np.c_ = C;
  np.w1_ = w1_bound;
  np.alpha_ = C * std::sqrt(w1_bound);
  np.num_variables_ = static_cast<int>(tp.candidates().size());
  const int S = t.num_slots();

  np.vertex_.assign(S, std::vector<int>(n, kPadding));
  std::vector<std::vector<int>> blocks(t.size());
  for (int u = 0; u < tp.num_vertices(); ++u) blocks[tp.colors()[u]].push_back(u);
  for (int x = 0; x < t.size(); ++x)
    for (std::size_t k = 0; k < blocks[x].size(); ++k) np.vertex_[x][k] = blocks[x][k];
  np.vertex_[t.slot(kSource)][0] = kSource;
  np.vertex_[t.slot(kSink)][0] = kSink;

  // I in (slot, k, leaf) order
  np.i_offset_.assign(S, 0);
  for (int s = 0; s < S; ++s) {
    int x = t.node_at_slot(s);
    np.i_offset_[s] = static_cast<int>(np.i_.size());
    for (int k = 0; k < n; ++k)
      for (int f : t.subtree_leaves(x)) np.i_.push_back({x, k, f});
  }

  // J in (slot1, neighbour slot, k1, k2) order
  np.pair_lookup_.assign(S * S, -1);
  std::vector<std::pair<int, int>> pairs;
  for (int s = 0; s < S; ++s) {
    int x = t.node_at_slot(s);
    for (int y : t.extended_neighbors(x)) {
      np.pair_lookup_[s * S + t.slot(y)] = static_cast<int>(pairs.size());
      np.pair_offset_.push_back(static_cast<int>(np.j_.size()));
      pairs.push_back({x, y});
      for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = 0; k2 < n; ++k2) np.j_.push_back({x, k1, y, k2});
    }
  }

  const double beta = std::sqrt(1.0 - 1.0 / (np.alpha_ * np.alpha_));
  const double inv_sqrt_l = 1.0 / std::sqrt(static_cast<double>(t.num_leaves()));
  std::vector<Eigen::Triplet<double>> trip;
  np.kind_.resize(np.j_.size());
  np.var_.assign(np.j_.size(), -1);
  for (int j = 0; j < static_cast<int>(np.j_.size()); ++j) {
    auto [x1, k1, x2, k2] = np.j_[j];
    int u1 = np.vertex_at(x1, k1), u2 = np.vertex_at(x2, k2);
    bool special = k1 == 0 && k2 == 0 && x1 < 0 && x2 < 0;
    if (special) {
      bool tau = x1 == kSource;
      if (tau) np.tau_ = j; else np.gamma_ = j;
      np.kind_[j] = tau ? ColumnKind::Target : ColumnKind::Gamma;
      double w = tau ? 1.0 / np.alpha_ : beta;
      // tau~ = w (e_s - e_t), gamma = w (e_t - e_s); both equal w (e_x1 - e_x2)
      for (int f : t.leaves()) {
        trip.emplace_back(np.i_index(x1, 0, f), j, w * inv_sqrt_l);
        trip.emplace_back(np.i_index(x2, 0, f), j, -w * inv_sqrt_l);
      }
      continue;
    }
    if (u1 == kPadding || u2 == kPadding) {
      np.kind_[j] = ColumnKind::Dummy;
    } else if (x1 < 0 || x2 < 0) {
      np.kind_[j] = ColumnKind::Free;
    } else {
      np.kind_[j] = ColumnKind::Candidate;
      np.var_[j] = tp.candidate_variable(u1, u2);
      if (np.var_[j] < 0) throw InvariantViolation("real edge missing from candidate list");
    }
    auto shared = t.shared_leaves(x1, x2);
    double w = 1.0 / std::sqrt(2.0 * static_cast<double>(shared.size()));
    for (int f : shared) {
      trip.emplace_back(np.i_index(x1, k1, f), j, w);
      trip.emplace_back(np.i_index(x2, k2, f), j, -w);
    }
  }
  np.v_.resize(static_cast<Eigen::Index>(np.i_.size()), static_cast<Eigen::Index>(np.j_.size()));
  np.v_.setFromTriplets(trip.begin(), trip.end());
  return np;
}

}  // namespace treespan
