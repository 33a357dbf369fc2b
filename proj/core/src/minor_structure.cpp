#include "treespan/minor_structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "treespan/errors.hpp"

namespace treespan {

VertexSet neighbors_across(const ColoredGraph& colored, const RootedTree& tree, int a, int b,
                           const VertexSet& U) {
  if (!tree.has_edge(a, b))
    throw std::invalid_argument("neighbors_across: (" + std::to_string(a) + "," + std::to_string(b) +
                                ") is not a tree edge");
  VertexSet out;
  for (int u : U) {
    if (u < 0 || u >= colored.size() || colored.color(u) != a)
      throw std::invalid_argument("neighbors_across: vertex " + std::to_string(u) +
                                  " is not in block " + std::to_string(a));
    for (int v : colored.kept().neighbors(u))
      if (colored.color(v) == b) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexSet MinorDecomposition::U_l(int l) const {
  VertexSet out;
  for (const auto& s : V_al[l]) out = set_union(out, s);
  return out;
}

VertexSet MinorDecomposition::U() const {
  VertexSet out;
  for (int l = 0; l < L; ++l) out = set_union(out, U_l(l));
  return out;
}

VertexSet MinorDecomposition::Z(const VertexSet& universe) const { return set_difference(universe, U()); }

namespace {

int new_label(MinorDecomposition& d, int nodes) {
  d.V_al.emplace_back(nodes);
  d.V_abl.emplace_back(nodes);
  return d.L++;
}

MinorDecomposition decompose_at(const ColoredGraph& g, const RootedTree& t, int a,
                                const DecomposeOptions& opt) {
  MinorDecomposition d;
  d.root = a;
  d.trace.root = a;
  const int K = t.size();
  const VertexSet& ra = g.block(a);
  const auto& kids = t.children(a);
  d.trace.children = kids;

  if (kids.empty()) {
    d.W = ra;
    d.trace.basis_path = true;
    return d;
  }

  bool depth1 = std::all_of(kids.begin(), kids.end(), [&](int b) { return t.is_leaf(b); });
  if (depth1 && opt.use_depth1_basis) {
    d.trace.basis_path = true;
    for (int b : kids) {
      d.trace.child_W.push_back(g.block(b));
      d.trace.child_U.push_back({});
    }
    for (int u : ra) {
      int missing = -1;
      for (int b : kids)
        if (neighbors_across(g, t, a, b, {u}).empty()) {
          missing = b;
          break;
        }
      if (missing < 0) {
        d.W.push_back(u);
        continue;
      }
      int l = new_label(d, K);
      d.V_al[l][a] = {u};
      d.V_abl[l][missing] = {u};
    }
    return d;
  }

  const int k = static_cast<int>(kids.size());
  std::vector<MinorDecomposition> sub;
  std::vector<VertexSet> Uj(k);
  std::vector<std::vector<VertexSet>> Ujb(k);
  VertexSet Q = ra;
  for (int j = 0; j < k; ++j) {
    sub.push_back(decompose_at(g, t, kids[j], opt));
    for (int b = 0; b < sub[j].L; ++b) Ujb[j].push_back(sub[j].U_l(b));
    Uj[j] = sub[j].U();
    Q = set_union(Q, Uj[j]);
    d.trace.child_W.push_back(sub[j].W);
    d.trace.child_U.push_back(Uj[j]);
  }
  const auto A = connected_components(g.kept(), Q);
  std::vector<std::vector<VertexSet>> B(k);
  for (int j = 0; j < k; ++j) B[j] = connected_components(g.kept(), set_union(ra, Uj[j]));

  // components nest, so membership of one vertex decides containment
  std::vector<std::vector<std::vector<int>>> E(A.size(), std::vector<std::vector<int>>(k));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (int j = 0; j < k; ++j)
      for (std::size_t s = 0; s < B[j].size(); ++s)
        if (set_contains(A[i], B[j][s].front())) E[i][j].push_back(static_cast<int>(s));
  std::vector<std::vector<std::vector<int>>> F(k);
  for (int j = 0; j < k; ++j) {
    F[j].resize(B[j].size());
    for (std::size_t s = 0; s < B[j].size(); ++s)
      for (int b = 0; b < sub[j].L; ++b)
        if (!Ujb[j][b].empty() && set_contains(B[j][s], Ujb[j][b].front()))
          F[j][s].push_back(b);
  }

  for (std::size_t i = 0; i < A.size(); ++i) {
    VertexSet root_part = set_intersection(A[i], ra);
    int chosen = -1;
    for (int j = 0; j < k; ++j)
      if (set_intersection(neighbors_across(g, t, a, kids[j], root_part), sub[j].W).empty()) {
        chosen = j;
        break;
      }
    d.trace.chosen.push_back(chosen);
    if (chosen < 0) {
      d.W = set_union(d.W, root_part);
      continue;
    }
    const int j = chosen;
    for (int s : E[i][j]) {
      int l = new_label(d, K);
      VertexSet top = set_intersection(B[j][s], ra);
      d.V_al[l][a] = top;
      d.V_abl[l][kids[j]] = top;
      for (int beta : F[j][s])
        for (int y = 0; y < K; ++y) {
          d.V_al[l][y] = set_union(d.V_al[l][y], sub[j].V_al[beta][y]);
          d.V_abl[l][y] = set_union(d.V_abl[l][y], sub[j].V_abl[beta][y]);
        }
    }
  }

  d.trace.A = A;
  d.trace.B = std::move(B);
  d.trace.E = std::move(E);
  d.trace.F = std::move(F);
  for (auto& s : sub) d.trace.sub.push_back(std::move(s.trace));
  return d;
}

std::string show(const VertexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

bool disjoint_union_equals(const std::vector<VertexSet>& parts, const VertexSet& whole) {
  std::size_t total = 0;
  VertexSet u;
  for (const auto& p : parts) {
    total += p.size();
    u = set_union(u, p);
  }
  return total == u.size() && u == whole;
}

}  // namespace

MinorDecomposition decompose(const ColoredGraph& colored, const RootedTree& tree,
                             const DecomposeOptions& options) {
  return decompose_at(colored, tree, tree.root(), options);
}

ConditionReport check_conditions(const MinorDecomposition& dec, const ColoredGraph& g,
                                 const RootedTree& t) {
  ConditionReport rep;
  rep.pass.fill(true);
  auto fail = [&](int c, const std::string& msg) {
    if (rep.pass[c]) rep.detail[c] = msg;
    rep.pass[c] = false;
  };
  const int r = t.root();

  for (int l = 0; l < dec.L; ++l) {
    for (int a = 0; a < t.size(); ++a) {
      if (t.is_leaf(a)) {
        if (!dec.V_al[l][a].empty()) fail(0, "label " + std::to_string(l) + " has a set at leaf " + std::to_string(a));
        continue;
      }
      std::vector<VertexSet> parts;
      for (int b : t.children(a)) parts.push_back(dec.V_abl[l][b]);
      if (!disjoint_union_equals(parts, dec.V_al[l][a]) ||
          !set_difference(dec.V_al[l][a], g.block(a)).empty())
        fail(0, "label " + std::to_string(l) + ", node " + std::to_string(a) + ": V_a=" +
                    show(dec.V_al[l][a]) + " is not the disjoint union of its V_ab");
      for (int b : t.children(a)) {
        VertexSet out = neighbors_across(g, t, a, b, set_intersection(dec.V_abl[l][b], g.block(a)));
        if (t.is_leaf(b)) {
          if (!out.empty())
            fail(3, "label " + std::to_string(l) + ": V_{" + std::to_string(a) + "," + std::to_string(b) +
                        "} reaches leaf block at " + show(out));
        } else {
          VertexSet back = neighbors_across(g, t, b, a, set_intersection(dec.V_al[l][b], g.block(b)));
          if (!set_difference(out, dec.V_al[l][b]).empty() ||
              !set_difference(back, dec.V_abl[l][b]).empty())
            fail(2, "label " + std::to_string(l) + ", edge (" + std::to_string(a) + "," +
                        std::to_string(b) + ") not closed");
        }
      }
    }
  }

  {
    std::vector<VertexSet> parts{dec.W};
    for (int l = 0; l < dec.L; ++l) parts.push_back(dec.V_al[l][r]);
    if (!disjoint_union_equals(parts, g.block(r))) fail(1, "W and the V_{r,l} do not partition the root block");
  }

  {
    VertexSet U = dec.U();
    auto comps = connected_components(g.kept(), U);
    std::vector<VertexSet> labels;
    for (int l = 0; l < dec.L; ++l) labels.push_back(dec.U_l(l));
    std::sort(labels.begin(), labels.end());
    if (comps != labels) fail(4, "label unions are not the components of G_c restricted to U");
  }

  {
    VertexSet all(g.size());
    std::iota(all.begin(), all.end(), 0);
    VertexSet Z = dec.Z(all);
    for (int w : dec.W)
      if (!set_contains(Z, w) || !is_good(g, Z, w, t)) fail(5, "vertex " + std::to_string(w) + " is not good");
  }
  return rep;
}

CollapsedSets collapse(const MinorDecomposition& dec, const RootedTree& tree) {
  if (!dec.W.empty())
    throw std::invalid_argument("collapse: W is non-empty, so the tree is a minor");
  CollapsedSets out;
  out.V_a.assign(tree.size(), {});
  out.V_ab.assign(tree.size(), {});
  for (int l = 0; l < dec.L; ++l)
    for (int x = 0; x < tree.size(); ++x) {
      out.V_a[x] = set_union(out.V_a[x], dec.V_al[l][x]);
      out.V_ab[x] = set_union(out.V_ab[x], dec.V_abl[l][x]);
    }
  return out;
}

std::array<bool, 4> check_collapsed(const CollapsedSets& s, const ColoredGraph& g, const RootedTree& t) {
  std::array<bool, 4> ok{true, true, true, true};
  for (int a : t.internal_nodes()) {
    std::vector<VertexSet> parts;
    for (int b : t.children(a)) parts.push_back(s.V_ab[b]);
    if (!disjoint_union_equals(parts, s.V_a[a]) || !set_difference(s.V_a[a], g.block(a)).empty())
      ok[0] = false;
    for (int b : t.children(a)) {
      VertexSet out = neighbors_across(g, t, a, b, set_intersection(s.V_ab[b], g.block(a)));
      if (t.is_leaf(b)) {
        if (!out.empty()) ok[3] = false;
      } else {
        VertexSet back = neighbors_across(g, t, b, a, set_intersection(s.V_a[b], g.block(b)));
        if (!set_difference(out, s.V_a[b]).empty() || !set_difference(back, s.V_ab[b]).empty())
          ok[2] = false;
      }
    }
  }
  if (t.size() > 1 && s.V_a[t.root()] != g.block(t.root())) ok[1] = false;
  return ok;
}

NegativeWitness negative_witness_from(const CollapsedSets& sets, const RootedTree& t,
                                      const ColoredGraph& g, const TreeProgram& tp) {
  const SpanProgram& p = tp.program();
  NegativeWitness nw;
  nw.w = Eigen::VectorXd::Zero(p.dimension());
  const double inv_l = 1.0 / t.num_leaves();
  for (int f : t.leaves()) nw.w[tp.basis_index(kSource, f)] = inv_l;
  for (int b = 0; b < t.size(); ++b) {
    if (b == t.root()) continue;
    const auto& lb = t.subtree_leaves(b);
    double c = 1.0 / static_cast<double>(lb.size());
    for (int u : sets.V_ab[b]) {
      if (g.color(u) != t.parent(b)) throw InvariantViolation("V_ab set outside block a");
      for (int f : lb) nw.w[tp.basis_index(u, f)] += c;
    }
  }
  nw.max_coefficient = nw.w.cwiseAbs().maxCoeff();
  nw.tau_overlap = p.target().dot(nw.w);
  Eigen::VectorXd aw = p.inputs().transpose() * nw.w;
  nw.size = aw.squaredNorm();
  nw.max_column = aw.size() ? aw.cwiseAbs().maxCoeff() : 0.0;
  int worst = -1;
  for (int j : p.available_indices(tp.availability()))
    if (std::abs(aw[j]) > nw.max_available) {
      nw.max_available = std::abs(aw[j]);
      worst = j;
    }
  if (std::abs(nw.tau_overlap - 1.0) > 1e-10)
    throw InvariantViolation("negative witness has <w|tau> = " + std::to_string(nw.tau_overlap));
  if (nw.max_available > 1e-10)
    throw InvariantViolation("negative witness overlaps available input " + std::to_string(worst) +
                             " by " + std::to_string(nw.max_available));
  return nw;
}

}  // namespace treespan
