#include "treespan/graph_core.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

namespace treespan {

RootedTree::RootedTree(int nodes, int root, const std::vector<Edge>& edges) : root_(root) {
  if (nodes < 1) throw std::invalid_argument("tree must have at least one node");
  if (root < 0 || root >= nodes) throw std::invalid_argument("root out of range");
  if (static_cast<int>(edges.size()) != nodes - 1)
    throw std::invalid_argument("tree on " + std::to_string(nodes) + " nodes needs " +
                                std::to_string(nodes - 1) + " edges");
  std::vector<std::vector<int>> adj(nodes);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b)
      throw std::invalid_argument("bad tree edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());

  parent_.assign(nodes, kNoParent);
  children_.assign(nodes, {});
  std::vector<char> seen(nodes, 0);
  std::deque<int> q{root};
  seen[root] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      parent_[y] = x;
      children_[x].push_back(y);
      q.push_back(y);
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != nodes)
    throw std::invalid_argument("tree edges do not connect all nodes");

  // preorder with entry/exit stamps for ancestor queries
  pre_in_.assign(nodes, 0);
  pre_out_.assign(nodes, 0);
  std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
  pre_in_[root] = 0;
  preorder_.push_back(root);
  while (!stack.empty()) {
    auto& [x, i] = stack.back();
    if (i < children_[x].size()) {
      int c = children_[x][i++];
      pre_in_[c] = static_cast<int>(preorder_.size());
      preorder_.push_back(c);
      stack.push_back({c, 0});
    } else {
      pre_out_[x] = static_cast<int>(preorder_.size());
      stack.pop_back();
    }
  }

  leaf_pos_.assign(nodes, -1);
  for (int x = 0; x < nodes; ++x) {
    if (children_[x].empty()) {
      leaf_pos_[x] = static_cast<int>(leaves_.size());
      leaves_.push_back(x);
    } else {
      internal_.push_back(x);
    }
  }
  subtree_leaves_.assign(nodes, {});
  for (int x = 0; x < nodes; ++x)
    for (int f : leaves_)
      if (in_subtree(f, x)) subtree_leaves_[x].push_back(f);
}

RootedTree RootedTree::path(int nodes) {
  std::vector<Edge> e;
  for (int i = 1; i < nodes; ++i) e.push_back({i - 1, i});
  return RootedTree(nodes, 0, e);
}

RootedTree RootedTree::star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return RootedTree(leaves + 1, 0, e);
}

RootedTree RootedTree::complete_binary(int height) {
  int nodes = (1 << (height + 1)) - 1;
  std::vector<Edge> e;
  for (int i = 1; i < nodes; ++i) e.push_back({(i - 1) / 2, i});
  return RootedTree(nodes, 0, e);
}

void RootedTree::check_node(int x) const {
  if (x < 0 || x >= size()) throw std::out_of_range("unknown tree node " + std::to_string(x));
}

void RootedTree::check_extended(int x) const {
  if (x != kSource && x != kSink) check_node(x);
}

int RootedTree::parent(int x) const {
  check_node(x);
  return parent_[x];
}

const std::vector<int>& RootedTree::children(int x) const {
  check_node(x);
  return children_[x];
}

std::vector<Edge> RootedTree::edges() const {
  std::vector<Edge> out;
  for (int x : preorder_)
    if (x != root_) out.push_back({parent_[x], x});
  return out;
}

bool RootedTree::has_edge(int x, int y) const {
  if (x < 0 || y < 0 || x >= size() || y >= size()) return false;
  return parent_[x] == y || parent_[y] == x;
}

int RootedTree::leaf_position(int f) const {
  check_node(f);
  return leaf_pos_[f];
}

int RootedTree::height() const {
  std::vector<int> depth(size(), 0);
  int h = 0;
  for (int x : preorder_) {
    if (x != root_) depth[x] = depth[parent_[x]] + 1;
    h = std::max(h, depth[x]);
  }
  return h;
}

std::vector<int> RootedTree::subtree_nodes(int x) const {
  check_node(x);
  return {preorder_.begin() + pre_in_[x], preorder_.begin() + pre_out_[x]};
}

bool RootedTree::in_subtree(int x, int ancestor) const {
  check_node(x);
  check_node(ancestor);
  return pre_in_[ancestor] <= pre_in_[x] && pre_in_[x] < pre_out_[ancestor];
}

const std::vector<int>& RootedTree::subtree_leaves(int x) const {
  check_extended(x);
  if (x < 0) return leaves_;
  return subtree_leaves_[x];
}

bool RootedTree::adjacent(int x, int y) const {
  check_extended(x);
  check_extended(y);
  if (x == y) return false;
  if (x >= 0 && y >= 0) return has_edge(x, y);
  if (x > y) std::swap(x, y);  // now x is a sentinel
  if (y < 0) return true;      // {s, t}
  if (x == kSource) return y == root_;
  return is_leaf(y);
}

std::vector<int> RootedTree::shared_leaves(int x, int y) const {
  if (!adjacent(x, y))
    throw std::invalid_argument("shared_leaves: nodes " + std::to_string(x) + " and " +
                                std::to_string(y) + " are not adjacent");
  const auto& a = subtree_leaves(x);
  const auto& b = subtree_leaves(y);
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> RootedTree::extended_neighbors(int x) const {
  check_extended(x);
  std::vector<int> out;
  if (x == kSource) {
    out = {root_, kSink};
  } else if (x == kSink) {
    out = leaves_;
    out.push_back(kSource);
  } else {
    if (parent_[x] != kNoParent) out.push_back(parent_[x]);
    out.insert(out.end(), children_[x].begin(), children_[x].end());
    if (x == root_) out.push_back(kSource);
    if (is_leaf(x)) out.push_back(kSink);
  }
  std::sort(out.begin(), out.end(), [&](int a, int b) { return slot(a) < slot(b); });
  return out;
}

std::array<int, 2> RootedTree::flow_neighbors(int x, int f) const {
  check_extended(x);
  check_node(f);
  const auto& lx = subtree_leaves(x);
  if (!std::binary_search(lx.begin(), lx.end(), f))
    throw std::invalid_argument("flow_neighbors: " + std::to_string(f) +
                                " is not a leaf below " + std::to_string(x));
  std::array<int, 2> out{};
  int found = 0;
  for (int y : extended_neighbors(x)) {
    const auto& ly = subtree_leaves(y);
    if (std::binary_search(ly.begin(), ly.end(), f)) {
      if (found == 2) throw std::logic_error("flow_neighbors: more than two neighbours");
      out[found++] = y;
    }
  }
  if (found != 2) throw std::logic_error("flow_neighbors: fewer than two neighbours");
  return out;
}

int RootedTree::slot(int x) const {
  check_extended(x);
  if (x == kSource) return size();
  if (x == kSink) return size() + 1;
  return x;
}

int RootedTree::node_at_slot(int s) const {
  if (s < 0 || s >= num_slots()) throw std::out_of_range("slot out of range");
  if (s == size()) return kSource;
  if (s == size() + 1) return kSink;
  return s;
}

InputGraph::InputGraph(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
  nbr_.assign(n, {});
}

InputGraph::InputGraph(int n, const std::vector<Edge>& edges) : InputGraph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void InputGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw std::out_of_range("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  if (has_edge(u, v)) return;
  adj_[static_cast<std::size_t>(u) * n_ + v] = adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
  nbr_[u].insert(std::lower_bound(nbr_[u].begin(), nbr_[u].end(), v), v);
  nbr_[v].insert(std::lower_bound(nbr_[v].begin(), nbr_[v].end(), u), u);
  ++m_;
}

void InputGraph::remove_edge(int u, int v) {
  if (!has_edge(u, v)) return;
  adj_[static_cast<std::size_t>(u) * n_ + v] = adj_[static_cast<std::size_t>(v) * n_ + u] = 0;
  nbr_[u].erase(std::lower_bound(nbr_[u].begin(), nbr_[u].end(), v));
  nbr_[v].erase(std::lower_bound(nbr_[v].begin(), nbr_[v].end(), u));
  --m_;
}

std::vector<Edge> InputGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u)
    for (int v : nbr_[u])
      if (u < v) out.push_back({u, v});
  return out;
}

InputGraph InputGraph::induced(const VertexSet& keep) const {
  InputGraph h(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      if (has_edge(keep[i], keep[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
  return h;
}

std::vector<VertexSet> connected_components(const InputGraph& g, const VertexSet& within) {
  std::vector<char> allowed(g.size(), 0), seen(g.size(), 0);
  for (int v : within) allowed[v] = 1;
  std::vector<VertexSet> out;
  for (int v : within) {
    if (seen[v]) continue;
    VertexSet comp;
    std::vector<int> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : g.neighbors(u))
        if (allowed[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const VertexSet& a, int v) { return std::binary_search(a.begin(), a.end(), v); }

}  // namespace treespan
