#include "treespan/coloring.hpp"

#include <stdexcept>
#include <string>

#include "treespan/random.hpp"

namespace treespan {

Coloring random_coloring(const InputGraph& graph, const RootedTree& tree, std::uint64_t seed) {
  CounterRng rng(seed);
  Coloring c;
  c.seed = seed;
  c.colors.resize(graph.size());
  for (int u = 0; u < graph.size(); ++u)
    c.colors[u] = static_cast<int>(rng.below(static_cast<std::uint64_t>(tree.size())));
  return c;
}

ColoredGraph::ColoredGraph(InputGraph base, Coloring coloring, const RootedTree& tree)
    : base_(std::move(base)), coloring_(std::move(coloring)), kept_(base_.size()) {
  if (static_cast<int>(coloring_.colors.size()) != base_.size())
    throw std::invalid_argument("coloring has " + std::to_string(coloring_.colors.size()) +
                                " entries for " + std::to_string(base_.size()) + " vertices");
  blocks_.assign(tree.size(), {});
  for (int u = 0; u < base_.size(); ++u) {
    int x = coloring_.colors[u];
    if (x < 0 || x >= tree.size())
      throw std::invalid_argument("vertex " + std::to_string(u) + " has color " +
                                  std::to_string(x) + " outside the tree");
    blocks_[x].push_back(u);
  }
  for (auto [u, v] : base_.edges())
    if (tree.has_edge(color(u), color(v))) kept_.add_edge(u, v);
}

std::vector<Edge> ColoredGraph::removed_edges() const {
  std::vector<Edge> out;
  for (auto e : base_.edges())
    if (!kept_.has_edge(e.first, e.second)) out.push_back(e);
  return out;
}

ColoredGraph apply_coloring(const InputGraph& graph, const Coloring& coloring, const RootedTree& tree) {
  return ColoredGraph(graph, coloring, tree);
}

AugmentedGraph augment(const ColoredGraph& colored, const RootedTree& tree) {
  int n = colored.size();
  AugmentedGraph a{InputGraph(n + 2, colored.kept_edges()), n, n + 1};
  for (int u : colored.block(tree.root())) a.graph.add_edge(a.source, u);
  for (int f : tree.leaves())
    for (int u : colored.block(f)) a.graph.add_edge(u, a.sink);
  return a;
}

namespace {

bool extend(const ColoredGraph& g, const RootedTree& tree, const std::vector<int>& order,
            std::size_t pos, std::vector<int>& iota) {
  if (pos == order.size()) return true;
  int x = order[pos];
  // blocks are disjoint, so injectivity is automatic
  for (int u : g.block(x)) {
    if (x != tree.root() && !g.kept().has_edge(u, iota[tree.parent(x)])) continue;
    iota[x] = u;
    if (extend(g, tree, order, pos + 1, iota)) return true;
  }
  iota[x] = -1;
  return false;
}

}  // namespace

std::optional<std::vector<int>> correctly_colored_subgraph(const ColoredGraph& colored,
                                                           const RootedTree& tree) {
  std::vector<int> iota(tree.size(), -1);
  if (extend(colored, tree, tree.preorder(), 0, iota)) return iota;
  return std::nullopt;
}

bool is_correct_embedding(const ColoredGraph& colored, const RootedTree& tree,
                          const std::vector<int>& iota) {
  if (static_cast<int>(iota.size()) != tree.size()) return false;
  for (int x = 0; x < tree.size(); ++x)
    if (iota[x] < 0 || iota[x] >= colored.size() || colored.color(iota[x]) != x) return false;
  for (auto [a, b] : tree.edges())
    if (!colored.kept().has_edge(iota[a], iota[b])) return false;
  return true;
}

}  // namespace treespan
