#include "treespan/instance_lab.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "treespan/minor_structure.hpp"
#include "treespan/random.hpp"
#include "treespan/span_program.hpp"
#include "treespan/tree_program.hpp"

namespace treespan {

const char* label_name(Label l) {
  switch (l) {
    case Label::Positive: return "POSITIVE";
    case Label::Negative: return "NEGATIVE";
    case Label::OutsidePromise: return "OUTSIDE_PROMISE";
  }
  return "?";
}

Label parse_label(const std::string& s) {
  for (Label l : {Label::Positive, Label::Negative, Label::OutsidePromise})
    if (s == label_name(l)) return l;
  throw std::invalid_argument("unknown label '" + s + "'");
}

Label derive_label(const InputGraph& graph, const RootedTree& tree, const Coloring& coloring) {
  ColoredGraph cg(graph, coloring, tree);
  if (correctly_colored_subgraph(cg, tree)) return Label::Positive;
  if (!minor_oracle(cg, tree)) return Label::Negative;
  return Label::OutsidePromise;
}

RootedTree random_tree(int nodes, std::uint64_t seed) {
  if (nodes < 1) throw std::invalid_argument("random_tree needs at least one node");
  CounterRng rng(seed, 0x7EE);
  std::vector<Edge> e;
  for (int i = 1; i < nodes; ++i) e.push_back({static_cast<int>(rng.below(i)), i});
  return RootedTree(nodes, 0, e);
}

namespace {

std::vector<int> shuffled(int n, CounterRng& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.below(i + 1)]);
  return p;
}

bool colors_adjacent(const RootedTree& t, int a, int b) { return a != b && t.has_edge(a, b); }

}  // namespace

PromiseInstance gen_positive(const RootedTree& tree, int n, std::uint64_t seed, double noise) {
  const int k = tree.size();
  if (n < k) throw std::invalid_argument("gen_positive needs n >= |V_T|");
  CounterRng rng(seed, 1);
  std::vector<int> perm = shuffled(n, rng);
  Coloring col{seed, std::vector<int>(n, 0)};
  for (int x = 0; x < k; ++x) col.colors[perm[x]] = x;
  for (int i = k; i < n; ++i) col.colors[perm[i]] = static_cast<int>(rng.below(k));
  InputGraph g(n);
  for (auto [a, b] : tree.edges()) g.add_edge(perm[a], perm[b]);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double p = colors_adjacent(tree, col.colors[u], col.colors[v]) ? noise : noise / 2;
      if (rng.bernoulli(p)) g.add_edge(u, v);
    }
  PromiseInstance inst{g, tree, col, Label::Positive, {"gen_positive", seed}};
  inst.label = derive_label(g, tree, col);
  if (inst.label != Label::Positive) throw std::logic_error("planted instance failed the subgraph oracle");
  return inst;
}

PromiseInstance gen_negative(const RootedTree& tree, int n, std::uint64_t seed, int budget) {
  CounterRng rng(seed, 2);
  for (int attempt = 0; attempt < budget; ++attempt) {
    Coloring col{seed, std::vector<int>(n)};
    for (int& c : col.colors) c = static_cast<int>(rng.below(tree.size()));
    double p = 0.05 + 0.5 * rng.uniform();
    InputGraph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.bernoulli(p)) g.add_edge(u, v);
    ColoredGraph cg(g, col, tree);
    if (!minor_oracle(cg, tree)) {
      col.seed = seed;
      return PromiseInstance{g, tree, col, Label::Negative, {"gen_negative", seed}};
    }
  }
  throw std::runtime_error("gen_negative: sampling budget of " + std::to_string(budget) +
                           " exhausted for seed " + std::to_string(seed));
}

RootedTree binary7() { return RootedTree::complete_binary(2); }

namespace {

// u_i in the listings below is vertex i-1
InputGraph from_listing(int n, std::initializer_list<std::pair<int, int>> edges) {
  InputGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u - 1, v - 1);
  return g;
}

bool accepts(const PromiseInstance& inst) {
  ColoredGraph cg = inst.colored();
  TreeProgram tp = build_tree_program(inst.tree, cg);
  return evaluate(tp.program(), tp.availability()).accepted;
}

}  // namespace

PromiseInstance worked_example() {
  // r: u1,u2  d1: u3,u4  d2: u5,u6  f1: u7  f2: u8,u9  f3: u10,u11  f4: u12
  Coloring col{0, {0, 0, 1, 1, 2, 2, 3, 4, 4, 5, 5, 6}};
  InputGraph g = from_listing(12, {{1, 3}, {1, 6}, {3, 7}, {3, 9}, {6, 11}, {6, 12}, {2, 8}});
  PromiseInstance inst{g, binary7(), col, Label::Positive, {"worked_example", 0}};
  inst.label = derive_label(g, inst.tree, col);
  return inst;
}

PromiseInstance counterexample_reconstruction(int spare_color) {
  if (spare_color < 0 || spare_color >= 7) throw std::invalid_argument("spare color outside binary7");
  // r: u1,u2,u3  d1: u5,u7  d2: u6,u8  f1..f4: u9..u12  u4 isolated
  Coloring col{static_cast<std::uint64_t>(spare_color), {0, 0, 0, spare_color, 1, 2, 1, 2, 3, 4, 5, 6}};
  InputGraph g = from_listing(12, {{1, 5}, {1, 6}, {2, 6}, {2, 7}, {3, 7}, {3, 8}, {5, 9}, {5, 10}, {8, 11}, {8, 12}});
  PromiseInstance inst{g, binary7(), col, Label::OutsidePromise, {"counterexample_reconstruction",
                                                                   static_cast<std::uint64_t>(spare_color)}};
  inst.label = derive_label(g, inst.tree, col);
  return inst;
}

PromiseInstance gen_counterexample(std::uint64_t seed, int budget) {
  PromiseInstance rec = counterexample_reconstruction(static_cast<int>(seed % 7));
  if (rec.label == Label::OutsidePromise && accepts(rec)) {
    rec.provenance = {"gen_counterexample", seed};
    return rec;
  }
  // layered search with the same color classes
  const std::vector<int> colors{0, 0, 0, 0, 1, 2, 1, 2, 3, 4, 5, 6};
  RootedTree t = binary7();
  CounterRng rng(seed, 3);
  for (int attempt = 0; attempt < budget; ++attempt) {
    double p = 0.2 + 0.4 * rng.uniform();
    InputGraph g(12);
    for (int u = 0; u < 12; ++u)
      for (int v = u + 1; v < 12; ++v)
        if (colors_adjacent(t, colors[u], colors[v]) && rng.bernoulli(p)) g.add_edge(u, v);
    PromiseInstance inst{g, t, Coloring{seed, colors}, Label::OutsidePromise, {"gen_counterexample", seed}};
    inst.label = derive_label(g, t, inst.coloring);
    if (inst.label == Label::OutsidePromise && accepts(inst)) return inst;
  }
  throw std::runtime_error("gen_counterexample: no accepting minor-only instance within budget");
}

PromiseInstance bad_vertex_example() {
  RootedTree t = RootedTree::complete_binary(3);
  // r: u1-u3  d1: u4,u5  d2: u6,u7  b1..b4: u8..u11  leaves 7..14: u12..u19
  std::vector<int> c{0, 0, 0, 1, 1, 2, 2, 3, 4, 5, 6};
  for (int leaf = 7; leaf <= 14; ++leaf) c.push_back(leaf);
  InputGraph g = from_listing(19, {{1, 4}, {3, 5}, {1, 6}, {2, 6}, {2, 7}, {4, 8}, {4, 9}, {5, 9},
                                   {6, 10}, {8, 12}, {8, 13}, {9, 14}, {9, 15}, {10, 16}, {10, 17},
                                   {11, 18}, {11, 19}});
  PromiseInstance inst{g, t, Coloring{0, c}, Label::Negative, {"bad_vertex_example", 0}};
  inst.label = derive_label(g, t, inst.coloring);
  return inst;
}

RootedTree good_root_tree() {
  return RootedTree(8, 0, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}, {6, 7}});
}

PromiseInstance good_root_example() {
  // r: u1-u3  d1: u4-u6  d2: u7,u8  d3: u9-u11  p: u12,u13  q: u14  e: u15,u19
  // g: u16  u17, u18 isolated (colored r)
  std::vector<int> c{0, 0, 0, 1, 1, 1, 2, 2, 3, 3, 3, 4, 4, 5, 6, 7, 0, 0, 6};
  InputGraph g = from_listing(19, {{1, 6}, {2, 6}, {2, 9}, {3, 10}, {9, 19}, {10, 19}, {1, 4}, {3, 7},
                                   {2, 11}, {4, 13}, {5, 13}, {7, 14}, {11, 15}, {15, 16}});
  PromiseInstance inst{g, good_root_tree(), Coloring{0, c}, Label::OutsidePromise, {"good_root_example", 0}};
  inst.label = derive_label(g, inst.tree, inst.coloring);
  return inst;
}

}  // namespace treespan
