// Exhaustive branch-set search for rooted tree minors on small graphs.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "treespan/errors.hpp"
#include "treespan/minor_structure.hpp"

namespace treespan {

namespace {

using Mask = std::uint64_t;

inline Mask bit(int v) { return Mask{1} << v; }
inline int lowest(Mask m) { return std::countr_zero(m); }

struct KeyHash {
  std::size_t operator()(const std::vector<Mask>& k) const {
    std::size_t h = 0x9E3779B97F4A7C15ULL;
    for (Mask m : k) h ^= std::hash<Mask>{}(m) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class BranchSearch {
 public:
  BranchSearch(const InputGraph& g, Mask allowed, const RootedTree& t, int root_vertex)
      : t_(t), order_(t.preorder()), allowed_(allowed), root_vertex_(root_vertex) {
    nbr_.assign(g.size(), 0);
    for (int u = 0; u < g.size(); ++u)
      for (int v : g.neighbors(u)) nbr_[u] |= bit(v);
    pos_.assign(t.size(), 0);
    for (std::size_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = static_cast<int>(i);
    last_child_pos_.assign(t.size(), -1);
    for (int x = 0; x < t.size(); ++x)
      for (int c : t.children(x)) last_child_pos_[x] = std::max(last_child_pos_[x], pos_[c]);
    sets_.assign(t.size(), 0);
  }

  bool run() { return place(0, 0); }
  const std::vector<Mask>& sets() const { return sets_; }

 private:
  Mask neighbourhood(Mask s) const {
    Mask out = 0;
    for (Mask m = s; m; m &= m - 1) out |= nbr_[lowest(m)];
    return out & ~s;
  }

  // Calls visit(C) for every connected C with seed in C, C inside pool, no
  // vertex of `excluded`, |C| <= cap. Each set is produced once: at every
  // step the lowest extension vertex is either taken or excluded for good.
  template <class Visit>
  bool enumerate(Mask c, Mask ext, Mask excluded, Mask pool, int cap, Visit& visit) const {
    if (visit(c)) return true;
    if (std::popcount(c) >= cap) return false;
    Mask x = excluded;
    while (ext) {
      int v = lowest(ext);
      ext &= ext - 1;
      Mask next = (ext | (nbr_[v] & pool & ~c & ~x)) & ~bit(v);
      if (enumerate(c | bit(v), next, x, pool, cap, visit)) return true;
      x |= bit(v);
    }
    return false;
  }

  std::vector<Mask> memo_key(int idx, Mask used) const {
    std::vector<Mask> key{static_cast<Mask>(idx), used};
    for (int i = 0; i < idx; ++i) {
      int y = order_[i];
      if (last_child_pos_[y] >= idx) key.push_back(sets_[y]);
    }
    return key;
  }

  bool place(int idx, Mask used) {
    int k = static_cast<int>(order_.size());
    if (idx == k) return true;
    Mask free = allowed_ & ~used;
    int remaining = k - idx;
    int nfree = std::popcount(free);
    if (nfree < remaining) return false;
    auto key = memo_key(idx, used);
    if (failed_.count(key)) return false;

    int x = order_[idx];
    bool is_root = x == t_.root();
    Mask seeds;
    if (is_root) {
      seeds = root_vertex_ >= 0 ? (bit(root_vertex_) & free) : free;
    } else {
      seeds = neighbourhood(sets_[t_.parent(x)]) & free;
    }
    bool ok = false;
    if (!is_root && t_.is_leaf(x)) {
      // a single vertex adjacent to the parent set always suffices for a leaf
      for (Mask m = seeds; m && !ok; m &= m - 1) {
        Mask s = bit(lowest(m));
        sets_[x] = s;
        ok = place(idx + 1, used | s);
      }
    } else {
      int cap = nfree - (remaining - 1);
      auto visit = [&](Mask s) {
        sets_[x] = s;
        return place(idx + 1, used | s);
      };
      Mask done = 0;
      for (Mask m = seeds; m && !ok; m &= m - 1) {
        int v = lowest(m);
        Mask pool = free & ~done;
        ok = enumerate(bit(v), nbr_[v] & pool, done, pool, cap, visit);
        done |= bit(v);
      }
    }
    if (!ok) {
      sets_[x] = 0;
      failed_.insert(std::move(key));
    }
    return ok;
  }

  const RootedTree& t_;
  std::vector<int> order_, pos_, last_child_pos_;
  std::vector<Mask> nbr_;
  Mask allowed_;
  int root_vertex_;
  std::vector<Mask> sets_;
  std::unordered_set<std::vector<Mask>, KeyHash> failed_;
};

void guard(const InputGraph& g) {
  if (g.size() > kMaxOracleVertices)
    throw InstanceTooLarge("branch-set search limited to " + std::to_string(kMaxOracleVertices) +
                           " vertices, got " + std::to_string(g.size()));
}

VertexSet to_set(Mask m) {
  VertexSet out;
  for (; m; m &= m - 1) out.push_back(lowest(m));
  return out;
}

}  // namespace

std::optional<std::vector<VertexSet>> find_minor_model(const InputGraph& g, const VertexSet& allowed,
                                                       const RootedTree& tree, int root_vertex) {
  guard(g);
  if (root_vertex >= 0 && !set_contains(allowed, root_vertex)) return std::nullopt;
  for (const auto& comp : connected_components(g, allowed)) {
    if (static_cast<int>(comp.size()) < tree.size()) continue;
    if (root_vertex >= 0 && !set_contains(comp, root_vertex)) continue;
    Mask m = 0;
    for (int v : comp) m |= bit(v);
    BranchSearch search(g, m, tree, root_vertex);
    if (search.run()) {
      std::vector<VertexSet> out;
      for (Mask s : search.sets()) out.push_back(to_set(s));
      return out;
    }
  }
  return std::nullopt;
}

bool is_minor_model(const InputGraph& g, const VertexSet& allowed, const RootedTree& tree,
                    const std::vector<VertexSet>& sets, int root_vertex) {
  if (static_cast<int>(sets.size()) != tree.size()) return false;
  std::vector<int> owner(g.size(), -1);
  for (int x = 0; x < tree.size(); ++x) {
    if (sets[x].empty()) return false;
    for (int v : sets[x]) {
      if (v < 0 || v >= g.size() || !set_contains(allowed, v) || owner[v] != -1) return false;
      owner[v] = x;
    }
    if (connected_components(g, sets[x]).size() != 1) return false;
  }
  for (auto [a, b] : tree.edges()) {
    bool touch = false;
    for (int u : sets[a])
      for (int v : g.neighbors(u))
        if (owner[v] == b) touch = true;
    if (!touch) return false;
  }
  return root_vertex < 0 || set_contains(sets[tree.root()], root_vertex);
}

bool minor_oracle(const ColoredGraph& colored, const RootedTree& tree) {
  VertexSet all(colored.size());
  for (int v = 0; v < colored.size(); ++v) all[v] = v;
  return find_minor_model(colored.kept(), all, tree).has_value();
}

bool is_good(const ColoredGraph& colored, const VertexSet& restriction, int u, const RootedTree& tree) {
  if (!set_contains(restriction, u))
    throw std::invalid_argument("is_good: vertex " + std::to_string(u) + " not in the restriction");
  return find_minor_model(colored.kept(), restriction, tree, u).has_value();
}

}  // namespace treespan
