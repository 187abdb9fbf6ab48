// Exact tree-depth by memoized branch and bound over vertex subsets.
//
// td(S) for connected S is 1 + min over v of td(S - v); for disconnected S it
// is the max over components.  solve(S, limit) returns td(S) when it is at
// most `limit` and otherwise some lower bound exceeding `limit`; the memo keeps
// both exact values and lower bounds so iterative deepening stays cheap.

#include <bit>
#include <cstdint>
#include <unordered_map>

#include "forge/error.hpp"
#include "forge/graph.hpp"

namespace forge {
namespace {

using Mask = std::uint64_t;

constexpr Mask bit(std::size_t v) { return Mask{1} << v; }

class TreeDepthSolver {
 public:
  explicit TreeDepthSolver(const Graph& g) : adj_(g.num_vertices(), 0) {
    for (const auto& [u, v] : g.edges()) {
      adj_[u] |= bit(v);
      adj_[v] |= bit(u);
    }
  }

  std::size_t solve(Mask s, std::size_t limit) {
    std::size_t best = 0;
    for (Mask c : components(s)) {
      best = std::max(best, solve_connected(c, limit));
      if (best > limit) return best;
    }
    return best;
  }

  void build_forest(Mask s, std::size_t parent, std::vector<std::size_t>& out) {
    for (Mask c : components(s)) {
      if (std::popcount(c) == 1) {
        out[static_cast<std::size_t>(std::countr_zero(c))] = parent;
        continue;
      }
      auto it = memo_.find(c);
      if (it == memo_.end() || !it->second.exact) {
        solve_connected(c, static_cast<std::size_t>(std::popcount(c)));
        it = memo_.find(c);
      }
      const std::size_t v = it->second.choice;
      out[v] = parent;
      build_forest(c & ~bit(v), v, out);
    }
  }

 private:
  struct Entry {
    std::size_t lower = 0;
    bool exact = false;
    std::size_t choice = 0;
  };

  std::vector<Mask> components(Mask s) const {
    std::vector<Mask> out;
    while (s) {
      Mask comp = s & (~s + 1);
      Mask frontier = comp;
      while (frontier) {
        const auto v = static_cast<std::size_t>(std::countr_zero(frontier));
        frontier &= frontier - 1;
        const Mask fresh = adj_[v] & s & ~comp;
        comp |= fresh;
        frontier |= fresh;
      }
      out.push_back(comp);
      s &= ~comp;
    }
    return out;
  }

  // The deepest root-to-node path of a DFS tree is a path of G[S]; a path on
  // L vertices has tree-depth ceil(log2(L+1)).
  std::size_t path_bound(Mask s) const {
    std::size_t longest = 0;
    const auto root = static_cast<std::size_t>(std::countr_zero(s));
    Mask seen = bit(root);
    std::vector<std::size_t> path{root};
    while (!path.empty()) {
      const std::size_t v = path.back();
      longest = std::max(longest, path.size());
      const Mask next = adj_[v] & s & ~seen;
      if (next) {
        const auto w = static_cast<std::size_t>(std::countr_zero(next));
        seen |= bit(w);
        path.push_back(w);
      } else {
        path.pop_back();
      }
    }
    return std::bit_width(longest);
  }

  bool is_clique(Mask s) const {
    for (Mask rest = s; rest; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      if ((adj_[v] & s) != (s & ~bit(v))) return false;
    }
    return true;
  }

  std::size_t solve_connected(Mask s, std::size_t limit) {
    const auto n = static_cast<std::size_t>(std::popcount(s));
    if (n == 1) return 1;
    Entry& slot = memo_[s];
    if (slot.exact) return slot.lower;
    if (slot.lower > limit) return slot.lower;

    if (is_clique(s)) {
      slot = Entry{n, true, static_cast<std::size_t>(std::countr_zero(s))};
      return n;
    }
    const std::size_t lb = std::max({slot.lower, std::size_t{2}, path_bound(s)});
    if (lb > limit) {
      memo_[s].lower = lb;
      return lb;
    }
    std::size_t best = limit + 1;
    std::size_t choice = 0;
    for (Mask rest = s; rest; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      const std::size_t sub = solve(s & ~bit(v), best - 2);
      if (sub + 1 < best) {
        best = sub + 1;
        choice = v;
        if (best == lb) break;
      }
    }
    // `slot` may be invalidated by rehashing during the recursion.
    Entry& entry = memo_[s];
    if (best <= limit) {
      entry = Entry{best, true, choice};
    } else {
      entry.lower = std::max(entry.lower, limit + 1);
    }
    return best <= limit ? best : limit + 1;
  }

  std::vector<Mask> adj_;
  std::unordered_map<Mask, Entry> memo_;
};

}  // namespace

TreeDepthResult tree_depth(const Graph& g, std::optional<std::size_t> budget) {
  const std::size_t n = g.num_vertices();
  if (n > 64) throw Error(ErrorCode::kTooLarge, "tree-depth search supports at most 64 vertices");
  TreeDepthResult result;
  if (n == 0) {
    result.value = 0;
    return result;
  }
  const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  TreeDepthSolver solver(g);
  const std::size_t cap = budget ? std::min(*budget, n) : n;
  std::size_t found = cap + 1;
  for (std::size_t t = 1; t <= cap; ++t) {
    const std::size_t r = solver.solve(all, t);
    if (r <= t) {
      found = r;
      break;
    }
    if (r > t + 1) t = r - 1;
  }
  if (found > cap) return result;
  std::vector<std::size_t> parent(n, RootedForest::kNoParent);
  solver.build_forest(all, RootedForest::kNoParent, parent);
  result.value = found;
  result.witness = RootedForest(std::move(parent));
  return result;
}

}  // namespace forge
