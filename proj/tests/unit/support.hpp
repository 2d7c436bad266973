#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "twindh/digraph.hpp"
#include "twindh/generator.hpp"
#include "twindh/pruning.hpp"

namespace twindh::testing {

/// Calls f on every labeled digraph on n vertices (4^(n(n-1)/2) of them).
inline void for_each_digraph(int n, const std::function<void(const Digraph&)>& f) {
  std::vector<Arc> slots;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v) slots.emplace_back(u, v);
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1) arcs.push_back(slots[i]);
    f(Digraph(n, arcs));
  }
}

/// Deterministic stream of generator configs with varied operation mixes.
class MemberStream {
public:
  MemberStream(std::uint64_t seed, int min_n, int max_n) : rng_(seed), min_n_(min_n), max_n_(max_n) {}

  std::pair<Digraph, PruningSequence> next() {
    GenConfig cfg;
    cfg.n = min_n_ + static_cast<int>(rng_.below(static_cast<std::uint64_t>(max_n_ - min_n_ + 1)));
    cfg.seed = rng_.next();
    for (auto& w : cfg.weights) w = static_cast<double>(rng_.below(4));
    if (cfg.weights[rng_.below(kPruningOpCount)] == 0) cfg.weights[0] = 1;
    cfg.weights[rng_.below(kPruningOpCount)] += 1;
    return random_member(cfg);
  }

private:
  Rng rng_;
  int min_n_, max_n_;
};

/// Random digraph with a randomly chosen arc-state mix.
inline Digraph random_mixed_digraph(Rng& rng, int n) {
  static const ArcStateProbs kMixes[] = {
      {0.25, 0.25, 0.25, 0.25}, {0.5, 0.15, 0.15, 0.2}, {0.3, 0.05, 0.05, 0.6}, {0.6, 0.2, 0.2, 0.0}};
  return random_digraph(n, kMixes[rng.below(4)], rng.next());
}

/// Vertex subsets of 0..n-1 as sorted lists, every one of them (n <= 20).
inline std::vector<VertexSet> all_subsets(int n) {
  std::vector<VertexSet> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    VertexSet s;
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1) s.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

/// Lengths of all induced directed u,v-paths: forward arcs between
/// consecutive vertices, and no arc of the underlying graph between
/// non-consecutive ones.
inline std::set<int> induced_path_lengths(const Digraph& g, Vertex u, Vertex v) {
  const auto un = underlying(g);
  std::set<int> lengths;
  std::vector<Vertex> path{u};
  std::vector<char> on_path(static_cast<std::size_t>(g.vertex_count()), 0);
  on_path[u] = 1;
  std::function<void()> extend = [&] {
    const Vertex last = path.back();
    if (last == v) {
      lengths.insert(static_cast<int>(path.size()) - 1);
      return;
    }
    for (Vertex w : g.out_neighbors(last)) {
      if (on_path[w]) continue;
      bool chord = false;
      for (std::size_t i = 0; i + 1 < path.size() && !chord; ++i) chord = un.has_edge(path[i], w);
      if (chord) continue;
      path.push_back(w);
      on_path[w] = 1;
      extend();
      on_path[w] = 0;
      path.pop_back();
    }
  };
  extend();
  return lengths;
}

/// Pairs {u, v}, u < v, with equal neighbourhoods outside the pair.
inline std::vector<std::pair<Vertex, Vertex>> twin_pairs(const Digraph& g) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  auto without = [](std::vector<Vertex> list, Vertex x) {
    list.erase(std::remove(list.begin(), list.end(), x), list.end());
    return list;
  };
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v = u + 1; v < g.vertex_count(); ++v)
      if (without(g.out_neighbors(u), v) == without(g.out_neighbors(v), u) &&
          without(g.in_neighbors(u), v) == without(g.in_neighbors(v), u))
        pairs.emplace_back(u, v);
  return pairs;
}

/// Twin-distance condition on the subdigraph induced by `keep` (original ids):
/// for every twin pair of g inside keep, whenever one twin reaches the other
/// the distance is at most 2. Returns false on a violation.
inline bool twin_distance_ok(const Digraph& g, const std::vector<std::pair<Vertex, Vertex>>& twins,
                             const VertexSet& keep) {
  const auto sub = induced_subgraph(g, keep);
  if (!is_weakly_connected(sub.graph)) return true;
  for (const auto& [a, b] : twins) {
    const Vertex la = sub.to_local[a], lb = sub.to_local[b];
    if (la < 0 || lb < 0) continue;
    for (const auto& [x, y] : {std::pair{la, lb}, std::pair{lb, la}}) {
      const auto d = distance(sub.graph, x, y);
      if (d && *d > 2) return false;
    }
  }
  return true;
}

}  // namespace twindh::testing
