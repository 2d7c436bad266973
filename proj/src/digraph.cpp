#include "twindh/digraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_set>

#include "twindh/errors.hpp"

namespace twindh {

Digraph::Digraph(int n, std::span<const Arc> arcs, Duplicates dup)
    : n_(n), out_(static_cast<std::size_t>(std::max(n, 0))),
      in_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw InputError("negative vertex count");
  for (const auto& [u, v] : arcs) {
    if (!has_vertex(u) || !has_vertex(v)) {
      throw InputError("arc (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has an endpoint outside 0.." + std::to_string(n - 1));
    }
    if (u == v) throw InputError("loop at vertex " + std::to_string(u));
    out_[u].push_back(v);
    in_[v].push_back(u);
  }
  bool duplicates = false;
  for (auto& l : out_) {
    std::sort(l.begin(), l.end());
    duplicates = duplicates || std::adjacent_find(l.begin(), l.end()) != l.end();
  }
  for (auto& l : in_) std::sort(l.begin(), l.end());
  if (duplicates) {
    if (dup == Duplicates::Reject) {
      // Name the first repeated arc in input order.
      std::unordered_set<std::uint64_t> seen;
      for (const auto& [u, v] : arcs)
        if (!seen.insert(key(u, v)).second)
          throw InputError("duplicate arc (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    for (auto& l : out_) l.erase(std::unique(l.begin(), l.end()), l.end());
    for (auto& l : in_) l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  for (const auto& l : out_) arc_count_ += l.size();
}

std::size_t Digraph::check(Vertex v) const {
  if (!has_vertex(v)) throw InputError("vertex id " + std::to_string(v) + " out of range");
  return static_cast<std::size_t>(v);
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  if (!has_vertex(u) || !has_vertex(v)) return false;
  const auto& l = out_[static_cast<std::size_t>(u)];
  return std::binary_search(l.begin(), l.end(), v);
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> result;
  result.reserve(arc_count_);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : out_[u]) result.emplace_back(u, v);
  return result;
}

bool UndirectedGraph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n || v >= n) return false;
  const auto& a = adjacency[u];
  return std::binary_search(a.begin(), a.end(), v);
}

std::size_t UndirectedGraph::edge_count() const {
  std::size_t deg = 0;
  for (const auto& a : adjacency) deg += a.size();
  return deg / 2;
}

VertexSet make_vertex_set(std::span<const Vertex> s, int n) {
  VertexSet out(s.begin(), s.end());
  for (Vertex v : out)
    if (v < 0 || v >= n)
      throw InputError("vertex id " + std::to_string(v) + " out of range 0.." +
                       std::to_string(n - 1));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

InducedSubgraph induced_subgraph(const Digraph& g, std::span<const Vertex> keep) {
  InducedSubgraph result;
  result.to_original = make_vertex_set(keep, g.vertex_count());
  result.to_local.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t i = 0; i < result.to_original.size(); ++i)
    result.to_local[result.to_original[i]] = static_cast<Vertex>(i);

  std::vector<Arc> arcs;
  for (Vertex old_u : result.to_original) {
    for (Vertex old_v : g.out_neighbors(old_u)) {
      const Vertex v = result.to_local[old_v];
      if (v >= 0) arcs.emplace_back(result.to_local[old_u], v);
    }
  }
  result.graph = Digraph(static_cast<int>(result.to_original.size()), arcs);
  return result;
}

UndirectedGraph underlying(const Digraph& g) {
  UndirectedGraph u;
  u.n = g.vertex_count();
  u.adjacency.resize(static_cast<std::size_t>(u.n));
  for (Vertex v = 0; v < u.n; ++v) {
    auto& adj = u.adjacency[v];
    const auto& out = g.out_neighbors(v);
    const auto& in = g.in_neighbors(v);
    adj.reserve(out.size() + in.size());
    std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(adj));
  }
  return u;
}

UndirectedGraph induced_subgraph(const UndirectedGraph& g, std::span<const Vertex> keep) {
  const VertexSet kept = make_vertex_set(keep, g.n);
  std::vector<Vertex> local(static_cast<std::size_t>(g.n), -1);
  for (std::size_t i = 0; i < kept.size(); ++i) local[kept[i]] = static_cast<Vertex>(i);
  UndirectedGraph h;
  h.n = static_cast<int>(kept.size());
  h.adjacency.resize(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (Vertex w : g.adjacency[kept[i]])
      if (local[w] >= 0) h.adjacency[i].push_back(local[w]);
  return h;
}

std::vector<VertexSet> strong_components(const Digraph& g) {
  // Iterative Tarjan.
  const int n = g.vertex_count();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  std::vector<std::pair<Vertex, std::size_t>> call;
  std::vector<VertexSet> comps;
  int counter = 0;

  for (Vertex s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    call.emplace_back(s, 0);
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      const auto& out = g.out_neighbors(v);
      if (next < out.size()) {
        const Vertex w = out[next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Vertex done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        VertexSet comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  return comps;
}

std::vector<VertexSet> connected_components(const UndirectedGraph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.n), -1);
  std::vector<VertexSet> result;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(result.size());
    result.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      result[id].push_back(v);
      for (Vertex w : g.adjacency[v]) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(result[id].begin(), result[id].end());
  }
  return result;
}

std::vector<VertexSet> weak_components(const Digraph& g) {
  return connected_components(underlying(g));
}

bool is_weakly_connected(const Digraph& g) {
  return g.vertex_count() > 0 && weak_components(g).size() == 1;
}

std::uint64_t adjacency_code(const Digraph& g) {
  const int n = g.vertex_count();
  if (n > 8) throw InputError("adjacency code needs at most 8 vertices");
  std::uint64_t code = 0;
  for (const auto& [u, v] : g.arcs()) code |= std::uint64_t{1} << (u * n + v);
  return code;
}

namespace {

void check_small(const Digraph& g) {
  if (g.vertex_count() > kSmallIsomorphismCap)
    throw CapExceeded("small isomorphism", g.vertex_count(), kSmallIsomorphismCap);
}

std::uint64_t permuted_code(const std::vector<Arc>& arcs, const std::vector<int>& perm, int n) {
  std::uint64_t code = 0;
  for (const auto& [u, v] : arcs) code |= std::uint64_t{1} << (perm[u] * n + perm[v]);
  return code;
}

}  // namespace

std::uint64_t canonical_code_small(const Digraph& g) {
  check_small(g);
  const int n = g.vertex_count();
  const auto arcs = g.arcs();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, permuted_code(arcs, perm, n));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool is_isomorphic_small(const Digraph& g, const Digraph& h) {
  check_small(g);
  check_small(h);
  if (g.vertex_count() != h.vertex_count() || g.arc_count() != h.arc_count()) return false;
  const int n = g.vertex_count();
  const auto arcs = g.arcs();
  const std::uint64_t target = adjacency_code(h);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (permuted_code(arcs, perm, n) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::optional<int> distance(const Digraph& g, Vertex u, Vertex v) {
  if (!g.has_vertex(u) || !g.has_vertex(v))
    throw InputError("distance: vertex id out of range");
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::deque<Vertex> queue{u};
  dist[u] = 0;
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    if (x == v) return dist[x];
    for (Vertex y : g.out_neighbors(x)) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return std::nullopt;
}

}  // namespace twindh
