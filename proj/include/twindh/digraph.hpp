#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace twindh {

using Vertex = int;
using Arc = std::pair<Vertex, Vertex>;
/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Finite simple digraph on vertices 0..n-1. Loops and parallel arcs are
/// rejected; both (u,v) and (v,u) may be present.
///
/// Immutable after construction. Neighbour lists are sorted so every
/// traversal is deterministic.
class Digraph {
public:
  enum class Duplicates { Reject, Merge };

  Digraph() = default;
  explicit Digraph(int n) : Digraph(n, std::span<const Arc>{}) {}
  Digraph(int n, std::span<const Arc> arcs, Duplicates dup = Duplicates::Reject);
  Digraph(int n, std::initializer_list<Arc> arcs)
      : Digraph(n, std::span<const Arc>(arcs.begin(), arcs.size())) {}

  int vertex_count() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return arc_count_; }

  bool has_arc(Vertex u, Vertex v) const;
  bool has_vertex(Vertex v) const noexcept { return v >= 0 && v < n_; }

  const std::vector<Vertex>& out_neighbors(Vertex v) const { return out_[check(v)]; }
  const std::vector<Vertex>& in_neighbors(Vertex v) const { return in_[check(v)]; }

  /// All arcs, lexicographically sorted.
  std::vector<Arc> arcs() const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

private:
  std::size_t check(Vertex v) const;
  std::uint64_t key(Vertex u, Vertex v) const noexcept {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }

  int n_ = 0;
  std::size_t arc_count_ = 0;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
};

/// Simple undirected graph with sorted adjacency lists.
struct UndirectedGraph {
  int n = 0;
  std::vector<std::vector<Vertex>> adjacency;

  bool has_edge(Vertex u, Vertex v) const;
  std::size_t edge_count() const;
  friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;
};

struct InducedSubgraph {
  Digraph graph;
  /// to_original[new_id] = old id.
  std::vector<Vertex> to_original;
  /// to_local[old_id] = new id, or -1 when the vertex was not kept.
  std::vector<Vertex> to_local;
};

/// Subdigraph induced by `keep`; new ids follow the ascending order of `keep`.
InducedSubgraph induced_subgraph(const Digraph& g, std::span<const Vertex> keep);

UndirectedGraph underlying(const Digraph& g);
UndirectedGraph induced_subgraph(const UndirectedGraph& g, std::span<const Vertex> keep);

/// Strongly connected components, each sorted, ordered by minimum vertex id.
std::vector<VertexSet> strong_components(const Digraph& g);

/// Components of the underlying graph, ordered by minimum vertex id.
std::vector<VertexSet> weak_components(const Digraph& g);
std::vector<VertexSet> connected_components(const UndirectedGraph& g);

bool is_weakly_connected(const Digraph& g);

/// Largest graph accepted by the permutation-based isomorphism routines.
inline constexpr int kSmallIsomorphismCap = 6;

/// Arc-preserving bijection test by permutation enumeration (at most 6 vertices).
bool is_isomorphic_small(const Digraph& g, const Digraph& h);

/// Lexicographically smallest adjacency code over all relabellings; two small
/// digraphs of equal order are isomorphic iff their codes agree.
std::uint64_t canonical_code_small(const Digraph& g);

/// Adjacency code of `g` without relabelling (bit u*n+v set iff arc (u,v)).
std::uint64_t adjacency_code(const Digraph& g);

/// BFS distance along arcs; nullopt when `v` is unreachable from `u`.
std::optional<int> distance(const Digraph& g, Vertex u, Vertex v);

/// Normalizes `s` to a sorted duplicate-free set and checks ids are in range.
VertexSet make_vertex_set(std::span<const Vertex> s, int n);

}  // namespace twindh
