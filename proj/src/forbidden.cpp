#include "twindh/forbidden.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "twindh/edge_list.hpp"
#include "twindh/errors.hpp"

namespace twindh {

ForbiddenKind ForbiddenKind::h(int index) {
  if (index < 0 || index > 27) throw InputError("H index must be in 0..27");
  return {Family::H, index, UndirectedObstruction::Hole};
}

std::string ForbiddenKind::name() const {
  switch (family) {
    case Family::C3: return "C3";
    case Family::H: return "H" + std::to_string(h_index);
    case Family::TwoLeaves: return "TwoLeaves";
    case Family::UnderlyingHHDG:
      switch (undirected) {
        case UndirectedObstruction::Hole: return "Hole";
        case UndirectedObstruction::House: return "House";
        case UndirectedObstruction::Domino: return "Domino";
        case UndirectedObstruction::Gem: return "Gem";
      }
  }
  return "?";
}

namespace {

// Vertex names of the four-vertex drawings: x=0, y=1, z=2, w=3.
constexpr Vertex x = 0, y = 1, z = 2, w = 3;

struct RawEntry {
  int n;
  std::vector<Arc> arcs;
  std::vector<std::pair<Vertex, Vertex>> both;  // bioriented pairs
};

constexpr std::string_view kGroupC3 = "directed triangle";
constexpr std::string_view kGroupStrong = "underlying C4 (or smaller), strongly connected";
constexpr std::string_view kGroupWeak = "underlying C4, not strongly connected";
constexpr std::string_view kGroupSingleDiag = "underlying C4 plus a single-arc diagonal";
constexpr std::string_view kGroupBiDiag = "underlying C4 plus a bioriented diagonal";
constexpr std::string_view kGroupK4 = "orientation of K4";

std::vector<CatalogEntry> build_catalog() {
  const std::vector<RawEntry> raw = {
      {3, {{0, 1}, {1, 2}, {2, 0}}, {}},                              // C3
      {3, {{1, 2}, {2, 0}}, {{0, 1}}},                                // H0
      {4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {}},                      // H1
      {4, {{x, y}, {z, x}, {y, w}}, {{z, w}}},                        // H2
      {4, {{x, y}, {y, w}}, {{z, w}, {x, z}}},                        // H3
      {4, {{z, x}, {y, w}}, {{z, w}, {x, y}}},                        // H4
      {4, {{z, w}}, {{z, x}, {x, y}, {y, w}}},                        // H5
      {4, {{x, y}, {x, z}, {z, w}, {w, y}}, {}},                      // H6
      {4, {{z, x}, {w, y}, {x, y}}, {{z, w}}},                        // H7
      {4, {{x, z}, {y, w}, {x, y}}, {{z, w}}},                        // H8
      {4, {{z, x}, {w, y}}, {{z, w}, {x, y}}},                        // H9
      {4, {{x, y}, {x, z}, {z, w}, {w, y}, {x, w}}, {}},              // H10
      {4, {{x, y}, {x, z}, {z, w}, {w, y}, {z, y}}, {}},              // H11
      {4, {{z, x}, {w, y}, {w, x}, {x, y}}, {{w, z}}},                // H12
      {4, {{x, y}, {x, z}, {y, z}, {y, w}}, {{z, w}}},                // H13
      {4, {{x, y}, {x, z}, {x, w}, {y, w}}, {{z, w}}},                // H14
      {4, {{z, x}, {w, y}, {x, y}, {z, y}}, {{w, z}}},                // H15
      {4, {{x, y}, {y, w}, {x, w}}, {{z, w}, {z, x}}},                // H16
      {4, {{z, x}, {w, y}, {w, x}}, {{z, w}, {x, y}}},                // H17
      {4, {{x, w}, {z, w}}, {{x, z}, {x, y}, {w, y}}},                // H18
      {4, {{z, w}, {z, y}}, {{x, z}, {x, y}, {w, y}}},                // H19
      {4, {{x, y}, {x, z}, {y, w}}, {{z, w}, {y, z}}},                // H20
      {4, {{z, x}, {w, y}, {x, y}}, {{w, z}, {w, x}}},                // H21
      {4, {{x, y}, {y, w}}, {{z, w}, {z, x}, {y, z}}},                // H22
      {4, {{z, x}, {w, y}}, {{x, y}, {x, w}, {z, w}}},                // H23
      {4, {{x, z}, {w, y}}, {{x, y}, {x, w}, {z, w}}},                // H24
      {4, {{z, w}}, {{x, z}, {x, y}, {w, y}, {x, w}}},                // H25
      {4, {{z, w}}, {{x, z}, {x, y}, {y, z}, {w, y}}},                // H26
      {4, {{x, w}, {z, w}, {z, y}}, {{x, z}, {x, y}, {y, w}}},        // H27
  };

  std::vector<CatalogEntry> entries;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::vector<Arc> arcs = raw[i].arcs;
    for (const auto& [a, b] : raw[i].both) {
      arcs.emplace_back(a, b);
      arcs.emplace_back(b, a);
    }
    CatalogEntry e;
    if (i == 0) {
      e.kind = ForbiddenKind::c3();
      e.group = kGroupC3;
    } else {
      const int h = static_cast<int>(i) - 1;
      e.kind = ForbiddenKind::h(h);
      e.group = h <= 5 ? kGroupStrong : h <= 9 ? kGroupWeak : h <= 19 ? kGroupSingleDiag
                : h <= 26 ? kGroupBiDiag : kGroupK4;
    }
    e.name = e.kind.name();
    e.graph = Digraph(raw[i].n, arcs);
    entries.push_back(std::move(e));
  }
  return entries;
}

/// Dense representation for subset scans; n <= 62.
struct Dense {
  int n = 0;
  std::vector<std::uint64_t> out, in;

  explicit Dense(const Digraph& g) : n(g.vertex_count()), out(n, 0), in(n, 0) {
    for (const auto& [u, v] : g.arcs()) {
      out[u] |= std::uint64_t{1} << v;
      in[v] |= std::uint64_t{1} << u;
    }
  }
  bool arc(int u, int v) const { return (out[u] >> v) & 1; }
  std::uint64_t nbr(int v) const { return out[v] | in[v]; }
};

/// Canonical code of the subdigraph induced by `verts` (k <= 4).
std::uint64_t subset_code(const Dense& d, const std::vector<int>& verts) {
  const int k = static_cast<int>(verts.size());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j && d.arc(verts[i], verts[j])) code |= std::uint64_t{1} << (perm[i] * k + perm[j]);
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::uint64_t undirected_canonical(const UndirectedGraph& g) {
  const int k = g.n;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    for (int i = 0; i < k; ++i)
      for (int j : g.adjacency[i])
        if (i < j) {
          const int a = std::min(perm[i], perm[j]), b = std::max(perm[i], perm[j]);
          code |= std::uint64_t{1} << (a * k + b);
        }
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

UndirectedGraph make_undirected(int n, std::initializer_list<std::pair<int, int>> edges) {
  UndirectedGraph g;
  g.n = n;
  g.adjacency.resize(n);
  for (auto [a, b] : edges) {
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& l : g.adjacency) std::sort(l.begin(), l.end());
  return g;
}

/// Calls f on every k-subset of 0..n-1 in lexicographic order until f returns true.
bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f) {
  if (k > n || k <= 0) return false;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    if (f(c)) return true;
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

std::uint64_t mask_of(const std::vector<int>& verts) {
  std::uint64_t m = 0;
  for (int v : verts) m |= std::uint64_t{1} << v;
  return m;
}

bool connected_within(const Dense& d, std::uint64_t mask) {
  if (mask == 0) return false;
  std::uint64_t seen = mask & (~mask + 1);
  std::uint64_t frontier = seen;
  while (frontier) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f; f &= f - 1) next |= d.nbr(std::countr_zero(f));
    next &= mask & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == mask;
}

bool two_leaves_within(const Dense& d, std::uint64_t mask) {
  if (std::popcount(mask) < 4 || !connected_within(d, mask)) return false;
  std::uint64_t leaf_neighbours = 0;
  for (std::uint64_t m = mask; m; m &= m - 1) {
    const int v = std::countr_zero(m);
    const std::uint64_t nb = d.nbr(v) & mask;
    if (std::popcount(nb) != 1) continue;
    const int u = std::countr_zero(nb);
    if (d.arc(u, v) && d.arc(v, u)) leaf_neighbours |= nb;
  }
  return std::popcount(leaf_neighbours) >= 2;
}

/// Underlying graph on `mask` is a chordless cycle.
bool is_cycle_within(const Dense& d, std::uint64_t mask) {
  for (std::uint64_t m = mask; m; m &= m - 1)
    if (std::popcount(d.nbr(std::countr_zero(m)) & mask) != 2) return false;
  return connected_within(d, mask);
}

UndirectedGraph undirected_on(const Dense& d, const std::vector<int>& verts) {
  UndirectedGraph g;
  g.n = static_cast<int>(verts.size());
  g.adjacency.resize(verts.size());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (i != j && ((d.nbr(verts[i]) >> verts[j]) & 1)) g.adjacency[i].push_back(j);
  return g;
}

struct ShapeCodes {
  std::uint64_t house, gem, domino;
  std::size_t house_edges, gem_edges, domino_edges;
};

const ShapeCodes& shape_codes() {
  static const ShapeCodes codes = [] {
    const auto h = house_graph(), g = gem_graph(), d = domino_graph();
    return ShapeCodes{undirected_canonical(h), undirected_canonical(g), undirected_canonical(d),
                      h.edge_count(), g.edge_count(), d.edge_count()};
  }();
  return codes;
}

std::optional<UndirectedObstruction> small_obstruction(const Dense& d,
                                                       const std::vector<int>& verts) {
  const std::uint64_t mask = mask_of(verts);
  if (verts.size() >= 5 && is_cycle_within(d, mask)) return UndirectedObstruction::Hole;
  if (verts.size() != 5 && verts.size() != 6) return std::nullopt;
  std::size_t edges = 0;
  for (int v : verts) edges += static_cast<std::size_t>(std::popcount(d.nbr(v) & mask));
  edges /= 2;
  const auto& codes = shape_codes();
  if (verts.size() == 5) {
    if (edges == codes.house_edges && undirected_canonical(undirected_on(d, verts)) == codes.house)
      return UndirectedObstruction::House;
    if (edges == codes.gem_edges && undirected_canonical(undirected_on(d, verts)) == codes.gem)
      return UndirectedObstruction::Gem;
  } else if (edges == codes.domino_edges &&
             undirected_canonical(undirected_on(d, verts)) == codes.domino) {
    return UndirectedObstruction::Domino;
  }
  return std::nullopt;
}

const std::unordered_map<std::uint64_t, std::size_t>& catalog_index(int k) {
  static const auto build = [](int size) {
    std::unordered_map<std::uint64_t, std::size_t> index;
    const auto& entries = catalog();
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (entries[i].graph.vertex_count() == size)
        index.emplace(canonical_code_small(entries[i].graph), i);
    return index;
  };
  static const auto three = build(3);
  static const auto four = build(4);
  return k == 3 ? three : four;
}

/// Induced cycles of length >= 5 in `g`, searched from each minimum vertex.
std::optional<VertexSet> find_hole(const UndirectedGraph& g) {
  std::vector<Vertex> path;
  std::vector<int> touch(static_cast<std::size_t>(g.n), 0);  // path vertices adjacent
  std::optional<VertexSet> found;

  std::function<bool(Vertex)> extend = [&](Vertex s) -> bool {
    const Vertex last = path.back();
    for (Vertex x : g.adjacency[last]) {
      if (x <= s || touch[x] < 0) continue;
      const bool closes = last != s && g.has_edge(x, s);
      // x may touch only `last`, plus `s` when it closes the cycle.
      if (touch[x] != 1 + (closes ? 1 : 0)) continue;
      if (closes) {
        if (path.size() + 1 >= 5) {
          found = VertexSet(path.begin(), path.end());
          found->push_back(x);
          std::sort(found->begin(), found->end());
          return true;
        }
        continue;
      }
      path.push_back(x);
      for (Vertex y : g.adjacency[x]) if (touch[y] >= 0) ++touch[y];
      const int saved = touch[x];
      touch[x] = -1;
      if (extend(s)) return true;
      touch[x] = saved;
      for (Vertex y : g.adjacency[x]) if (touch[y] >= 0) --touch[y];
      path.pop_back();
    }
    return false;
  };

  for (Vertex s = 0; s < g.n; ++s) {
    std::fill(touch.begin(), touch.end(), 0);
    path.assign(1, s);
    touch[s] = -1;
    for (Vertex y : g.adjacency[s]) ++touch[y];
    if (extend(s)) return found;
  }
  return std::nullopt;
}

}  // namespace

UndirectedGraph house_graph() {
  return make_undirected(5, {{0, 1}, {0, 3}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
}
UndirectedGraph gem_graph() {
  return make_undirected(5, {{3, 2}, {2, 1}, {1, 0}, {2, 4}, {3, 4}, {4, 0}, {4, 1}});
}
UndirectedGraph domino_graph() {
  return make_undirected(6, {{0, 1}, {0, 3}, {1, 2}, {2, 3}, {2, 5}, {3, 4}, {4, 5}});
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

std::uint64_t catalog_checksum() {
  std::uint64_t hash = 1469598103934665603ull;
  for (const auto& e : catalog()) {
    const std::string text = e.name + "\n" + format_edge_list(e.graph);
    for (unsigned char c : text) {
      hash ^= c;
      hash *= 1099511628211ull;
    }
  }
  return hash;
}

const CatalogEntry* match_catalog(const Digraph& g) {
  const int k = g.vertex_count();
  if (k != 3 && k != 4) return nullptr;
  const auto& index = catalog_index(k);
  const auto it = index.find(canonical_code_small(g));
  return it == index.end() ? nullptr : &catalog()[it->second];
}

bool is_bioriented_leaf(const Digraph& g, Vertex u) {
  const auto un = underlying(g);
  if (un.adjacency[u].size() != 1) return false;
  const Vertex v = un.adjacency[u].front();
  return g.has_arc(u, v) && g.has_arc(v, u);
}

bool is_two_leaves(const Digraph& g) {
  if (g.vertex_count() < 4 || !is_weakly_connected(g)) return false;
  const auto un = underlying(g);
  std::vector<Vertex> anchors;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (un.adjacency[u].size() != 1) continue;
    const Vertex v = un.adjacency[u].front();
    if (g.has_arc(u, v) && g.has_arc(v, u)) anchors.push_back(v);
  }
  std::sort(anchors.begin(), anchors.end());
  return std::unique(anchors.begin(), anchors.end()) - anchors.begin() >= 2;
}

HhdgResult underlying_is_hhdg_free(const Digraph& g) {
  HhdgResult result;
  const int n = g.vertex_count();
  if (n < 5) return result;
  if (n <= 62) {
    const Dense d(g);
    for (int k : {5, 6}) {
      for_each_subset(n, k, [&](const std::vector<int>& verts) {
        if (auto o = small_obstruction(d, verts)) {
          result.free = false;
          result.witness = Witness{ForbiddenKind::hhdg(*o), VertexSet(verts.begin(), verts.end())};
          return true;
        }
        return false;
      });
      if (!result.free) return result;
    }
  }
  if (auto hole = find_hole(underlying(g))) {
    result.free = false;
    result.witness = Witness{ForbiddenKind::hhdg(UndirectedObstruction::Hole), *hole};
  }
  return result;
}

OracleResult oracle_is_twin_dh(const Digraph& g, int cap) {
  const int n = g.vertex_count();
  if (cap > 62) cap = 62;
  if (n > cap) throw CapExceeded("forbidden-subdigraph oracle", n, cap);
  const Dense d(g);
  OracleResult result;
  for (int k = 3; k <= n && result.member; ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& verts) {
      std::optional<ForbiddenKind> kind;
      if (k <= 4) {
        const auto& index = catalog_index(k);
        const auto it = index.find(subset_code(d, verts));
        if (it != index.end()) kind = catalog()[it->second].kind;
      }
      if (!kind && k >= 5) {
        if (auto o = small_obstruction(d, verts)) kind = ForbiddenKind::hhdg(*o);
      }
      if (!kind && k >= 4 && two_leaves_within(d, mask_of(verts))) kind = ForbiddenKind::two_leaves();
      if (!kind) return false;
      result.member = false;
      result.witness = Witness{*kind, VertexSet(verts.begin(), verts.end())};
      return true;
    });
  }
  return result;
}

}  // namespace twindh
