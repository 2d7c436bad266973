#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twindh/digraph.hpp"

namespace twindh {

/// Obstructions in the underlying undirected graph.
enum class UndirectedObstruction { Hole, House, Domino, Gem };

/// Which forbidden configuration a witness exhibits.
struct ForbiddenKind {
  enum class Family { C3, H, UnderlyingHHDG, TwoLeaves };

  Family family = Family::C3;
  int h_index = -1;  ///< 0..27 when family == H
  UndirectedObstruction undirected = UndirectedObstruction::Hole;  ///< for UnderlyingHHDG

  static ForbiddenKind c3() { return {Family::C3, -1, UndirectedObstruction::Hole}; }
  static ForbiddenKind h(int index);
  static ForbiddenKind hhdg(UndirectedObstruction o) { return {Family::UnderlyingHHDG, -1, o}; }
  static ForbiddenKind two_leaves() { return {Family::TwoLeaves, -1, UndirectedObstruction::Hole}; }

  /// "C3", "H0".."H27", "Hole", "House", "Domino", "Gem", "TwoLeaves".
  std::string name() const;

  friend bool operator==(const ForbiddenKind&, const ForbiddenKind&) = default;
};

struct Witness {
  ForbiddenKind kind;
  VertexSet vertices;  ///< original ids, sorted
};

struct CatalogEntry {
  std::string name;
  ForbiddenKind kind;
  Digraph graph;
  std::string_view group;
};

/// The 29 fixed forbidden digraphs: C3 and H0..H27, in that order.
const std::vector<CatalogEntry>& catalog();

/// FNV-1a digest over the edge-list text of every catalog entry.
std::uint64_t catalog_checksum();

/// The catalog entry isomorphic to `g` (3 or 4 vertices), if any.
const CatalogEntry* match_catalog(const Digraph& g);

/// u is a bioriented leaf: exactly one neighbour in the underlying graph and
/// both arcs to it present.
bool is_bioriented_leaf(const Digraph& g, Vertex u);

/// Weakly connected, at least 4 vertices, and two bioriented leaves whose
/// underlying neighbourhoods differ.
bool is_two_leaves(const Digraph& g);

struct HhdgResult {
  bool free = true;
  std::optional<Witness> witness;
};

/// Whether the underlying graph avoids induced holes (cycles of length >= 5),
/// houses, dominoes and gems. Holes of any length are found by induced-cycle
/// search; the 5- and 6-vertex shapes by subset enumeration.
HhdgResult underlying_is_hhdg_free(const Digraph& g);

/// The undirected house, gem and domino, vertices 0..k-1.
UndirectedGraph house_graph();
UndirectedGraph gem_graph();
UndirectedGraph domino_graph();

inline constexpr int kDefaultOracleCap = 10;

struct OracleResult {
  bool member = true;
  std::optional<Witness> witness;
};

/// Membership by forbidden induced subdigraphs: no catalog entry, no
/// hole/house/domino/gem in the underlying graph, no two-leaves subdigraph.
/// Subsets are scanned by increasing size, so a returned witness has minimum
/// size (lexicographically first subset among those).
OracleResult oracle_is_twin_dh(const Digraph& g, int cap = kDefaultOracleCap);

}  // namespace twindh
