#pragma once

#include <vector>

#include "twindh/cograph.hpp"
#include "twindh/digraph.hpp"
#include "twindh/pruning.hpp"

namespace twindh {

struct ComponentWidth {
  VertexSet vertices;
  int width = 0;
  CoTree cotree;  ///< leaves carry original ids
};

struct WidthReport {
  int dpw = 0;
  int dtw = 0;
  int dagw = 1;
  int cyr = 0;
  std::vector<ComponentWidth> components;  ///< ordered by minimum vertex id
};

/// Widths of a certified member. The strong components and their co-trees
/// are read off the certificate: twin steps refine a leaf into a two-leaf
/// node, pendant steps open a new tree, and the strong components are the
/// maximal OTIMES subtrees plus the remaining leaves. Each component is
/// cross-checked against Tarjan's algorithm.
///
/// Throws CertificateError when `seq` does not certify `g`, and
/// InternalInconsistency when the derived components disagree with Tarjan.
WidthReport widths_twin_dh(const Digraph& g, const PruningSequence& seq);

/// Leaf 0; OPLUS and OSLASH take the maximum of the children; OTIMES with
/// children of sizes n1, n2 and values w1, w2 gives min(w1 + n2, w2 + n1).
int width_of_cotree(const CoTree& t);

inline constexpr int kDefaultCycleRankCap = 12;
inline constexpr int kDefaultDpwCap = 9;

/// Cycle rank by its recursive definition, memoized over vertex subsets.
int cycle_rank_bruteforce(const Digraph& g, int cap = kDefaultCycleRankCap);

/// Directed vertex separation: minimum over orderings of the largest number
/// of later vertices with an arc into a prefix. Subset dynamic program.
int dpw_bruteforce(const Digraph& g, int cap = kDefaultDpwCap);

}  // namespace twindh
