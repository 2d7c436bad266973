#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twindh/digraph.hpp"

namespace twindh {

/// How a vertex is attached to its anchor.
enum class PruningOp {
  PendantPlus,         ///< single arc (v, anchor)
  PendantMinus,        ///< single arc (anchor, v)
  FalseTwin,           ///< anchor's neighbourhoods, no arc between the two
  TrueInTwin,          ///< anchor's neighbourhoods plus arc (v, anchor)
  TrueOutTwin,         ///< anchor's neighbourhoods plus arc (anchor, v)
  BiorientedTrueTwin,  ///< anchor's neighbourhoods plus both arcs
};

inline constexpr std::size_t kPruningOpCount = 6;

bool is_twin_op(PruningOp op) noexcept;
/// Short code used by the sequence text format: PP, PM, FT, TIT, TOT, TBT.
std::string_view op_code(PruningOp op) noexcept;
std::optional<PruningOp> op_from_code(std::string_view code) noexcept;

struct PruningStep {
  Vertex vertex;
  PruningOp op;
  Vertex anchor;

  friend bool operator==(const PruningStep&, const PruningStep&) = default;
};

/// Construction certificate: start from `root`, then add each step's vertex
/// with its operation relative to an already present anchor.
struct PruningSequence {
  Vertex root = 0;
  std::vector<PruningStep> steps;

  std::size_t vertex_count() const noexcept { return steps.size() + 1; }
  friend bool operator==(const PruningSequence&, const PruningSequence&) = default;
};

/// Checks the structural invariants (fresh vertices, earlier anchors, vertex
/// ids exactly 0..n-1). Throws MalformedSequence naming the offending step;
/// step 0 denotes the root.
void check_sequence(const PruningSequence& seq);

/// Builds the digraph the sequence denotes.
Digraph apply_sequence(const PruningSequence& seq);

struct ValidationReport {
  bool valid = true;
  /// 1-based step index of the first mismatch (0 = root or global problem).
  std::optional<std::size_t> step;
  std::string message;

  explicit operator bool() const noexcept { return valid; }
};

/// True iff `seq` rebuilds exactly `g` and every step's operation holds in
/// the subdigraph of `g` induced by the vertices created so far.
ValidationReport validate_sequence(const PruningSequence& seq, const Digraph& g);

/// Relation of `v` to `anchor` inside `g` restricted to `alive`, if it is one
/// of the six pruning operations. `alive` is indexed by vertex id.
std::optional<PruningOp> classify(const Digraph& g, std::span<const char> alive, Vertex v,
                                  Vertex anchor);

enum class RecognizeMode { Greedy, Exact };

inline constexpr int kDefaultExactCap = 10;

/// Pruning sequence for `g`, or nullopt when none was found.
///
/// Greedy removes, while more than one vertex remains, the lowest-id pendant
/// vertex, otherwise the higher vertex of the lexicographically first twin
/// pair. Exact backtracks over every removable vertex with memoization on the
/// set of remaining vertices and refuses graphs above `exact_cap` vertices; a
/// nullopt from exact mode certifies non-membership.
std::optional<PruningSequence> recognize(const Digraph& g, RecognizeMode mode,
                                         int exact_cap = kDefaultExactCap);

/// Sequence for the subdigraph induced by `keep`, expressed in the original
/// vertex ids, obtained by deleting the other vertices one at a time and
/// rewriting the sequence around each deletion. `keep` must induce a weakly
/// connected subdigraph.
PruningSequence derive_subgraph_sequence(const PruningSequence& seq,
                                         std::span<const Vertex> keep);

/// Renames every vertex through `to_local` (old id -> new id).
PruningSequence remap_sequence(const PruningSequence& seq, std::span<const Vertex> to_local);

/// "root <id>" then one "<vertex> <OP> <anchor>" line per step.
std::string format_sequence(const PruningSequence& seq);
PruningSequence parse_sequence(std::string_view text);

}  // namespace twindh
