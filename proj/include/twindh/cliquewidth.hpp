#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "twindh/digraph.hpp"
#include "twindh/pruning.hpp"

namespace twindh {

/// Directed clique-width expression. Nodes live in an arena and children
/// always precede their parent.
struct CwExpression {
  enum class Kind { Create, Union, AddArcs, Relabel };

  struct Node {
    Kind kind = Kind::Create;
    int a = 0;           ///< Create: label; AddArcs: tail label; Relabel: source label
    int b = 0;           ///< AddArcs: head label; Relabel: target label
    Vertex vertex = -1;  ///< Create only
    int left = -1;       ///< Union: left; AddArcs/Relabel: the child
    int right = -1;      ///< Union only
    friend bool operator==(const Node&, const Node&) = default;
  };

  std::vector<Node> nodes;
  int root = -1;

  int create(int label, Vertex v);
  int unite(int left, int right);
  int add_arcs(int a, int b, int child);
  int relabel(int from, int to, int child);

  friend bool operator==(const CwExpression&, const CwExpression&) = default;
};

struct LabeledDigraph {
  Digraph graph;
  /// labels[v] is the final label of v, or 0 when the expression never creates v.
  std::vector<int> labels;
};

/// Evaluates the subexpression at `root` (default: the whole expression).
/// The digraph has max created id + 1 vertices. Throws InputError on a
/// duplicate creation, an AddArcs with equal labels, a non-positive label or
/// a malformed arena.
LabeledDigraph eval_cw(const CwExpression& e, std::optional<int> root = std::nullopt);

/// Number of distinct labels mentioned anywhere in the expression.
std::size_t labels_used(const CwExpression& e);

/// Called after each builder step with the step index, the expression so far
/// and the node now standing for the step's anchor.
using BuildObserver = std::function<void(std::size_t step, const CwExpression&, int node)>;

/// 3-expression for the digraph of `seq`. Every vertex starts as a label-1
/// creation; steps are folded into their anchors from the last one back.
/// Throws MalformedSequence when `seq` is structurally invalid.
CwExpression build_3expr(const PruningSequence& seq, const BuildObserver& observer = {});

/// Text form: c(<label>,<id>), u(<e>,<e>), a(<a>,<b>,<e>), r(<a>,<b>,<e>).
std::string serialize_cw(const CwExpression& e);
/// Throws InputError naming the character offset of the first problem.
CwExpression parse_cw(std::string_view text);

/// Graphviz rendering of the expression tree.
std::string cw_to_dot(const CwExpression& e);

struct LabelClosure {
  std::size_t states = 0;  ///< labeled digraphs reached
  /// Adjacency codes (bit u*n+v) of the reachable digraphs that contain all
  /// `vertices` vertices.
  std::set<std::uint64_t> complete_graphs;
};

/// Every labeled digraph on subsets of {0..vertices-1} that some expression
/// over labels 1..labels evaluates to, computed as a fixpoint of the four
/// operations. Needs vertices <= 4 and labels <= 3.
LabelClosure label_closure(int labels, int vertices);

}  // namespace twindh
