#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twindh/digraph.hpp"

namespace twindh {

/// Binary co-tree over disjoint union (OPLUS), order composition (OSLASH,
/// arcs from every left leaf to every right leaf) and series composition
/// (OTIMES, arcs both ways).
///
/// Nodes live in an arena; children always have smaller indices than their
/// parent, so a forward pass over `nodes` is a valid bottom-up order.
struct CoTree {
  enum class Kind { Leaf, Union, Order, Series };

  struct Node {
    Kind kind = Kind::Leaf;
    Vertex vertex = -1;  ///< leaves only
    int left = -1;
    int right = -1;
    friend bool operator==(const Node&, const Node&) = default;
  };

  std::vector<Node> nodes;
  int root = -1;

  int add_leaf(Vertex v);
  int add_node(Kind kind, int left, int right);

  std::size_t leaf_count() const;
  friend bool operator==(const CoTree&, const CoTree&) = default;
};

std::string_view kind_name(CoTree::Kind kind) noexcept;

/// Leaves in left-to-right order. Throws InputError on a malformed arena.
std::vector<Vertex> cotree_leaves(const CoTree& t);

/// The denoted digraph on `vertex_count` vertices (default: largest leaf + 1).
/// Vertices without a leaf stay isolated. Throws InputError on duplicate
/// leaves or a malformed arena.
Digraph eval_cotree(const CoTree& t, std::optional<int> vertex_count = std::nullopt);

/// Co-tree of `g` by twin contraction, or nullopt when `g` is not a directed
/// co-graph. The representative of a merged pair is its smaller id and pairs
/// are searched in lexicographic order. With `verify_steps`, every merged
/// subtree is evaluated against the subdigraph it claims to denote.
std::optional<CoTree> build_cotree(const Digraph& g, bool verify_steps = false);

struct ComponentCotrees {
  bool all_cographs = true;
  std::vector<VertexSet> components;         ///< strong components
  std::vector<std::optional<CoTree>> trees;  ///< leaves carry original ids
};

ComponentCotrees strong_components_are_cographs(const Digraph& g);

/// Prefix text such as "(OTIMES (OPLUS 0 1) 2)".
std::string serialize_cotree(const CoTree& t);
/// Throws InputError naming the character offset of the first problem.
CoTree parse_cotree(std::string_view text);

}  // namespace twindh
