#pragma once

#include <string>
#include <string_view>

#include "twindh/digraph.hpp"

namespace twindh {

/// Reads the edge-list format: the first non-comment line holds the vertex
/// count n, every further non-empty line holds an arc "u v" (0-indexed).
/// Lines starting with '#' are comments. Loops, duplicate arcs, and
/// out-of-range ids raise ParseError carrying the 1-based line number.
Digraph parse_edge_list(std::string_view text);

/// Writes `g` in edge-list format with arcs in lexicographic order.
std::string format_edge_list(const Digraph& g);

}  // namespace twindh
