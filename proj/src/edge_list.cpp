#include "twindh/edge_list.hpp"

#include <charconv>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "twindh/errors.hpp"
#include "twindh/text_util.hpp"

namespace twindh {

Digraph parse_edge_list(std::string_view text) {
  std::optional<int> n;
  std::vector<Arc> arcs;
  std::unordered_set<std::uint64_t> seen;

  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split_fields(line);
    if (!n) {
      if (fields.size() != 1) throw ParseError(line_no, "expected the vertex count");
      const auto count = detail::parse_int(fields[0]);
      if (!count || *count < 0) throw ParseError(line_no, "invalid vertex count");
      n = *count;
      continue;
    }
    if (fields.size() != 2) throw ParseError(line_no, "expected \"u v\"");
    const auto u = detail::parse_int(fields[0]);
    const auto v = detail::parse_int(fields[1]);
    if (!u || !v) throw ParseError(line_no, "invalid vertex id");
    if (*u < 0 || *u >= *n || *v < 0 || *v >= *n)
      throw ParseError(line_no, "vertex id out of range");
    if (*u == *v) throw ParseError(line_no, "loop at vertex " + std::to_string(*u));
    const auto key = (static_cast<std::uint64_t>(*u) << 32) | static_cast<std::uint32_t>(*v);
    if (!seen.insert(key).second)
      throw ParseError(line_no, "duplicate arc " + std::to_string(*u) + " " + std::to_string(*v));
    arcs.emplace_back(*u, *v);
  }
  if (!n) throw ParseError(line_no, "missing vertex count");
  return Digraph(*n, arcs);
}

std::string format_edge_list(const Digraph& g) {
  std::ostringstream out;
  out << g.vertex_count() << '\n';
  for (const auto& [u, v] : g.arcs()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace twindh
