#include "twindh/cograph.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "twindh/errors.hpp"
#include "twindh/text_util.hpp"

namespace twindh {

int CoTree::add_leaf(Vertex v) {
  nodes.push_back({Kind::Leaf, v, -1, -1});
  return static_cast<int>(nodes.size()) - 1;
}

int CoTree::add_node(Kind kind, int left, int right) {
  nodes.push_back({kind, -1, left, right});
  return static_cast<int>(nodes.size()) - 1;
}

std::size_t CoTree::leaf_count() const {
  return root < 0 ? 0 : cotree_leaves(*this).size();
}

std::string_view kind_name(CoTree::Kind kind) noexcept {
  switch (kind) {
    case CoTree::Kind::Leaf: return "LEAF";
    case CoTree::Kind::Union: return "OPLUS";
    case CoTree::Kind::Order: return "OSLASH";
    case CoTree::Kind::Series: return "OTIMES";
  }
  return "?";
}

namespace {

/// Reachable nodes of a well-formed arena, checked for sharing and ordering.
std::vector<char> reachable_nodes(const CoTree& t) {
  const int size = static_cast<int>(t.nodes.size());
  std::vector<char> seen(t.nodes.size(), 0);
  if (t.root < 0) return seen;
  if (t.root >= size) throw InputError("co-tree root index out of range");
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (seen[i]) throw InputError("co-tree node " + std::to_string(i) + " is shared");
    seen[i] = 1;
    const auto& node = t.nodes[i];
    if (node.kind == CoTree::Kind::Leaf) {
      if (node.vertex < 0) throw InputError("co-tree leaf with negative vertex id");
      continue;
    }
    for (int c : {node.left, node.right}) {
      if (c < 0 || c >= i)
        throw InputError("co-tree node " + std::to_string(i) + " has an invalid child index");
      stack.push_back(c);
    }
  }
  return seen;
}

}  // namespace

std::vector<Vertex> cotree_leaves(const CoTree& t) {
  reachable_nodes(t);
  std::vector<Vertex> leaves;
  if (t.root < 0) return leaves;
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    const auto& node = t.nodes[stack.back()];
    stack.pop_back();
    if (node.kind == CoTree::Kind::Leaf) {
      leaves.push_back(node.vertex);
    } else {
      stack.push_back(node.right);
      stack.push_back(node.left);
    }
  }
  return leaves;
}

Digraph eval_cotree(const CoTree& t, std::optional<int> vertex_count) {
  const auto seen = reachable_nodes(t);
  std::vector<std::vector<Vertex>> leaves(t.nodes.size());
  std::vector<Arc> arcs;
  Vertex max_leaf = -1;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (!seen[i]) continue;
    const auto& node = t.nodes[i];
    if (node.kind == CoTree::Kind::Leaf) {
      leaves[i].push_back(node.vertex);
      max_leaf = std::max(max_leaf, node.vertex);
      continue;
    }
    auto& l = leaves[node.left];
    auto& r = leaves[node.right];
    for (Vertex a : l)
      for (Vertex b : r) {
        if (node.kind != CoTree::Kind::Union) arcs.emplace_back(a, b);
        if (node.kind == CoTree::Kind::Series) arcs.emplace_back(b, a);
      }
    leaves[i] = std::move(l);
    leaves[i].insert(leaves[i].end(), r.begin(), r.end());
    r.clear();
    r.shrink_to_fit();
  }
  const int n = vertex_count.value_or(max_leaf + 1);
  if (max_leaf >= n) throw InputError("co-tree leaf id exceeds the vertex count");
  if (t.root >= 0) {
    auto all = leaves[t.root];
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
      throw InputError("co-tree has duplicate leaves");
  }
  return Digraph(n, arcs);
}

namespace {

/// Dense bit rows over the current representatives.
class BitRows {
public:
  BitRows(int n) : words_((static_cast<std::size_t>(n) + 63) / 64), bits_(n * words_, 0) {}

  void set(int r, int c) { bits_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  void reset(int r, int c) { bits_[r * words_ + c / 64] &= ~(std::uint64_t{1} << (c % 64)); }
  bool test(int r, int c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1; }

  /// Rows u and v agree outside columns u and v.
  bool equal_except(int u, int v) const {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t a = bits_[u * words_ + w], b = bits_[v * words_ + w];
      for (int c : {u, v})
        if (static_cast<std::size_t>(c / 64) == w) {
          a &= ~(std::uint64_t{1} << (c % 64));
          b &= ~(std::uint64_t{1} << (c % 64));
        }
      if (a != b) return false;
    }
    return true;
  }

private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

std::optional<CoTree> build_cotree(const Digraph& g, bool verify_steps) {
  const int n = g.vertex_count();
  CoTree t;
  if (n == 0) return t;

  BitRows out(n), in(n);
  for (const auto& [u, v] : g.arcs()) {
    out.set(u, v);
    in.set(v, u);
  }
  std::vector<int> subtree(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) subtree[v] = t.add_leaf(v);
  std::vector<Vertex> alive(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) alive[v] = v;

  while (alive.size() > 1) {
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t i = 0; i < alive.size() && !pair; ++i)
      for (std::size_t j = i + 1; j < alive.size(); ++j)
        if (out.equal_except(alive[i], alive[j]) && in.equal_except(alive[i], alive[j])) {
          pair.emplace(i, j);
          break;
        }
    if (!pair) return std::nullopt;

    const Vertex u = alive[pair->first], v = alive[pair->second];
    const bool uv = out.test(u, v), vu = out.test(v, u);
    int node;
    if (uv && vu) node = t.add_node(CoTree::Kind::Series, subtree[u], subtree[v]);
    else if (uv) node = t.add_node(CoTree::Kind::Order, subtree[u], subtree[v]);
    else if (vu) node = t.add_node(CoTree::Kind::Order, subtree[v], subtree[u]);
    else node = t.add_node(CoTree::Kind::Union, subtree[u], subtree[v]);
    subtree[u] = node;

    for (Vertex w : alive) {
      out.reset(w, v);
      in.reset(w, v);
    }
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pair->second));

    if (verify_steps) {
      CoTree part = t;
      part.root = node;
      const auto leaves = cotree_leaves(part);
      const auto sub = induced_subgraph(g, leaves);
      CoTree local = part;
      for (auto& nd : local.nodes)
        if (nd.kind == CoTree::Kind::Leaf) nd.vertex = sub.to_local[nd.vertex];
      if (!(eval_cotree(local, sub.graph.vertex_count()) == sub.graph))
        throw InternalInconsistency("twin contraction produced a subtree that does not match");
    }
  }
  t.root = subtree[alive.front()];
  if (!(eval_cotree(t, n) == g))
    throw InternalInconsistency("co-tree does not evaluate back to its input");
  return t;
}

ComponentCotrees strong_components_are_cographs(const Digraph& g) {
  ComponentCotrees result;
  result.components = strong_components(g);
  for (const auto& comp : result.components) {
    const auto sub = induced_subgraph(g, comp);
    auto tree = build_cotree(sub.graph);
    if (tree) {
      for (auto& node : tree->nodes)
        if (node.kind == CoTree::Kind::Leaf) node.vertex = sub.to_original[node.vertex];
    } else {
      result.all_cographs = false;
    }
    result.trees.push_back(std::move(tree));
  }
  return result;
}

std::string serialize_cotree(const CoTree& t) {
  reachable_nodes(t);
  std::string text;
  if (t.root < 0) return text;
  // Negative entries close a parenthesis; -2 - i emits a space before node i.
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    const int item = stack.back();
    stack.pop_back();
    if (item == -1) {
      text += ')';
      continue;
    }
    int i = item;
    if (item <= -2) {
      text += ' ';
      i = -2 - item;
    }
    const auto& node = t.nodes[i];
    if (node.kind == CoTree::Kind::Leaf) {
      text += std::to_string(node.vertex);
      continue;
    }
    text += '(';
    text += kind_name(node.kind);
    stack.push_back(-1);
    stack.push_back(-2 - node.right);
    stack.push_back(-2 - node.left);
  }
  return text;
}

CoTree parse_cotree(std::string_view text) {
  struct Frame {
    CoTree::Kind kind;
    std::vector<int> children;
  };
  CoTree t;
  std::vector<Frame> stack;
  bool done = false;
  std::size_t pos = 0;

  auto fail = [&](const std::string& what) -> InputError {
    return InputError("co-tree text, offset " + std::to_string(pos) + ": " + what);
  };
  auto attach = [&](int node) {
    if (stack.empty()) {
      t.root = node;
      done = true;
    } else {
      if (stack.back().children.size() == 2) throw fail("more than two children");
      stack.back().children.push_back(node);
    }
  };

  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (done) throw fail("trailing text");
    if (c == '(') {
      ++pos;
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      const std::size_t start = pos;
      while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
      const std::string_view word = text.substr(start, pos - start);
      CoTree::Kind kind;
      if (word == "OPLUS") kind = CoTree::Kind::Union;
      else if (word == "OSLASH") kind = CoTree::Kind::Order;
      else if (word == "OTIMES") kind = CoTree::Kind::Series;
      else throw fail("expected OPLUS, OSLASH or OTIMES");
      stack.push_back({kind, {}});
    } else if (c == ')') {
      if (stack.empty()) throw fail("unbalanced ')'");
      if (stack.back().children.size() != 2) throw fail("node needs exactly two children");
      const Frame f = std::move(stack.back());
      stack.pop_back();
      ++pos;
      attach(t.add_node(f.kind, f.children[0], f.children[1]));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      const auto id = detail::parse_int(text.substr(start, pos - start));
      if (!id) throw fail("bad vertex id");
      attach(t.add_leaf(*id));
    } else {
      throw fail(std::string("unexpected character '") + c + "'");
    }
  }
  if (!stack.empty()) throw fail("unterminated node");
  if (!done) throw fail("empty co-tree");
  auto leaves = cotree_leaves(t);
  std::sort(leaves.begin(), leaves.end());
  if (std::adjacent_find(leaves.begin(), leaves.end()) != leaves.end())
    throw InputError("co-tree has duplicate leaves");
  return t;
}

}  // namespace twindh
