#include "twindh/cliquewidth.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_set>

#include "twindh/errors.hpp"
#include "twindh/text_util.hpp"

namespace twindh {

int CwExpression::create(int label, Vertex v) {
  nodes.push_back({Kind::Create, label, 0, v, -1, -1});
  return static_cast<int>(nodes.size()) - 1;
}

int CwExpression::unite(int left, int right) {
  nodes.push_back({Kind::Union, 0, 0, -1, left, right});
  return static_cast<int>(nodes.size()) - 1;
}

int CwExpression::add_arcs(int a, int b, int child) {
  nodes.push_back({Kind::AddArcs, a, b, -1, child, -1});
  return static_cast<int>(nodes.size()) - 1;
}

int CwExpression::relabel(int from, int to, int child) {
  nodes.push_back({Kind::Relabel, from, to, -1, child, -1});
  return static_cast<int>(nodes.size()) - 1;
}

namespace {

using Kind = CwExpression::Kind;

void check_node(const CwExpression::Node& node, int i) {
  const std::string where = "expression node " + std::to_string(i);
  switch (node.kind) {
    case Kind::Create:
      if (node.a <= 0) throw InputError(where + ": labels must be positive");
      if (node.vertex < 0) throw InputError(where + ": negative vertex id");
      return;
    case Kind::Union:
      if (node.left < 0 || node.left >= i || node.right < 0 || node.right >= i)
        throw InputError(where + ": invalid child index");
      return;
    case Kind::AddArcs:
    case Kind::Relabel:
      if (node.a <= 0 || node.b <= 0) throw InputError(where + ": labels must be positive");
      if (node.kind == Kind::AddArcs && node.a == node.b)
        throw InputError(where + ": arc insertion needs two different labels");
      if (node.left < 0 || node.left >= i) throw InputError(where + ": invalid child index");
      return;
  }
}

/// Marks the nodes reachable from `root`; rejects sharing and bad indices.
std::vector<char> reachable(const CwExpression& e, int root) {
  std::vector<char> seen(e.nodes.size(), 0);
  if (root < 0) return seen;
  if (root >= static_cast<int>(e.nodes.size())) throw InputError("expression root out of range");
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (seen[i]) throw InputError("expression node " + std::to_string(i) + " is shared");
    seen[i] = 1;
    const auto& node = e.nodes[i];
    check_node(node, i);
    if (node.kind == Kind::Union) stack.push_back(node.right);
    if (node.kind != Kind::Create) stack.push_back(node.left);
  }
  return seen;
}

using LabelClasses = std::map<int, std::vector<Vertex>>;

/// Moves `from` into `into`, copying the smaller list.
void merge_into(std::vector<Vertex>& into, std::vector<Vertex>& from) {
  if (into.size() < from.size()) into.swap(from);
  into.insert(into.end(), from.begin(), from.end());
  from.clear();
}

}  // namespace

LabeledDigraph eval_cw(const CwExpression& e, std::optional<int> root_override) {
  const int root = root_override.value_or(e.root);
  const auto seen = reachable(e, root);

  std::vector<LabelClasses> classes(e.nodes.size());
  std::unordered_set<Vertex> created;
  std::unordered_set<std::uint64_t> arc_keys;
  std::vector<Arc> arcs;
  Vertex max_id = -1;

  for (std::size_t i = 0; i < e.nodes.size(); ++i) {
    if (!seen[i]) continue;
    const auto& node = e.nodes[i];
    auto& mine = classes[i];
    switch (node.kind) {
      case Kind::Create:
        if (!created.insert(node.vertex).second)
          throw InputError("vertex " + std::to_string(node.vertex) + " is created twice");
        max_id = std::max(max_id, node.vertex);
        mine[node.a].push_back(node.vertex);
        break;
      case Kind::Union: {
        mine = std::move(classes[node.left]);
        for (auto& [label, list] : classes[node.right]) merge_into(mine[label], list);
        classes[node.right].clear();
        break;
      }
      case Kind::AddArcs: {
        mine = std::move(classes[node.left]);
        const auto tails = mine.find(node.a), heads = mine.find(node.b);
        if (tails == mine.end() || heads == mine.end()) break;
        for (Vertex u : tails->second)
          for (Vertex v : heads->second) {
            const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
            if (arc_keys.insert(key).second) arcs.emplace_back(u, v);
          }
        break;
      }
      case Kind::Relabel: {
        mine = std::move(classes[node.left]);
        if (node.a == node.b) break;
        const auto it = mine.find(node.a);
        if (it == mine.end()) break;
        auto moved = std::move(it->second);
        mine.erase(it);
        merge_into(mine[node.b], moved);
        break;
      }
    }
  }

  LabeledDigraph result;
  const int n = max_id + 1;
  result.labels.assign(static_cast<std::size_t>(n), 0);
  if (root >= 0)
    for (const auto& [label, list] : classes[root])
      for (Vertex v : list) result.labels[v] = label;
  result.graph = Digraph(n, arcs);
  return result;
}

std::size_t labels_used(const CwExpression& e) {
  std::set<int> labels;
  const auto seen = reachable(e, e.root);
  for (std::size_t i = 0; i < e.nodes.size(); ++i) {
    if (!seen[i]) continue;
    const auto& node = e.nodes[i];
    if (node.kind == Kind::Union) continue;
    labels.insert(node.a);
    if (node.kind != Kind::Create) labels.insert(node.b);
  }
  return labels.size();
}

CwExpression build_3expr(const PruningSequence& seq, const BuildObserver& observer) {
  check_sequence(seq);
  const std::size_t n = seq.vertex_count();
  CwExpression e;
  std::vector<int> x(n);
  for (std::size_t v = 0; v < n; ++v) x[v] = e.create(1, static_cast<Vertex>(v));

  for (std::size_t i = seq.steps.size(); i-- > 0;) {
    const auto& [v, op, a] = seq.steps[i];
    if (op == PruningOp::FalseTwin) {
      x[a] = e.unite(x[v], x[a]);
    } else {
      const int joined = e.unite(e.relabel(1, 2, x[v]), x[a]);
      switch (op) {
        case PruningOp::PendantPlus: x[a] = e.relabel(2, 3, e.add_arcs(2, 1, joined)); break;
        case PruningOp::PendantMinus: x[a] = e.relabel(2, 3, e.add_arcs(1, 2, joined)); break;
        case PruningOp::TrueInTwin: x[a] = e.relabel(2, 1, e.add_arcs(2, 1, joined)); break;
        case PruningOp::TrueOutTwin: x[a] = e.relabel(2, 1, e.add_arcs(1, 2, joined)); break;
        case PruningOp::BiorientedTrueTwin:
          x[a] = e.relabel(2, 1, e.add_arcs(1, 2, e.add_arcs(2, 1, joined)));
          break;
        case PruningOp::FalseTwin: break;
      }
    }
    e.root = x[a];
    if (observer) observer(i, e, x[a]);
  }
  e.root = x[seq.root];
  return e;
}

std::string serialize_cw(const CwExpression& e) {
  reachable(e, e.root);
  std::string text;
  if (e.root < 0) return text;
  // Entries >= 0 are nodes; negative entries are literal suffixes.
  static constexpr const char* kLiterals[] = {")", ","};
  std::vector<int> stack{e.root};
  while (!stack.empty()) {
    const int item = stack.back();
    stack.pop_back();
    if (item < 0) {
      text += kLiterals[-item - 1];
      continue;
    }
    const auto& node = e.nodes[item];
    switch (node.kind) {
      case Kind::Create:
        text += "c(" + std::to_string(node.a) + "," + std::to_string(node.vertex) + ")";
        break;
      case Kind::Union:
        text += "u(";
        stack.push_back(-1);
        stack.push_back(node.right);
        stack.push_back(-2);
        stack.push_back(node.left);
        break;
      case Kind::AddArcs:
      case Kind::Relabel:
        text += node.kind == Kind::AddArcs ? "a(" : "r(";
        text += std::to_string(node.a) + "," + std::to_string(node.b) + ",";
        stack.push_back(-1);
        stack.push_back(node.left);
        break;
    }
  }
  return text;
}

CwExpression parse_cw(std::string_view text) {
  struct Frame {
    Kind kind;
    int a = 0, b = 0;
    std::vector<int> children;
  };
  CwExpression e;
  std::vector<Frame> stack;
  std::unordered_set<Vertex> created;
  std::size_t pos = 0;

  auto fail = [&](const std::string& what) {
    return InputError("expression text, offset " + std::to_string(pos) + ": " + what);
  };
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_space();
    if (pos >= text.size() || text[pos] != c) throw fail(std::string("expected '") + c + "'");
    ++pos;
  };
  auto read_int = [&] {
    skip_space();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    const auto value = detail::parse_int(text.substr(start, pos - start));
    if (!value) {
      pos = start;
      throw fail("expected a non-negative integer");
    }
    return *value;
  };

  bool need_expr = true;
  while (true) {
    int completed = -1;
    if (need_expr) {
      skip_space();
      if (pos >= text.size()) throw fail("expected an expression");
      const char c = text[pos++];
      expect('(');
      if (c == 'c') {
        const std::size_t at = pos;
        const int label = read_int();
        if (label <= 0) {
          pos = at;
          throw fail("labels must be positive");
        }
        expect(',');
        const int id = read_int();
        expect(')');
        if (!created.insert(id).second) throw fail("vertex " + std::to_string(id) + " created twice");
        completed = e.create(label, id);
      } else if (c == 'u') {
        stack.push_back({Kind::Union, 0, 0, {}});
        continue;
      } else if (c == 'a' || c == 'r') {
        const std::size_t at = pos;
        Frame f{c == 'a' ? Kind::AddArcs : Kind::Relabel, 0, 0, {}};
        f.a = read_int();
        expect(',');
        f.b = read_int();
        expect(',');
        if (f.a <= 0 || f.b <= 0) {
          pos = at;
          throw fail("labels must be positive");
        }
        if (f.kind == Kind::AddArcs && f.a == f.b) {
          pos = at;
          throw fail("arc insertion needs two different labels");
        }
        stack.push_back(f);
        continue;
      } else {
        --pos;
        throw fail(std::string("unknown operation '") + c + "'");
      }
    }

    // Attach `completed` and close every frame that is now full.
    while (true) {
      if (stack.empty()) {
        e.root = completed;
        skip_space();
        if (pos != text.size()) throw fail("trailing text");
        return e;
      }
      Frame& top = stack.back();
      top.children.push_back(completed);
      if (top.kind == Kind::Union && top.children.size() == 1) {
        expect(',');
        need_expr = true;
        break;
      }
      expect(')');
      if (top.kind == Kind::Union) completed = e.unite(top.children[0], top.children[1]);
      else if (top.kind == Kind::AddArcs) completed = e.add_arcs(top.a, top.b, top.children[0]);
      else completed = e.relabel(top.a, top.b, top.children[0]);
      stack.pop_back();
    }
  }
}

std::string cw_to_dot(const CwExpression& e) {
  const auto seen = reachable(e, e.root);
  std::string dot = "digraph cw {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < e.nodes.size(); ++i) {
    if (!seen[i]) continue;
    const auto& node = e.nodes[i];
    std::string label;
    switch (node.kind) {
      case Kind::Create: label = "c(" + std::to_string(node.a) + "," + std::to_string(node.vertex) + ")"; break;
      case Kind::Union: label = "u"; break;
      case Kind::AddArcs: label = "a(" + std::to_string(node.a) + "," + std::to_string(node.b) + ")"; break;
      case Kind::Relabel: label = "r(" + std::to_string(node.a) + "," + std::to_string(node.b) + ")"; break;
    }
    const std::string id = "n" + std::to_string(i);
    dot += "  " + id + " [label=\"" + label + "\"];\n";
    if (node.kind != Kind::Create) dot += "  " + id + " -> n" + std::to_string(node.left) + ";\n";
    if (node.kind == Kind::Union) dot += "  " + id + " -> n" + std::to_string(node.right) + ";\n";
  }
  dot += "}\n";
  return dot;
}

namespace {

// Packed labeled digraph on at most 4 vertices: bits 0-3 vertex mask,
// bits 4-19 arcs (u*4+v), bits 20-27 labels (2 bits per vertex, value-1).
struct Packed {
  static constexpr int kArcShift = 4, kLabelShift = 20;

  static std::uint32_t mask(std::uint32_t s) { return s & 0xF; }
  static std::uint32_t arcs(std::uint32_t s) { return (s >> kArcShift) & 0xFFFF; }
  static int label(std::uint32_t s, int v) { return static_cast<int>((s >> (kLabelShift + 2 * v)) & 3) + 1; }
  static std::uint32_t with_label(std::uint32_t s, int v, int l) {
    s &= ~(std::uint32_t{3} << (kLabelShift + 2 * v));
    return s | (static_cast<std::uint32_t>(l - 1) << (kLabelShift + 2 * v));
  }
  static std::uint32_t with_arc(std::uint32_t s, int u, int v) {
    return s | (std::uint32_t{1} << (kArcShift + u * 4 + v));
  }
};

}  // namespace

LabelClosure label_closure(int labels, int vertices) {
  if (labels < 1 || labels > 3 || vertices < 1 || vertices > 4)
    throw InputError("label closure supports 1..3 labels and 1..4 vertices");

  std::unordered_set<std::uint32_t> known;
  std::vector<std::uint32_t> work;
  std::vector<std::vector<std::uint32_t>> done_by_mask(16);
  auto add = [&](std::uint32_t s) {
    if (known.insert(s).second) work.push_back(s);
  };

  for (int v = 0; v < vertices; ++v)
    for (int l = 1; l <= labels; ++l) add(Packed::with_label(std::uint32_t{1} << v, v, l));

  while (!work.empty()) {
    const std::uint32_t s = work.back();
    work.pop_back();
    const std::uint32_t m = Packed::mask(s);

    for (int a = 1; a <= labels; ++a)
      for (int b = 1; b <= labels; ++b) {
        if (a == b) continue;
        std::uint32_t arcs = s, relabeled = s;
        for (int u = 0; u < vertices; ++u) {
          if (!((m >> u) & 1)) continue;
          if (Packed::label(s, u) == a) relabeled = Packed::with_label(relabeled, u, b);
          for (int v = 0; v < vertices; ++v)
            if (u != v && ((m >> v) & 1) && Packed::label(s, u) == a && Packed::label(s, v) == b)
              arcs = Packed::with_arc(arcs, u, v);
        }
        add(arcs);
        add(relabeled);
      }

    for (std::uint32_t other = 0; other < 16; ++other) {
      if (other & m) continue;
      for (std::uint32_t t : done_by_mask[other]) {
        const std::uint32_t label_bits = ((s | t) >> Packed::kLabelShift) << Packed::kLabelShift;
        add(m | other | ((Packed::arcs(s) | Packed::arcs(t)) << Packed::kArcShift) | label_bits);
      }
    }
    done_by_mask[m].push_back(s);
  }

  LabelClosure result;
  result.states = known.size();
  const std::uint32_t full = (std::uint32_t{1} << vertices) - 1;
  for (std::uint32_t s : known) {
    if (Packed::mask(s) != full) continue;
    std::uint64_t code = 0;
    for (int u = 0; u < vertices; ++u)
      for (int v = 0; v < vertices; ++v)
        if ((Packed::arcs(s) >> (u * 4 + v)) & 1) code |= std::uint64_t{1} << (u * vertices + v);
    result.complete_graphs.insert(code);
  }
  return result;
}

}  // namespace twindh
