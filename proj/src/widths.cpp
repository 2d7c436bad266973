#include "twindh/widths.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "twindh/errors.hpp"

namespace twindh {

namespace {

using Kind = CoTree::Kind;

/// Copies the subtree of `pool` rooted at `root` into an ordered arena.
CoTree extract(const std::vector<CoTree::Node>& pool, int root) {
  CoTree t;
  std::vector<std::pair<int, bool>> stack{{root, false}};
  std::vector<int> built;
  while (!stack.empty()) {
    const auto [i, expanded] = stack.back();
    stack.pop_back();
    const auto& node = pool[i];
    if (node.kind == Kind::Leaf) {
      built.push_back(t.add_leaf(node.vertex));
    } else if (!expanded) {
      stack.push_back({i, true});
      stack.push_back({node.right, false});
      stack.push_back({node.left, false});
    } else {
      const int right = built.back();
      built.pop_back();
      const int left = built.back();
      built.pop_back();
      built.push_back(t.add_node(node.kind, left, right));
    }
  }
  t.root = built.back();
  return t;
}

}  // namespace

int width_of_cotree(const CoTree& t) {
  if (t.root < 0) throw InputError("empty co-tree");
  cotree_leaves(t);  // validates the arena
  std::vector<int> size(t.nodes.size(), 0), width(t.nodes.size(), 0);
  for (std::size_t i = 0; i <= static_cast<std::size_t>(t.root); ++i) {
    const auto& node = t.nodes[i];
    if (node.kind == Kind::Leaf) {
      size[i] = 1;
      continue;
    }
    if (node.left < 0 || node.right < 0 || static_cast<std::size_t>(node.left) >= i ||
        static_cast<std::size_t>(node.right) >= i)
      continue;  // unreachable scratch node
    const int n1 = size[node.left], n2 = size[node.right];
    const int w1 = width[node.left], w2 = width[node.right];
    size[i] = n1 + n2;
    width[i] = node.kind == Kind::Series ? std::min(w1 + n2, w2 + n1) : std::max(w1, w2);
  }
  return width[t.root];
}

WidthReport widths_twin_dh(const Digraph& g, const PruningSequence& seq) {
  if (const auto report = validate_sequence(seq, g); !report)
    throw CertificateError("certificate rejected: " + report.message);

  const int n = g.vertex_count();
  std::vector<CoTree::Node> pool;
  pool.reserve(2 * static_cast<std::size_t>(n));
  std::vector<int> leaf_of(static_cast<std::size_t>(n), -1);
  std::vector<int> tree_roots;
  auto new_leaf = [&](Vertex v) {
    pool.push_back({Kind::Leaf, v, -1, -1});
    leaf_of[v] = static_cast<int>(pool.size()) - 1;
    return leaf_of[v];
  };

  tree_roots.push_back(new_leaf(seq.root));
  for (const auto& step : seq.steps) {
    if (!is_twin_op(step.op)) {
      tree_roots.push_back(new_leaf(step.vertex));
      continue;
    }
    const int slot = leaf_of[step.anchor];
    const int a = new_leaf(step.anchor);
    const int v = new_leaf(step.vertex);
    CoTree::Node& node = pool[slot];
    switch (step.op) {
      case PruningOp::FalseTwin: node = {Kind::Union, -1, a, v}; break;
      case PruningOp::BiorientedTrueTwin: node = {Kind::Series, -1, a, v}; break;
      case PruningOp::TrueInTwin: node = {Kind::Order, -1, v, a}; break;
      case PruningOp::TrueOutTwin: node = {Kind::Order, -1, a, v}; break;
      default: break;
    }
  }

  WidthReport report;
  std::vector<int> stack;
  for (int r : tree_roots) {
    stack.push_back(r);
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      const auto& node = pool[i];
      if (node.kind == Kind::Leaf || node.kind == Kind::Series) {
        ComponentWidth c;
        c.cotree = extract(pool, i);
        c.vertices = cotree_leaves(c.cotree);
        std::sort(c.vertices.begin(), c.vertices.end());
        c.width = width_of_cotree(c.cotree);
        report.components.push_back(std::move(c));
      } else {
        stack.push_back(node.right);
        stack.push_back(node.left);
      }
    }
  }
  std::sort(report.components.begin(), report.components.end(),
            [](const ComponentWidth& a, const ComponentWidth& b) {
              return a.vertices.front() < b.vertices.front();
            });

  const auto scc = strong_components(g);
  if (scc.size() != report.components.size())
    throw InternalInconsistency("co-tree components disagree with the strong components");
  for (std::size_t i = 0; i < scc.size(); ++i)
    if (scc[i] != report.components[i].vertices)
      throw InternalInconsistency("co-tree components disagree with the strong components");

  int w = 0;
  for (const auto& c : report.components) w = std::max(w, c.width);
  report.dpw = report.dtw = report.cyr = w;
  report.dagw = w + 1;
  return report;
}

namespace {

using Mask = std::uint32_t;

/// Strong components of the subdigraph induced by `mask`, as masks.
std::vector<Mask> components_within(const std::vector<Mask>& out, Mask mask) {
  const int n = static_cast<int>(out.size());
  std::vector<Mask> reach(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    if (!((mask >> v) & 1)) continue;
    Mask seen = Mask{1} << v, frontier = seen;
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= out[std::countr_zero(f)];
      next &= mask & ~seen;
      seen |= next;
      frontier = next;
    }
    reach[v] = seen;
  }
  std::vector<Mask> comps;
  Mask left = mask;
  while (left) {
    const int v = std::countr_zero(left);
    Mask comp = 0;
    for (Mask m = reach[v]; m; m &= m - 1) {
      const int u = std::countr_zero(m);
      if ((reach[u] >> v) & 1) comp |= Mask{1} << u;
    }
    comps.push_back(comp);
    left &= ~comp;
  }
  return comps;
}

std::vector<Mask> out_masks(const Digraph& g) {
  std::vector<Mask> out(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const auto& [u, v] : g.arcs()) out[u] |= Mask{1} << v;
  return out;
}

}  // namespace

int cycle_rank_bruteforce(const Digraph& g, int cap) {
  const int n = g.vertex_count();
  cap = std::min(cap, 24);
  if (n > cap) throw CapExceeded("cycle rank", n, cap);
  const auto out = out_masks(g);
  std::vector<int> memo(std::size_t{1} << n, -1);

  // Explicit stack: a subset is finished once all its strong components'
  // one-vertex deletions are known.
  const Mask all = n == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << n) - 1);
  std::vector<Mask> stack{all};
  while (!stack.empty()) {
    const Mask mask = stack.back();
    if (memo[mask] >= 0) {
      stack.pop_back();
      continue;
    }
    int value = 0;
    bool pending = false;
    for (Mask comp : components_within(out, mask)) {
      if (std::popcount(comp) == 1) continue;
      int best = -1;
      for (Mask m = comp; m; m &= m - 1) {
        const Mask sub = comp & ~(m & (~m + 1));
        if (memo[sub] < 0) {
          stack.push_back(sub);
          pending = true;
        } else if (best < 0 || memo[sub] < best) {
          best = memo[sub];
        }
      }
      if (!pending) value = std::max(value, 1 + best);
    }
    if (pending) continue;
    memo[mask] = value;
    stack.pop_back();
  }
  return memo[all];
}

int dpw_bruteforce(const Digraph& g, int cap) {
  const int n = g.vertex_count();
  cap = std::min(cap, 24);
  if (n > cap) throw CapExceeded("directed path-width", n, cap);
  std::vector<Mask> in(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : g.arcs()) in[v] |= Mask{1} << u;

  const std::size_t states = std::size_t{1} << n;
  std::vector<int> best(states, 0);
  for (std::size_t p = 1; p < states; ++p) {
    const Mask prefix = static_cast<Mask>(p);
    Mask into = 0;
    for (Mask m = prefix; m; m &= m - 1) into |= in[std::countr_zero(m)];
    const int cost = std::popcount(into & ~prefix);
    int grow = n;
    for (Mask m = prefix; m; m &= m - 1) grow = std::min(grow, best[prefix & ~(m & (~m + 1))]);
    best[p] = std::max(cost, grow);
  }
  return best[states - 1];
}

}  // namespace twindh
