#include "twindh/pruning.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "twindh/errors.hpp"
#include "twindh/text_util.hpp"

namespace twindh {

namespace {

constexpr std::array<std::string_view, kPruningOpCount> kOpCodes = {"PP",  "PM",  "FT",
                                                                     "TIT", "TOT", "TBT"};

std::string arc_text(Vertex u, Vertex v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

bool is_twin_op(PruningOp op) noexcept {
  return op != PruningOp::PendantPlus && op != PruningOp::PendantMinus;
}

std::string_view op_code(PruningOp op) noexcept { return kOpCodes[static_cast<std::size_t>(op)]; }

std::optional<PruningOp> op_from_code(std::string_view code) noexcept {
  for (std::size_t i = 0; i < kOpCodes.size(); ++i)
    if (kOpCodes[i] == code) return static_cast<PruningOp>(i);
  return std::nullopt;
}

void check_sequence(const PruningSequence& seq) {
  const auto n = static_cast<Vertex>(seq.vertex_count());
  std::vector<char> present(static_cast<std::size_t>(n), 0);
  if (seq.root < 0 || seq.root >= n)
    throw MalformedSequence(0, "root " + std::to_string(seq.root) + " is not in 0.." +
                                   std::to_string(n - 1));
  present[seq.root] = 1;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const auto& [v, op, a] = seq.steps[i];
    const std::size_t idx = i + 1;
    if (v < 0 || v >= n)
      throw MalformedSequence(idx, "vertex " + std::to_string(v) + " is not in 0.." +
                                       std::to_string(n - 1));
    if (present[v]) throw MalformedSequence(idx, "vertex " + std::to_string(v) + " is not fresh");
    if (a < 0 || a >= n || !present[a])
      throw MalformedSequence(idx, "anchor " + std::to_string(a) + " does not precede the step");
    present[v] = 1;
  }
}

Digraph apply_sequence(const PruningSequence& seq) {
  check_sequence(seq);
  const std::size_t n = seq.vertex_count();
  std::vector<std::vector<Vertex>> out(n), in(n);
  auto add = [&](Vertex u, Vertex v) {
    out[u].push_back(v);
    in[v].push_back(u);
  };
  for (const auto& [v, op, a] : seq.steps) {
    switch (op) {
      case PruningOp::PendantPlus: add(v, a); continue;
      case PruningOp::PendantMinus: add(a, v); continue;
      default: break;
    }
    // Copies are taken before the new arcs land in a's lists.
    const auto succ = out[a];
    const auto pred = in[a];
    for (Vertex w : succ) add(v, w);
    for (Vertex w : pred) add(w, v);
    if (op == PruningOp::TrueInTwin || op == PruningOp::BiorientedTrueTwin) add(v, a);
    if (op == PruningOp::TrueOutTwin || op == PruningOp::BiorientedTrueTwin) add(a, v);
  }
  std::vector<Arc> arcs;
  for (std::size_t u = 0; u < n; ++u)
    for (Vertex v : out[u]) arcs.emplace_back(static_cast<Vertex>(u), v);
  return Digraph(static_cast<int>(n), arcs);
}

ValidationReport validate_sequence(const PruningSequence& seq, const Digraph& g) {
  ValidationReport report;
  auto fail = [&](std::size_t step, std::string message) {
    report.valid = false;
    report.step = step;
    report.message = std::move(message);
    return report;
  };
  try {
    check_sequence(seq);
  } catch (const MalformedSequence& e) {
    return fail(e.step(), e.what());
  }
  if (static_cast<int>(seq.vertex_count()) != g.vertex_count())
    return fail(0, "sequence has " + std::to_string(seq.vertex_count()) +
                       " vertices, graph has " + std::to_string(g.vertex_count()));

  // Rebuilding is linear in n + m; the step-by-step scan below only runs to
  // locate the first failing step.
  if (apply_sequence(seq) == g) return report;

  std::vector<std::size_t> pos(static_cast<std::size_t>(g.vertex_count()));
  pos[seq.root] = 0;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) pos[seq.steps[i].vertex] = i + 1;

  auto earlier = [&](const std::vector<Vertex>& list, std::size_t before, Vertex skip) {
    std::vector<Vertex> r;
    for (Vertex w : list)
      if (pos[w] < before && w != skip) r.push_back(w);
    return r;
  };

  // Every arc joins a later vertex to an earlier one, so checking each new
  // vertex against its predecessors covers the whole arc set.
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const auto& [v, op, a] = seq.steps[i];
    const std::size_t idx = i + 1;
    std::vector<Vertex> want_out, want_in;
    if (op == PruningOp::PendantPlus) {
      want_out = {a};
    } else if (op == PruningOp::PendantMinus) {
      want_in = {a};
    } else {
      want_out = earlier(g.out_neighbors(a), idx, v);
      want_in = earlier(g.in_neighbors(a), idx, v);
      if (op == PruningOp::TrueInTwin || op == PruningOp::BiorientedTrueTwin)
        want_out.insert(std::lower_bound(want_out.begin(), want_out.end(), a), a);
      if (op == PruningOp::TrueOutTwin || op == PruningOp::BiorientedTrueTwin)
        want_in.insert(std::lower_bound(want_in.begin(), want_in.end(), a), a);
    }
    const auto have_out = earlier(g.out_neighbors(v), idx, -1);
    const auto have_in = earlier(g.in_neighbors(v), idx, -1);

    auto compare = [&](const std::vector<Vertex>& have, const std::vector<Vertex>& want,
                       bool outgoing) -> std::optional<std::string> {
      std::vector<Vertex> extra, missing;
      std::set_difference(have.begin(), have.end(), want.begin(), want.end(),
                          std::back_inserter(extra));
      std::set_difference(want.begin(), want.end(), have.begin(), have.end(),
                          std::back_inserter(missing));
      auto arc = [&](Vertex w) { return outgoing ? arc_text(v, w) : arc_text(w, v); };
      if (!extra.empty())
        return "arc " + arc(extra.front()) + " is in the graph but missing from the reconstruction";
      if (!missing.empty())
        return "arc " + arc(missing.front()) + " is produced by the sequence but absent from the graph";
      return std::nullopt;
    };
    if (auto m = compare(have_out, want_out, true))
      return fail(idx, "step " + std::to_string(idx) + " (" + std::to_string(v) + " " +
                           std::string(op_code(op)) + " " + std::to_string(a) + "): " + *m);
    if (auto m = compare(have_in, want_in, false))
      return fail(idx, "step " + std::to_string(idx) + " (" + std::to_string(v) + " " +
                           std::string(op_code(op)) + " " + std::to_string(a) + "): " + *m);
  }
  throw InternalInconsistency("sequence rebuilds a different graph but no step disagrees");
}

namespace {

/// Degree counts of g restricted to the alive vertices, kept in sync on removal.
class AliveView {
public:
  explicit AliveView(const Digraph& g)
      : g_(g), alive_(static_cast<std::size_t>(g.vertex_count()), 1),
        outdeg_(static_cast<std::size_t>(g.vertex_count())),
        indeg_(static_cast<std::size_t>(g.vertex_count())) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      outdeg_[v] = static_cast<int>(g.out_neighbors(v).size());
      indeg_[v] = static_cast<int>(g.in_neighbors(v).size());
    }
  }

  bool alive(Vertex v) const { return alive_[v] != 0; }
  std::span<const char> mask() const { return alive_; }

  void remove(Vertex v) {
    alive_[v] = 0;
    for (Vertex w : g_.out_neighbors(v)) --indeg_[w];
    for (Vertex w : g_.in_neighbors(v)) --outdeg_[w];
  }

  /// Pendant op and anchor of v, if v has exactly one incident alive arc.
  std::optional<PruningStep> pendant(Vertex v) const {
    if (outdeg_[v] + indeg_[v] != 1) return std::nullopt;
    if (outdeg_[v] == 1) {
      for (Vertex w : g_.out_neighbors(v))
        if (alive(w)) return PruningStep{v, PruningOp::PendantPlus, w};
    }
    for (Vertex w : g_.in_neighbors(v))
      if (alive(w)) return PruningStep{v, PruningOp::PendantMinus, w};
    return std::nullopt;
  }

  /// Twin relation of v to u (u, v alive), if any.
  std::optional<PruningOp> twin(Vertex v, Vertex u) const {
    const bool vu = g_.has_arc(v, u);
    const bool uv = g_.has_arc(u, v);
    if (outdeg_[v] - vu != outdeg_[u] - uv || indeg_[v] - uv != indeg_[u] - vu)
      return std::nullopt;
    for (Vertex w : g_.out_neighbors(v))
      if (w != u && alive(w) && !g_.has_arc(u, w)) return std::nullopt;
    for (Vertex w : g_.in_neighbors(v))
      if (w != u && alive(w) && !g_.has_arc(w, u)) return std::nullopt;
    if (vu && uv) return PruningOp::BiorientedTrueTwin;
    if (vu) return PruningOp::TrueInTwin;
    if (uv) return PruningOp::TrueOutTwin;
    return PruningOp::FalseTwin;
  }

private:
  const Digraph& g_;
  std::vector<char> alive_;
  std::vector<int> outdeg_, indeg_;
};

PruningSequence from_removals(std::vector<PruningStep> removed, Vertex last) {
  std::reverse(removed.begin(), removed.end());
  return PruningSequence{last, std::move(removed)};
}

std::optional<PruningSequence> recognize_greedy(const Digraph& g) {
  const int n = g.vertex_count();
  AliveView view(g);
  std::vector<PruningStep> removed;
  for (int remaining = n; remaining > 1; --remaining) {
    std::optional<PruningStep> pick;
    for (Vertex v = 0; v < n && !pick; ++v)
      if (view.alive(v)) pick = view.pendant(v);
    for (Vertex u = 0; u < n && !pick; ++u) {
      if (!view.alive(u)) continue;
      for (Vertex v = u + 1; v < n && !pick; ++v) {
        if (!view.alive(v)) continue;
        if (auto op = view.twin(v, u)) pick = PruningStep{v, *op, u};
      }
    }
    if (!pick) return std::nullopt;
    view.remove(pick->vertex);
    removed.push_back(*pick);
  }
  Vertex last = 0;
  while (last < n && !view.alive(last)) ++last;
  return from_removals(std::move(removed), last);
}

class ExactSearch {
public:
  explicit ExactSearch(const Digraph& g) : g_(g) {}

  std::optional<PruningSequence> run() {
    const int n = g_.vertex_count();
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    if (!solve(all)) return std::nullopt;
    Vertex last = 0;
    while (((final_mask_ >> last) & 1) == 0) ++last;
    return from_removals(std::move(removed_), last);
  }

private:
  bool solve(std::uint64_t mask) {
    if ((mask & (mask - 1)) == 0) {
      final_mask_ = mask;
      return true;
    }
    if (failed_.count(mask)) return false;
    AliveView view(g_);
    for (Vertex v = 0; v < g_.vertex_count(); ++v)
      if (((mask >> v) & 1) == 0) view.remove(v);
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (!view.alive(v)) continue;
      std::optional<PruningStep> step = view.pendant(v);
      for (Vertex u = 0; u < g_.vertex_count() && !step; ++u) {
        if (u == v || !view.alive(u)) continue;
        if (auto op = view.twin(v, u)) step = PruningStep{v, *op, u};
      }
      if (!step) continue;
      removed_.push_back(*step);
      if (solve(mask & ~(std::uint64_t{1} << v))) return true;
      removed_.pop_back();
    }
    failed_.insert(mask);
    return false;
  }

  const Digraph& g_;
  std::unordered_set<std::uint64_t> failed_;
  std::vector<PruningStep> removed_;
  std::uint64_t final_mask_ = 0;
};

}  // namespace

std::optional<PruningOp> classify(const Digraph& g, std::span<const char> alive, Vertex v,
                                  Vertex anchor) {
  if (!g.has_vertex(v) || !g.has_vertex(anchor) || v == anchor)
    throw InputError("classify: invalid vertex pair");
  if (alive.size() != static_cast<std::size_t>(g.vertex_count()))
    throw InputError("classify: alive mask has wrong size");
  AliveView view(g);
  for (Vertex w = 0; w < g.vertex_count(); ++w)
    if (!alive[w]) view.remove(w);
  if (!view.alive(v) || !view.alive(anchor)) throw InputError("classify: vertex not alive");
  if (auto p = view.pendant(v); p && p->anchor == anchor) return p->op;
  return view.twin(v, anchor);
}

std::optional<PruningSequence> recognize(const Digraph& g, RecognizeMode mode, int exact_cap) {
  if (g.vertex_count() == 0) throw InputError("recognize: empty digraph");
  if (mode == RecognizeMode::Greedy) return recognize_greedy(g);
  if (exact_cap > 62) exact_cap = 62;
  if (g.vertex_count() > exact_cap)
    throw CapExceeded("exact recognition", g.vertex_count(), exact_cap);
  return ExactSearch(g).run();
}

namespace {

struct Entry {
  Vertex vertex;
  PruningOp op;
  Vertex anchor;  // -1 for the root entry
};

/// Rewrites `entries` so that they no longer mention `v`. Entry 0 is the root.
void delete_vertex(std::vector<Entry>& entries, Vertex v) {
  std::size_t idx = 0;
  while (entries[idx].vertex != v) ++idx;

  std::vector<std::size_t> anchored;
  for (std::size_t j = idx + 1; j < entries.size(); ++j)
    if (entries[j].anchor == v) anchored.push_back(j);

  if (anchored.empty()) {
    if (idx == 0) throw InputError("cannot delete the only vertex");
    entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(idx));
    return;
  }

  std::optional<std::size_t> last_twin;
  for (std::size_t j : anchored)
    if (is_twin_op(entries[j].op)) last_twin = j;
  const bool pendant_after =
      last_twin && std::any_of(anchored.begin(), anchored.end(), [&](std::size_t j) {
        return j > *last_twin && !is_twin_op(entries[j].op);
      });

  if (last_twin && !pendant_after) {
    // The last twin of v takes over v's creation step and anchor role.
    const Vertex replacement = entries[*last_twin].vertex;
    entries[idx].vertex = replacement;
    for (std::size_t j = idx + 1; j < entries.size(); ++j)
      if (entries[j].anchor == v) entries[j].anchor = replacement;
    entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(*last_twin));
    return;
  }
  if (idx == 0 && anchored.size() == 1) {
    // Root with a single pendant child: the child becomes the root.
    entries[0].vertex = entries[anchored.front()].vertex;
    entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(anchored.front()));
    return;
  }
  throw InputError("deleting vertex " + std::to_string(v) +
                   " would disconnect the remaining subdigraph");
}

}  // namespace

PruningSequence derive_subgraph_sequence(const PruningSequence& seq,
                                         std::span<const Vertex> keep) {
  const Digraph g = apply_sequence(seq);
  const VertexSet kept = make_vertex_set(keep, g.vertex_count());
  if (kept.empty()) throw InputError("derive_subgraph_sequence: empty vertex set");
  if (!is_weakly_connected(induced_subgraph(g, kept).graph))
    throw InputError("derive_subgraph_sequence: kept vertices do not induce a weakly "
                     "connected subdigraph");

  const int n = g.vertex_count();
  std::vector<Entry> entries;
  entries.push_back({seq.root, PruningOp::FalseTwin, -1});
  for (const auto& s : seq.steps) entries.push_back({s.vertex, s.op, s.anchor});

  std::vector<char> in_keep(static_cast<std::size_t>(n), 0), alive(static_cast<std::size_t>(n), 1);
  for (Vertex v : kept) in_keep[v] = 1;
  std::size_t to_delete = static_cast<std::size_t>(n) - kept.size();

  while (to_delete > 0) {
    // Distances from the kept set in the underlying graph of the alive part.
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::deque<Vertex> queue;
    for (Vertex v : kept) {
      dist[v] = 0;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (const auto* list : {&g.out_neighbors(x), &g.in_neighbors(x)})
        for (Vertex y : *list)
          if (alive[y] && dist[y] < 0) {
            dist[y] = dist[x] + 1;
            queue.push_back(y);
          }
    }
    std::vector<std::size_t> position(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < entries.size(); ++i) position[entries[i].vertex] = i;

    // Unreachable vertices go first, latest-created first; then the vertex
    // farthest from the kept set.
    Vertex victim = -1;
    auto better = [&](Vertex a, Vertex b) {
      const bool ua = dist[a] < 0, ub = dist[b] < 0;
      if (ua != ub) return ua;
      if (!ua && dist[a] != dist[b]) return dist[a] > dist[b];
      return position[a] > position[b];
    };
    for (Vertex v = 0; v < n; ++v)
      if (alive[v] && !in_keep[v] && (victim < 0 || better(v, victim))) victim = v;

    delete_vertex(entries, victim);
    alive[victim] = 0;
    --to_delete;
  }

  PruningSequence result;
  result.root = entries.front().vertex;
  for (std::size_t i = 1; i < entries.size(); ++i)
    result.steps.push_back({entries[i].vertex, entries[i].op, entries[i].anchor});
  return result;
}

PruningSequence remap_sequence(const PruningSequence& seq, std::span<const Vertex> to_local) {
  auto map = [&](Vertex v) {
    if (v < 0 || static_cast<std::size_t>(v) >= to_local.size() || to_local[v] < 0)
      throw InputError("remap_sequence: vertex " + std::to_string(v) + " has no image");
    return to_local[v];
  };
  PruningSequence out;
  out.root = map(seq.root);
  out.steps.reserve(seq.steps.size());
  for (const auto& s : seq.steps) out.steps.push_back({map(s.vertex), s.op, map(s.anchor)});
  return out;
}

std::string format_sequence(const PruningSequence& seq) {
  std::ostringstream out;
  out << "root " << seq.root << '\n';
  for (const auto& s : seq.steps) out << s.vertex << ' ' << op_code(s.op) << ' ' << s.anchor << '\n';
  return out.str();
}

PruningSequence parse_sequence(std::string_view text) {
  PruningSequence seq;
  bool have_root = false;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    line = detail::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split_fields(line);
    if (!have_root) {
      if (fields.size() != 2 || fields[0] != "root")
        throw ParseError(line_no, "expected \"root <id>\"");
      const auto r = detail::parse_int(fields[1]);
      if (!r) throw ParseError(line_no, "invalid root id");
      seq.root = *r;
      have_root = true;
      continue;
    }
    if (fields.size() != 3) throw ParseError(line_no, "expected \"<vertex> <OP> <anchor>\"");
    const auto v = detail::parse_int(fields[0]);
    const auto op = op_from_code(fields[1]);
    const auto a = detail::parse_int(fields[2]);
    if (!v || !a) throw ParseError(line_no, "invalid vertex id");
    if (!op) throw ParseError(line_no, "unknown operation \"" + std::string(fields[1]) + "\"");
    if (*v == *a) throw ParseError(line_no, "vertex equals its anchor");
    seq.steps.push_back({*v, *op, *a});
  }
  if (!have_root) throw ParseError(line_no, "missing root line");
  return seq;
}

}  // namespace twindh
