// twindh: command-line front end for the twin-dh library.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twindh/cliquewidth.hpp"
#include "twindh/cograph.hpp"
#include "twindh/digraph.hpp"
#include "twindh/edge_list.hpp"
#include "twindh/errors.hpp"
#include "twindh/forbidden.hpp"
#include "twindh/generator.hpp"
#include "twindh/pruning.hpp"
#include "twindh/text_util.hpp"
#include "twindh/widths.hpp"

namespace {

using namespace twindh;
using Json = nlohmann::ordered_json;

enum Exit : int {
  kOk = 0,
  kNonMember = 1,
  kInputError = 2,
  kCertificateError = 3,
  kInternalError = 4,
};

struct Caps {
  int oracle = kDefaultOracleCap;
  int cyr = kDefaultCycleRankCap;
  int dpw = kDefaultDpwCap;
  int exact = kDefaultExactCap;
};

/// TWINDH_SIZE_CAPS="oracle=10,cyr=12,dpw=9,exact=10"; any subset of keys.
Caps read_caps() {
  Caps caps;
  const char* env = std::getenv("TWINDH_SIZE_CAPS");
  if (!env) return caps;
  std::string_view text(env);
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto item = detail::trim(text.substr(start, end - start));
    start = end + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    const auto value = eq == std::string_view::npos ? std::nullopt : detail::parse_int(item.substr(eq + 1));
    if (!value || *value < 0) throw InputError("TWINDH_SIZE_CAPS: bad entry '" + std::string(item) + "'");
    const auto key = item.substr(0, eq);
    if (key == "oracle") caps.oracle = *value;
    else if (key == "cyr") caps.cyr = *value;
    else if (key == "dpw") caps.dpw = *value;
    else if (key == "exact") caps.exact = *value;
    else throw InputError("TWINDH_SIZE_CAPS: unknown key '" + std::string(key) + "'");
  }
  return caps;
}

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << hash;
  return out.str();
}

Json vertex_list(const VertexSet& vs) { return Json(vs); }

Json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return Json{{"kind", w->kind.name()}, {"vertices", vertex_list(w->vertices)}};
}

Json sequence_json(const PruningSequence& seq) {
  Json steps = Json::array();
  for (const auto& s : seq.steps)
    steps.push_back(Json{{"vertex", s.vertex}, {"op", std::string(op_code(s.op))}, {"anchor", s.anchor}});
  return Json{{"root", seq.root}, {"steps", steps}};
}

Json graph_json(const Digraph& g) {
  Json arcs = Json::array();
  for (const auto& [u, v] : g.arcs()) arcs.push_back(Json::array({u, v}));
  return Json{{"vertices", g.vertex_count()}, {"arcs", arcs}};
}

std::string witness_text(const Witness& w) {
  std::string text = "witness " + w.kind.name() + ":";
  for (Vertex v : w.vertices) text += " " + std::to_string(v);
  return text + "\n";
}

/// Shared output plumbing: JSON envelope or plain text.
struct Output {
  bool json = false;
  bool timing = false;
  std::string command;
  std::string digest;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void emit(const Json& result, const std::string& text) const {
    if (!json) {
      std::cout << text;
      return;
    }
    Json envelope{{"command", command}, {"input_digest", digest}, {"result", result}};
    if (timing) {
      const auto elapsed = std::chrono::steady_clock::now() - start;
      envelope["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    std::cout << envelope.dump(2) << "\n";
  }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_flag("--json", out.json, "Emit a JSON report");
  cmd->add_flag("--timing", out.timing, "Include wall time in the JSON report");
}

/// Loads a certificate; every failure here is a certificate error.
PruningSequence load_certificate(const std::string& path, const Digraph& g) {
  PruningSequence seq;
  try {
    seq = parse_sequence(read_file(path));
    check_sequence(seq);
  } catch (const std::exception& e) {
    throw CertificateError(std::string("certificate ") + path + ": " + e.what());
  }
  if (const auto report = validate_sequence(seq, g); !report)
    throw CertificateError("certificate " + path + " rejected: " + report.message);
  return seq;
}

int cmd_recognize(const std::string& file, const std::string& mode_name, const std::string& out_path,
                  Output& out, const Caps& caps) {
  const std::string text = read_file(file);
  out.digest = fnv1a64(text);
  const Digraph g = parse_edge_list(text);
  const RecognizeMode mode = mode_name == "exact" ? RecognizeMode::Exact : RecognizeMode::Greedy;
  const auto seq = recognize(g, mode, caps.exact);

  Json result{{"mode", mode_name}, {"vertices", g.vertex_count()}, {"member", seq.has_value()}};
  std::string plain;
  if (seq) {
    if (!out_path.empty()) write_file(out_path, format_sequence(*seq));
    result["certificate"] = sequence_json(*seq);
    result["witness"] = nullptr;
    plain = out_path.empty() ? format_sequence(*seq) : "member\n";
  } else {
    result["certificate"] = nullptr;
    std::optional<Witness> witness;
    if (g.vertex_count() <= caps.oracle) witness = oracle_is_twin_dh(g, caps.oracle).witness;
    result["witness"] = witness_json(witness);
    plain = "non-member\n";
    if (witness) plain += witness_text(*witness);
    else if (g.vertex_count() <= caps.oracle)
      plain += "no catalogued obstruction found\n";
  }
  out.emit(result, plain);
  return seq ? kOk : kNonMember;
}

int cmd_widths(const std::string& file, const std::string& cert, bool verify, Output& out,
               const Caps& caps) {
  const std::string text = read_file(file);
  out.digest = fnv1a64(text);
  const Digraph g = parse_edge_list(text);
  const auto seq = load_certificate(cert, g);
  const auto report = widths_twin_dh(g, seq);

  Json comps = Json::array();
  for (const auto& c : report.components)
    comps.push_back(Json{{"vertices", vertex_list(c.vertices)},
                         {"width", c.width},
                         {"cotree", serialize_cotree(c.cotree)}});
  Json result{{"dpw", report.dpw}, {"dtw", report.dtw}, {"dagw", report.dagw}, {"cyr", report.cyr},
              {"components", comps}};
  std::ostringstream plain;
  plain << "dpw " << report.dpw << "\ndtw " << report.dtw << "\ndagw " << report.dagw << "\ncyr "
        << report.cyr << "\n";

  if (verify) {
    Json check = Json::object();
    if (g.vertex_count() <= caps.cyr) {
      const int cyr = cycle_rank_bruteforce(g, caps.cyr);
      check["cycle_rank"] = cyr;
      plain << "bruteforce cycle rank " << cyr << "\n";
      if (cyr != report.cyr) throw InternalInconsistency("cycle rank oracle disagrees");
    }
    if (g.vertex_count() <= caps.dpw) {
      const int dpw = dpw_bruteforce(g, caps.dpw);
      check["dpw"] = dpw;
      plain << "bruteforce dpw " << dpw << "\n";
      if (dpw != report.dpw) throw InternalInconsistency("path-width oracle disagrees");
    }
    result["bruteforce"] = check;
  }
  out.emit(result, plain.str());
  return kOk;
}

int cmd_cwexpr(const std::string& file, const std::string& cert, const std::string& dot_path,
               Output& out) {
  const std::string text = read_file(file);
  out.digest = fnv1a64(text);
  const Digraph g = parse_edge_list(text);
  const auto seq = load_certificate(cert, g);
  const auto expr = build_3expr(seq);
  if (!(eval_cw(expr).graph == g))
    throw InternalInconsistency("expression does not evaluate to the input digraph");
  if (!dot_path.empty()) write_file(dot_path, cw_to_dot(expr));

  const std::string serialized = serialize_cw(expr);
  Json result{{"expression", serialized},
              {"labels", labels_used(expr)},
              {"nodes", expr.nodes.size()},
              {"verified", true}};
  out.emit(result, serialized + "\n");
  return kOk;
}

int cmd_eval_cw(const std::string& file, Output& out) {
  const std::string text = read_file(file);
  out.digest = fnv1a64(text);
  const auto expr = parse_cw(detail::trim(text));
  const auto evaluated = eval_cw(expr);
  Json result = graph_json(evaluated.graph);
  result["labels"] = evaluated.labels;
  result["labels_used"] = labels_used(expr);
  out.emit(result, format_edge_list(evaluated.graph));
  return kOk;
}

int cmd_oracle(const std::string& file, Output& out, const Caps& caps) {
  const std::string text = read_file(file);
  out.digest = fnv1a64(text);
  const Digraph g = parse_edge_list(text);
  const auto verdict = oracle_is_twin_dh(g, caps.oracle);
  Json result{{"vertices", g.vertex_count()}, {"member", verdict.member},
              {"witness", witness_json(verdict.witness)}};
  std::string plain = verdict.member ? "member\n" : "non-member\n";
  if (verdict.witness) plain += witness_text(*verdict.witness);
  out.emit(result, plain);
  return verdict.member ? kOk : kNonMember;
}

constexpr const char* kTwoLeavesNote =
    "two-leaves digraphs: weakly connected digraphs on at least 4 vertices with two "
    "bioriented leaves whose neighbours differ (an infinite family, checked by subset scan)";
constexpr const char* kUndirectedNote =
    "biorientations of holes, houses, dominoes and gems (checked on the underlying graph)";

int cmd_catalog(Output& out) {
  out.digest = fnv1a64("catalog");
  Json entries = Json::array();
  std::string plain;
  for (const auto& e : catalog()) {
    entries.push_back(Json{{"name", e.name}, {"group", std::string(e.group)}, {"graph", graph_json(e.graph)}});
    plain += "# " + e.name + " (" + std::string(e.group) + ")\n" + format_edge_list(e.graph) + "\n";
  }
  plain += std::string("# plus ") + kUndirectedNote + "\n# plus " + kTwoLeavesNote + "\n";
  std::ostringstream checksum;
  checksum << std::hex << catalog_checksum();
  Json result{{"count", catalog().size()}, {"checksum", checksum.str()}, {"entries", entries},
              {"notes", Json::array({kUndirectedNote, kTwoLeavesNote})}};
  out.emit(result, plain);
  return kOk;
}

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (values.size() != expected)
    throw InputError(std::string(what) + ": expected " + std::to_string(expected) + " comma-separated values");
  return values;
}

int cmd_gen(int n, std::uint64_t seed, const std::string& weights, bool no_shuffle,
            const std::string& prefix, Output& out) {
  GenConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.shuffle_ids = !no_shuffle;
  if (!weights.empty()) {
    const auto w = parse_numbers(weights, kPruningOpCount, "--weights");
    std::copy(w.begin(), w.end(), cfg.weights.begin());
  }
  std::ostringstream echo;
  echo << "n=" << n << " seed=" << seed << " weights=" << weights << " shuffle=" << cfg.shuffle_ids;
  out.digest = fnv1a64(echo.str());

  const auto [g, seq] = random_member(cfg);
  const std::string edges_path = prefix + ".edges", seq_path = prefix + ".seq";
  write_file(edges_path, format_edge_list(g));
  write_file(seq_path, format_sequence(seq));
  Json result{{"vertices", g.vertex_count()}, {"arcs", g.arc_count()}, {"seed", seed},
              {"edges_file", edges_path}, {"sequence_file", seq_path}};
  out.emit(result, edges_path + "\n" + seq_path + "\n");
  return kOk;
}

struct SweepCounts {
  std::size_t graphs = 0, greedy = 0, exact = 0, oracle = 0;
  std::size_t greedy_vs_exact = 0, exact_vs_oracle = 0, greedy_vs_oracle = 0;
};

int cmd_sweep(int n, bool exhaustive, std::size_t random_count, std::uint64_t seed,
              const std::string& probs_text, const std::string& corpus_path, Output& out,
              const Caps& caps) {
  if (n < 1) throw InputError("sweep needs n >= 1");
  if (n > caps.exact || n > caps.oracle) throw CapExceeded("sweep", n, std::min(caps.exact, caps.oracle));
  if (exhaustive && n > 5) throw CapExceeded("exhaustive sweep", n, 5);
  if (!exhaustive && random_count == 0) throw InputError("sweep needs --exhaustive or --random COUNT");
  ArcStateProbs probs{0.25, 0.25, 0.25, 0.25};
  if (!probs_text.empty()) {
    const auto p = parse_numbers(probs_text, 4, "--probs");
    std::copy(p.begin(), p.end(), probs.begin());
  }
  std::ostringstream echo;
  echo << "n=" << n << " exhaustive=" << exhaustive << " random=" << random_count << " seed=" << seed
       << " probs=" << probs_text;
  out.digest = fnv1a64(echo.str());

  SweepCounts counts;
  std::string corpus;
  auto visit = [&](const Digraph& g) {
    const bool greedy = recognize(g, RecognizeMode::Greedy).has_value();
    const bool exact = recognize(g, RecognizeMode::Exact, caps.exact).has_value();
    const bool oracle = oracle_is_twin_dh(g, caps.oracle).member;
    ++counts.graphs;
    counts.greedy += greedy;
    counts.exact += exact;
    counts.oracle += oracle;
    counts.greedy_vs_exact += greedy != exact;
    counts.exact_vs_oracle += exact != oracle;
    counts.greedy_vs_oracle += greedy != oracle;
    if (greedy != exact || exact != oracle) {
      corpus += "# greedy=" + std::string(greedy ? "member" : "non-member") +
                " exact=" + (exact ? "member" : "non-member") +
                " oracle=" + (oracle ? "member" : "non-member") + "\n" + format_edge_list(g) + "\n";
    }
  };

  if (exhaustive) {
    std::vector<Arc> pairs;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (u != v) pairs.emplace_back(u, v);
    const std::uint64_t total = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      std::vector<Arc> arcs;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if ((mask >> i) & 1) arcs.push_back(pairs[i]);
      visit(Digraph(n, arcs));
    }
  } else {
    for (std::size_t i = 0; i < random_count; ++i) visit(random_digraph(n, probs, seed + i));
  }
  if (!corpus_path.empty()) write_file(corpus_path, corpus);

  Json result{{"n", n},
              {"graphs", counts.graphs},
              {"members", {{"greedy", counts.greedy}, {"exact", counts.exact}, {"oracle", counts.oracle}}},
              {"disagreements",
               {{"greedy_vs_exact", counts.greedy_vs_exact},
                {"exact_vs_oracle", counts.exact_vs_oracle},
                {"greedy_vs_oracle", counts.greedy_vs_oracle}}}};
  std::ostringstream plain;
  plain << "graphs " << counts.graphs << "\nmembers greedy " << counts.greedy << " exact " << counts.exact
        << " oracle " << counts.oracle << "\ndisagreements greedy/exact " << counts.greedy_vs_exact
        << " exact/oracle " << counts.exact_vs_oracle << " greedy/oracle " << counts.greedy_vs_oracle << "\n";
  out.emit(result, plain.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recognition, certificates and widths for twin-distance-hereditary digraphs"};
  app.require_subcommand(1);

  Output out;
  std::string file, cert, mode = "greedy", seq_out, dot_out, weights, probs, prefix, corpus;
  bool verify = false, no_shuffle = false, exhaustive = false;
  int n = 0;
  std::uint64_t seed = 0;
  std::size_t random_count = 0;

  auto* recognize_cmd = app.add_subcommand("recognize", "Find a pruning sequence or report non-membership");
  recognize_cmd->add_option("file", file, "Edge-list file ('-' for stdin)")->required();
  recognize_cmd->add_option("--mode", mode, "greedy or exact")->check(CLI::IsMember({"greedy", "exact"}));
  recognize_cmd->add_option("--out", seq_out, "Write the pruning sequence here");
  add_output_flags(recognize_cmd, out);

  auto* widths_cmd = app.add_subcommand("widths", "Width parameters of a certified member");
  widths_cmd->add_option("file", file, "Edge-list file")->required();
  widths_cmd->add_option("--cert", cert, "Pruning-sequence file")->required();
  widths_cmd->add_flag("--verify", verify, "Cross-check against the brute-force oracles within their caps");
  add_output_flags(widths_cmd, out);

  auto* cwexpr_cmd = app.add_subcommand("cwexpr", "Build a 3-expression from a certificate");
  cwexpr_cmd->add_option("file", file, "Edge-list file")->required();
  cwexpr_cmd->add_option("--cert", cert, "Pruning-sequence file")->required();
  cwexpr_cmd->add_option("--emit-dot", dot_out, "Write the expression tree in DOT format");
  add_output_flags(cwexpr_cmd, out);

  auto* eval_cmd = app.add_subcommand("eval-cw", "Evaluate a clique-width expression");
  eval_cmd->add_option("file", file, "Expression file")->required();
  add_output_flags(eval_cmd, out);

  auto* oracle_cmd = app.add_subcommand("oracle", "Forbidden-subdigraph membership test");
  oracle_cmd->add_option("file", file, "Edge-list file")->required();
  add_output_flags(oracle_cmd, out);

  auto* catalog_cmd = app.add_subcommand("catalog", "Print the forbidden digraph catalog");
  add_output_flags(catalog_cmd, out);

  auto* gen_cmd = app.add_subcommand("gen", "Generate a random member and its certificate");
  gen_cmd->add_option("--n", n, "Vertex count")->required();
  gen_cmd->add_option("--seed", seed, "64-bit seed");
  gen_cmd->add_option("--weights", weights, "Six weights for PP,PM,FT,TIT,TOT,TBT");
  gen_cmd->add_flag("--no-shuffle", no_shuffle, "Keep construction order as vertex ids");
  gen_cmd->add_option("-o,--out", prefix, "Output prefix; writes PREFIX.edges and PREFIX.seq")->required();
  add_output_flags(gen_cmd, out);

  auto* sweep_cmd = app.add_subcommand("sweep", "Compare greedy, exact and oracle membership");
  sweep_cmd->add_option("--n", n, "Vertex count")->required();
  sweep_cmd->add_flag("--exhaustive", exhaustive, "All labeled digraphs on n vertices");
  sweep_cmd->add_option("--random", random_count, "Number of random digraphs");
  sweep_cmd->add_option("--seed", seed, "First seed for random digraphs");
  sweep_cmd->add_option("--probs", probs, "Arc-state probabilities: none,forward,backward,both");
  sweep_cmd->add_option("--corpus", corpus, "Write disagreeing digraphs here");
  add_output_flags(sweep_cmd, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const Caps caps = read_caps();
    auto* sub = app.get_subcommands().front();
    out.command = sub->get_name();
    if (sub == recognize_cmd) return cmd_recognize(file, mode, seq_out, out, caps);
    if (sub == widths_cmd) return cmd_widths(file, cert, verify, out, caps);
    if (sub == cwexpr_cmd) return cmd_cwexpr(file, cert, dot_out, out);
    if (sub == eval_cmd) return cmd_eval_cw(file, out);
    if (sub == oracle_cmd) return cmd_oracle(file, out, caps);
    if (sub == catalog_cmd) return cmd_catalog(out);
    if (sub == gen_cmd) return cmd_gen(n, seed, weights, no_shuffle, prefix, out);
    if (sub == sweep_cmd) return cmd_sweep(n, exhaustive, random_count, seed, probs, corpus, out, caps);
  } catch (const CertificateError& e) {
    std::cerr << "certificate error: " << e.what() << "\n";
    return kCertificateError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const MalformedSequence& e) {
    std::cerr << "certificate error: " << e.what() << "\n";
    return kCertificateError;
  }
  return kInputError;
}
