// cwq: command-line front end.
//
// Exit codes: 0 success, 2 parse error (expression text, JSON or flags),
// 3 contract or validation failure, 4 oracle cap exceeded.

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cwq/andim.hpp"
#include "cwq/corpus.hpp"
#include "cwq/decomposer.hpp"
#include "cwq/errors.hpp"
#include "cwq/expr.hpp"
#include "cwq/generators.hpp"
#include "cwq/io.hpp"
#include "cwq/quasi_iso.hpp"
#include "cwq/treedecomp.hpp"

namespace {

using cwq::io::Json;

constexpr int kOk = 0;
constexpr int kParse = 2;
constexpr int kContract = 3;
constexpr int kCap = 4;

bool g_pretty = false;

void emit(const Json& j, const std::string& summary) {
  if (g_pretty) {
    std::cout << summary;
    if (!summary.empty() && summary.back() != '\n') std::cout << '\n';
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

const char* mark(bool ok) { return ok ? "PASS" : "FAIL"; }

cwq::CwExpr load_expr(const std::string& path) { return cwq::parse(cwq::io::read_file(path)); }

Json load_json(const std::string& path) { return cwq::io::parse_json(cwq::io::read_file(path)); }

// Accepts a bare graph or the {"graph": ...} document printed by eval.
cwq::Graph load_graph(const std::string& path) {
  const Json j = load_json(path);
  if (j.is_object() && j.contains("graph") && j["graph"].is_object()) return cwq::io::graph_from_json(j["graph"]);
  return cwq::io::graph_from_json(j);
}

std::size_t oracle_cap() { return cwq::oracle_cap_from_env(12); }

std::vector<std::size_t> split_counts(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw cwq::InputError("expected a comma-separated list of nonnegative integers, got '" + text + "'");
    }
  }
  return out;
}

// --- eval --------------------------------------------------------------------

struct EvalArgs {
  std::string file;
  std::string dot;
};

int run_eval(const EvalArgs& a) {
  const cwq::CwExpr e = load_expr(a.file);
  const auto validation = cwq::validate_strict(e);
  const cwq::ColoredGraph g = cwq::evaluate(e);
  if (!a.dot.empty()) cwq::io::write_file(a.dot, cwq::io::to_dot(g));
  Json j{{"graph", cwq::io::to_json(g)}, {"validation", cwq::io::to_json(validation)}};
  std::string summary = "vertices " + std::to_string(g.graph.vertex_count()) + ", edges " +
                        std::to_string(g.graph.edge_count()) + ", k " + std::to_string(g.k) + ", strict " +
                        (validation.strict_valid() ? "yes" : "no") + "\n";
  for (const auto& v : validation.violations) {
    summary += "  " + std::string(cwq::rule_name(v.rule)) + " at " + v.path + ": " + v.message + "\n";
  }
  emit(j, summary);
  return kOk;
}

// --- decompose -----------------------------------------------------------------

struct DecomposeArgs {
  std::string file;
  std::string out;
  bool normalize = false;
  bool oracle = false;
};

int run_decompose(const DecomposeArgs& a) {
  cwq::CwExpr e = load_expr(a.file);
  if (a.normalize) e = cwq::normalize(e);
  const cwq::ColoredGraph g = cwq::evaluate(e);
  const cwq::DecompositionResult result = cwq::decompose(e);
  const cwq::VerificationReport report = cwq::verify_result(g, result);
  Json j{{"result", cwq::io::to_json(result)}, {"verification", cwq::io::to_json(report)}};
  std::string summary = "parts " + std::to_string(result.partition.size()) + ", tree nodes " +
                        std::to_string(result.tree.node_count()) + ", width " +
                        std::to_string(cwq::width(result.tree)) + " (bound " + std::to_string(e.k - 1) + ")\n";
  for (const auto& c : report.checks) {
    summary += "  " + std::string(mark(c.passed)) + " " + c.name + (c.witness.empty() ? "" : ": " + c.witness) + "\n";
  }
  bool ok = report.all_passed();
  if (a.oracle) {
    const cwq::Quotient q = cwq::quotient(g.graph, result.partition);
    cwq::TreewidthOptions options;
    options.cap = oracle_cap();
    const int tw = cwq::brute_treewidth(q.graph, options);
    j["quotient_treewidth"] = tw;
    summary += "  quotient treewidth " + std::to_string(tw) + "\n";
    ok = ok && tw <= e.k - 1;
  }
  if (!a.out.empty()) cwq::io::write_file(a.out, cwq::io::to_json(result).dump(2) + "\n");
  emit(j, summary);
  return ok ? kOk : kContract;
}

// --- generate ------------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  std::size_t length = 1;
  std::string x = "x";
  std::string y = "y";
  int palette = 3;
  int i = 1;
  int j = 2;
  int k = 1;
  std::size_t t = 3;
  std::string legs;
  std::size_t n = 4;
  std::string times = "0";
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  cwq::CwExpr e;
  if (a.kind == "path") {
    e = cwq::gen_path(a.x, a.y, a.length, a.palette, a.i, a.j, a.k);
  } else if (a.kind == "spider") {
    std::vector<std::size_t> legs = a.legs.empty() ? std::vector<std::size_t>(a.t, 1) : split_counts(a.legs);
    e = cwq::gen_spider(a.t, legs);
  } else {
    const auto counts = split_counts(a.times);
    const cwq::Graph kn = cwq::complete_graph(a.n);
    const auto edges = kn.edges();
    if (counts.size() == 1) {
      e = cwq::gen_subdivided_clique(a.n, counts[0]);
    } else if (counts.size() == edges.size()) {
      std::map<cwq::Edge, std::size_t> times;
      for (std::size_t s = 0; s < edges.size(); ++s) times.emplace(edges[s], counts[s]);
      e = cwq::gen_subdivided_clique(a.n, times);
    } else {
      throw cwq::InputError("--times needs one count or one per edge of K_n (" + std::to_string(edges.size()) + ")");
    }
  }
  const std::string text = cwq::print(e);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    cwq::io::write_file(a.out, text);
    const Json j{{"written", a.out}, {"k", e.k}, {"leaves", cwq::leaf_count(*e.root)}};
    emit(j, "wrote " + a.out + " (k " + std::to_string(e.k) + ", " + std::to_string(cwq::leaf_count(*e.root)) +
                " leaves)\n");
  }
  return kOk;
}

// --- corpus --------------------------------------------------------------------

struct CorpusArgs {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  int max_k = 5;
  std::size_t max_leaves = 30;
  std::string out;
};

int run_corpus(const CorpusArgs& a) {
  cwq::CorpusOptions options{a.seed, a.count, a.max_k, a.max_leaves};
  const auto corpus = cwq::generate_corpus(options);
  if (!a.out.empty()) std::filesystem::create_directories(a.out);
  const std::size_t cap = oracle_cap();
  Json instances = Json::array();
  std::size_t passed = 0;
  std::string summary;
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    char name[32];
    std::snprintf(name, sizeof name, "instance_%04zu.cwx", n);
    if (!a.out.empty()) cwq::io::write_file((std::filesystem::path(a.out) / name).string(), cwq::print(corpus[n]));
    const auto report = cwq::audit_expression(corpus[n], cap);
    passed += report.all_passed() ? 1 : 0;
    Json entry = cwq::io::to_json(report);
    entry["name"] = name;
    entry["k"] = corpus[n].k;
    instances.push_back(std::move(entry));
    summary += std::string(mark(report.all_passed())) + " " + name + " k=" + std::to_string(corpus[n].k) +
               " n=" + std::to_string(report.vertices) + " parts=" + std::to_string(report.parts) +
               (report.error.empty() ? "" : " error: " + report.error) + "\n";
  }
  Json j{{"seed", a.seed}, {"count", corpus.size()}, {"passed", passed}, {"instances", std::move(instances)}};
  if (!a.out.empty()) cwq::io::write_file((std::filesystem::path(a.out) / "summary.json").string(), j.dump(2) + "\n");
  summary += std::to_string(passed) + "/" + std::to_string(corpus.size()) + " all-pass\n";
  emit(j, summary);
  return passed == corpus.size() ? kOk : kContract;
}

// --- qi-check --------------------------------------------------------------------

struct QiArgs {
  std::string source;
  std::string target;
  std::string map;
  std::string partition;
  std::optional<double> c;
};

int run_qi(const QiArgs& a) {
  const cwq::Graph source = load_graph(a.source);
  if (!a.partition.empty()) {
    const cwq::Partition p = cwq::io::partition_from_json(load_json(a.partition));
    p.validate_for(source);
    cwq::QiMap m = cwq::projection_map(source, p);
    if (a.c) m.c = *a.c;
    const auto qi = cwq::check_qi(m);
    std::optional<int> window;
    if (a.c) window = static_cast<int>(*a.c) - 1;
    const auto part = cwq::check_partqi_tight(source, p, window);
    Json j{{"c", m.c}, {"qi", cwq::io::to_json(qi)}, {"partqi", cwq::io::to_json(part)}};
    emit(j, std::string(mark(qi.passed())) + " quasi-isometry at c=" + std::to_string(m.c) + "\n" + mark(part.passed) +
                " partition window at c=" + std::to_string(part.c) + "\n");
    return qi.passed() && part.passed ? kOk : kContract;
  }
  if (a.target.empty() || a.map.empty()) throw cwq::InputError("qi-check needs --partition, or --target and --map");
  const cwq::Graph target = load_graph(a.target);
  cwq::QiMap m = cwq::io::map_from_json(load_json(a.map), source, target);
  if (a.c) m.c = *a.c;
  const auto qi = cwq::check_qi(m);
  emit(Json{{"c", m.c}, {"qi", cwq::io::to_json(qi)}},
       std::string(mark(qi.passed())) + " quasi-isometry at c=" + std::to_string(m.c) + " (QI1 " + mark(qi.qi1) +
           ", QI2 " + mark(qi.qi2) + ")\n");
  return qi.passed() ? kOk : kContract;
}

// --- minor-model -------------------------------------------------------------------

struct MinorArgs {
  std::string pattern;
  std::string source;
  std::string target;
  std::string map;
  double c = 1;
  bool cross_check = false;
};

int run_minor(const MinorArgs& a) {
  const cwq::Graph h = load_graph(a.pattern);
  const cwq::Graph source = load_graph(a.source);
  cwq::QiMap f = cwq::identity_map(source, a.c);
  if (!a.target.empty()) {
    const cwq::Graph target = load_graph(a.target);
    if (a.map.empty()) throw cwq::InputError("--target needs --map");
    f = cwq::io::map_from_json(load_json(a.map), source, target);
  }
  const auto built = cwq::build_minor_model(h, f.target, f, a.c);
  Json j = cwq::io::to_json(built.model);
  j["facts"] = cwq::io::to_json(built.facts);
  std::string summary = "model valid; min dist(X_v, X_w) = " + built.facts.min_branch_separation.to_string() +
                        ", min dist(P_e, P_f) = " + built.facts.min_path_separation.to_string() + "\n";
  bool ok = true;
  if (a.cross_check) {
    const bool found = cwq::has_minor(f.target, h);
    j["has_minor"] = found;
    summary += std::string(mark(found)) + " independent minor search\n";
    ok = found;
  }
  emit(j, summary);
  return ok ? kOk : kContract;
}

// --- cover-pullback ------------------------------------------------------------------

struct CoverArgs {
  std::string source;
  std::string target;
  std::string map;
  std::string partition;
  std::string cover;
  double r = 1;
  double slope = 1;
};

int run_cover(const CoverArgs& a) {
  const cwq::Graph source = load_graph(a.source);
  cwq::QiMap m;
  if (!a.partition.empty()) {
    m = cwq::projection_map(source, cwq::io::partition_from_json(load_json(a.partition)));
  } else {
    if (a.target.empty() || a.map.empty()) throw cwq::InputError("cover-pullback needs --partition, or --target and --map");
    m = cwq::io::map_from_json(load_json(a.map), source, load_graph(a.target));
  }
  const cwq::CoverFamily target_cover = cwq::io::cover_from_json(load_json(a.cover));
  const cwq::CoverFamily pulled = cwq::pullback_cover(m, target_cover, a.r, cwq::ControlDilation(a.slope));
  const auto report = cwq::validate_cover(m.source, pulled);
  Json j{{"cover", cwq::io::to_json(pulled)}, {"report", cwq::io::to_json(report)}};
  emit(j, std::string(mark(report.passed())) + " pulled-back cover: " + std::to_string(pulled.collections.size()) +
              " collections, r=" + std::to_string(pulled.r) + ", bound=" + std::to_string(pulled.bound) + "\n");
  return report.passed() ? kOk : kContract;
}

// --- treewidth -------------------------------------------------------------------------

struct TreewidthArgs {
  std::string graph;
  std::string expr;
  std::optional<std::size_t> cap;
};

int run_treewidth(const TreewidthArgs& a) {
  cwq::Graph g;
  if (!a.expr.empty()) {
    g = cwq::evaluate(load_expr(a.expr)).graph;
  } else if (!a.graph.empty()) {
    g = load_graph(a.graph);
  } else {
    throw cwq::InputError("treewidth needs --graph or --expr");
  }
  cwq::TreewidthOptions options;
  options.cap = a.cap ? *a.cap : oracle_cap();
  const int tw = cwq::brute_treewidth(g, options);
  emit(Json{{"vertices", g.vertex_count()}, {"treewidth", tw}}, "treewidth " + std::to_string(tw) + "\n");
  return kOk;
}

// --- export-dot ------------------------------------------------------------------------

struct DotArgs {
  std::string expr;
  std::string graph;
  std::string decomposition;
  std::string out;
};

int run_dot(const DotArgs& a) {
  std::string dot;
  if (!a.expr.empty()) {
    dot = cwq::io::to_dot(cwq::evaluate(load_expr(a.expr)));
  } else if (!a.graph.empty()) {
    const Json j = load_json(a.graph);
    dot = j.contains("colors") ? cwq::io::to_dot(cwq::io::colored_graph_from_json(j))
                               : cwq::io::to_dot(cwq::io::graph_from_json(j));
  } else if (!a.decomposition.empty()) {
    Json j = load_json(a.decomposition);
    if (j.contains("result")) j = j.at("result");
    const auto r = cwq::io::decomposition_from_json(j);
    dot = cwq::io::to_dot(r.tree, r.rainbow_node);
  } else {
    throw cwq::InputError("export-dot needs --expr, --graph or --decomposition");
  }
  if (a.out.empty()) {
    std::cout << dot;
  } else {
    cwq::io::write_file(a.out, dot);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clique-width expressions, dominated partitions and quasi-isometry checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", g_pretty, "Human-readable output instead of JSON");
  int status = kOk;

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "Evaluate an expression file");
  c_eval->add_option("file", eval.file, "Expression (.cwx)")->required();
  c_eval->add_option("--dot", eval.dot, "Also write the graph as DOT");

  DecomposeArgs dec;
  auto* c_dec = app.add_subcommand("decompose", "Dominated partition and tree decomposition of the quotient");
  c_dec->add_option("file", dec.file, "Expression (.cwx)")->required();
  c_dec->add_option("--out", dec.out, "Write the result JSON here");
  c_dec->add_flag("--normalize", dec.normalize, "Normalize a non-strict expression first");
  c_dec->add_flag("--oracle", dec.oracle, "Also compute the quotient's exact treewidth");

  GenerateArgs gen;
  auto* c_gen = app.add_subcommand("generate", "Emit a constructed expression");
  c_gen->add_option("kind", gen.kind, "path | spider | subdivided-clique")
      ->required()
      ->check(CLI::IsMember({"path", "spider", "subdivided-clique"}));
  c_gen->add_option("--length", gen.length, "Path length");
  c_gen->add_option("--x", gen.x, "Path start vertex");
  c_gen->add_option("--y", gen.y, "Path end vertex");
  c_gen->add_option("--palette", gen.palette, "Path palette size n");
  c_gen->add_option("--i", gen.i, "Colour of the path start");
  c_gen->add_option("--j", gen.j, "Colour of the path end");
  c_gen->add_option("--k", gen.k, "Colour of the path interior");
  c_gen->add_option("--t", gen.t, "Number of spider legs");
  c_gen->add_option("--legs", gen.legs, "Comma-separated spider leg lengths");
  c_gen->add_option("--n", gen.n, "Clique order");
  c_gen->add_option("--times", gen.times, "Subdivision count, or one per edge in lexicographic edge order");
  c_gen->add_option("--out", gen.out, "Output file (default stdout)");

  CorpusArgs corpus;
  auto* c_corpus = app.add_subcommand("corpus", "Random strict expressions with batch verification");
  c_corpus->add_option("--seed", corpus.seed, "Random seed");
  c_corpus->add_option("--count", corpus.count, "Number of expressions");
  c_corpus->add_option("--max-k", corpus.max_k, "Largest palette")->check(CLI::PositiveNumber);
  c_corpus->add_option("--max-leaves", corpus.max_leaves, "Largest leaf count")->check(CLI::PositiveNumber);
  c_corpus->add_option("--out", corpus.out, "Directory for the .cwx files and summary.json");

  QiArgs qi;
  auto* c_qi = app.add_subcommand("qi-check", "Check a map, or a partition's projection, for quasi-isometry");
  c_qi->add_option("--source", qi.source, "Source graph JSON")->required();
  c_qi->add_option("--target", qi.target, "Target graph JSON");
  c_qi->add_option("--map", qi.map, "Map JSON {\"f\":..., \"c\":...}");
  c_qi->add_option("--partition", qi.partition, "Partition JSON; checks its projection");
  c_qi->add_option("--c", qi.c, "Override the parameter c");

  MinorArgs minor;
  auto* c_minor = app.add_subcommand("minor-model", "Minor model of h from a quasi-isometric image of its subdivision");
  c_minor->add_option("--pattern", minor.pattern, "Pattern graph h")->required();
  c_minor->add_option("--source", minor.source, "Subdivision of h")->required();
  c_minor->add_option("--target", minor.target, "Target graph (default: the subdivision itself)");
  c_minor->add_option("--map", minor.map, "Map JSON from the subdivision to the target");
  c_minor->add_option("--c", minor.c, "Quasi-isometry parameter");
  c_minor->add_flag("--cross-check", minor.cross_check, "Confirm with the exhaustive minor search");

  CoverArgs cover;
  auto* c_cover = app.add_subcommand("cover-pullback", "Pull a cover back along a quasi-isometric embedding");
  c_cover->add_option("--source", cover.source, "Source graph JSON")->required();
  c_cover->add_option("--target", cover.target, "Target graph JSON");
  c_cover->add_option("--map", cover.map, "Map JSON");
  c_cover->add_option("--partition", cover.partition, "Use the projection onto this partition's quotient");
  c_cover->add_option("--cover", cover.cover, "Cover of the target")->required();
  c_cover->add_option("--r", cover.r, "Scale r (>= 1)");
  c_cover->add_option("--slope", cover.slope, "Slope of the target dilation d'");

  TreewidthArgs tw;
  auto* c_tw = app.add_subcommand("treewidth", "Exact treewidth oracle");
  c_tw->add_option("--graph", tw.graph, "Graph JSON");
  c_tw->add_option("--expr", tw.expr, "Expression whose graph to use");
  c_tw->add_option("--cap", tw.cap, "Kernel size cap (default CWQ_ORACLE_CAP or 12)");

  DotArgs dot;
  auto* c_dot = app.add_subcommand("export-dot", "Graphviz export");
  c_dot->add_option("--expr", dot.expr, "Expression file");
  c_dot->add_option("--graph", dot.graph, "Graph JSON");
  c_dot->add_option("--decomposition", dot.decomposition, "Decomposition JSON");
  c_dot->add_option("--out", dot.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*c_eval) status = run_eval(eval);
    else if (*c_dec) status = run_decompose(dec);
    else if (*c_gen) status = run_generate(gen);
    else if (*c_corpus) status = run_corpus(corpus);
    else if (*c_qi) status = run_qi(qi);
    else if (*c_minor) status = run_minor(minor);
    else if (*c_cover) status = run_cover(cover);
    else if (*c_tw) status = run_treewidth(tw);
    else if (*c_dot) status = run_dot(dot);
  } catch (const cwq::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const cwq::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const cwq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kContract;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kContract;
  }
  return status;
}
