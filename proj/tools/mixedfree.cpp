#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mixedfree/mixedfree.hpp"

using namespace mixedfree;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

struct Input {
  std::string path;
  std::string bytes;
  OrderedGraph graph;
};

Input load_graph(const std::string& path) {
  Input in{path, read_file(path), {}};
  in.graph = parse_graph(in.bytes);
  return in;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad integer '" + item + "' in list");
    }
  }
  return out;
}

struct Common {
  std::string report = "-";
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string caps;
};

Caps effective_caps(const Common& c) {
  auto caps = Caps::from_env();
  return c.caps.empty() ? caps : caps.with_overrides(c.caps);
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--report", c.report, "Report JSON destination ('-' for stdout)");
  app->add_option("--seed", c.seed, "Seed for every random choice");
  app->add_option("--jobs", c.jobs, "Worker cap (runs are single threaded)")->check(CLI::PositiveNumber);
  app->add_option("--caps", c.caps, "Oracle caps, e.g. chromatic=20,minor_n=24 (applied after MIXEDFREE_CAPS)");
}

// Shared report skeleton; the timing field is appended last.
class Report {
 public:
  Report(const std::string& command, const Common& common, const Caps& caps) {
    json_["schema"] = 1;
    json_["command"] = command;
    json_["input"] = nullptr;
    Json p;
    p["seed"] = common.seed;
    p["jobs"] = common.jobs;
    p["caps"] = caps_to_json(caps);
    json_["parameters"] = p;
  }
  void input(const Input& in) {
    Json j;
    j["path"] = in.path;
    j["digest"] = digest(in.bytes);
    j["n"] = in.graph.size();
    j["m"] = in.graph.edge_count();
    json_["input"] = j;
  }
  Json& param(const char* key) { return json_["parameters"][key]; }
  Json& operator[](const char* key) { return json_[key]; }
  std::string finish() {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    json_["timing"] = {{"seconds", secs}};
    return json_.dump(2) + "\n";
  }

 private:
  Json json_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// log2 f_d(omega) for the recurrence with alpha_e = 8 C (C + 1), C the larger
// constant measured at level e (1 where the run never reached e).
std::optional<long double> recurrence_bound_log2(const EngineTrace& trace, int d, int omega) {
  if (omega < 1) return std::nullopt;
  if (d == 2) return std::log2(static_cast<long double>(omega));
  if (d > 6) return std::nullopt;
  const auto measured = trace.measured_constants();
  std::map<int, std::int64_t> alpha;
  for (int e = 3; e <= d; ++e) {
    std::int64_t c = 1;
    if (auto it = measured.find(e); it != measured.end()) c = std::max<std::int64_t>({1, it->second.first, it->second.second});
    alpha[e] = 8 * c * (c + 1);
  }
  try {
    return build_table(d, std::max(8, omega), alpha).log2_f(d, omega);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

struct ColorArgs {
  std::string graph;
  int d = 0;
  int k = 0;
  std::string trace;
  bool verify_promise = false;
  bool squash = false;
  std::string output = "-";
};

int cmd_color(const ColorArgs& a, const Common& common) {
  const auto caps = effective_caps(common);
  const auto in = load_graph(a.graph);
  const auto& g = in.graph;
  Report rep("color", common, caps);
  rep.input(in);
  rep.param("d") = a.d;
  rep.param("k") = a.k;
  rep.param("squash") = a.squash;
  rep.param("verify_promise") = a.verify_promise;

  Json promise;
  promise["checked"] = a.verify_promise;
  if (a.verify_promise) {
    try {
      const auto w = find_almost_mixed_minor(g, a.d, std::nullopt, caps);
      promise["holds"] = !w.has_value();
      promise["witness"] = w ? witness_to_json(*w) : Json();
    } catch (const OracleCapError& e) {
      promise["holds"] = nullptr;
      promise["skipped"] = e.what();
    }
  }

  EngineOptions opts;
  opts.k = a.k;
  opts.caps = caps;
  const auto result = color_bounded(g, a.d, opts);
  const auto coloring = a.squash ? squash_colors(g, result.coloring) : result.coloring.normalized();
  check_invariant(is_proper(g, coloring), "final colouring is not proper");

  const auto& root = result.trace.nodes.front();
  Json out;
  out["omega"] = root.omega;
  out["k_root"] = root.k;
  out["colors"] = g.size() == 0 ? 0 : coloring.num_colors();
  out["colors_unsquashed"] = g.size() == 0 ? 0 : result.coloring.num_colors();
  out["chi_exact"] = g.size() <= caps.chromatic_n ? Json(chromatic_exact(g, caps.chromatic_n).first) : Json();
  Json bounds;
  Json consts = Json::object();
  for (auto [level, c] : result.trace.measured_constants()) consts[std::to_string(level)] = {{"classes", c.first}, {"mixed", c.second}};
  bounds["measured_constants"] = consts;
  const auto rb = recurrence_bound_log2(result.trace, a.d, root.omega);
  bounds["recurrence_log2_f"] = rb ? Json(static_cast<double>(*rb)) : Json();
  try {
    bounds["compression_clique_cap"] = root.omega >= 1 ? Json(mu(root.omega, a.d)) : Json();
  } catch (const InputError&) {
    bounds["compression_clique_cap"] = nullptr;
  }
  out["bounds"] = bounds;
  Json engine;
  engine["nodes"] = result.trace.nodes.size();
  engine["promise_violated_nodes"] = result.trace.count(&TraceNode::promise_violated);
  engine["exact_skipped_nodes"] = result.trace.count(&TraceNode::exact_skipped);
  out["engine"] = engine;
  out["promise"] = promise;
  rep["outputs"] = out;

  Json checks;
  checks["proper"] = is_proper(g, coloring);
  if (!a.trace.empty()) {
    const auto tc = check_trace(result.trace);
    checks["trace_ok"] = tc.ok();
    checks["trace_failures"] = tc.failures;
    write_text(a.trace, trace_to_json(result.trace).dump(1) + "\n");
  }
  rep["checks"] = checks;

  std::ostringstream col;
  write_coloring(col, g, coloring);
  write_text(a.output, col.str());
  // The coloring owns stdout by default, so the report then goes to stderr.
  const auto text = rep.finish();
  if (common.report == "-" && a.output == "-") std::cerr << text;
  else write_text(common.report, text);
  return kExitOk;
}

struct VerifyArgs {
  std::string graph;
  std::string coloring;
  std::string witness;
};

int cmd_verify(const VerifyArgs& a, const Common& common) {
  const auto caps = effective_caps(common);
  const auto in = load_graph(a.graph);
  Report rep("verify", common, caps);
  rep.input(in);
  if (a.coloring.empty() == a.witness.empty()) throw InputError("verify needs exactly one of --coloring or --witness");
  Json out;
  bool valid = false;
  if (!a.coloring.empty()) {
    std::istringstream is(read_file(a.coloring));
    const auto c = read_coloring(is, in.graph);
    valid = is_proper(in.graph, c);
    out["kind"] = "coloring";
    out["colors"] = in.graph.size() == 0 ? 0 : c.num_colors();
    out["reason"] = valid ? "" : "adjacent vertices share a color";
  } else {
    const auto w = parse_witness(read_file(a.witness), in.graph.size());
    std::string why;
    valid = verify_witness(in.graph, w, &why);
    out["kind"] = "witness";
    out["witness_kind"] = to_string(w.kind);
    out["d"] = w.d;
    out["reason"] = why;
  }
  out["valid"] = valid;
  rep["outputs"] = out;
  write_text(common.report, rep.finish());
  return valid ? kExitOk : kExitInvalid;
}

struct TwwArgs {
  std::string graph;
  std::string sequence;
  std::string output;
};

int cmd_tww(const TwwArgs& a, const Common& common) {
  const auto caps = effective_caps(common);
  const auto in = load_graph(a.graph);
  Report rep("tww", common, caps);
  rep.input(in);
  Json out;
  if (!a.sequence.empty()) {
    std::istringstream is(read_file(a.sequence));
    const auto seq = read_sequence(is, in.graph);
    const int w = width_of_sequence(in.graph, seq);
    out["mode"] = "sequence";
    out["width"] = w;
    out["d_from_twinwidth"] = d_from_twinwidth(w);
  } else {
    const auto [t, seq] = twinwidth_exact(in.graph, caps.twinwidth_n);
    out["mode"] = "exact";
    out["twin_width"] = t;
    out["width_of_witness"] = width_of_sequence(in.graph, seq);
    out["d_from_twinwidth"] = d_from_twinwidth(t);
    if (!a.output.empty()) {
      std::ostringstream os;
      write_sequence(os, in.graph, seq);
      write_text(a.output, os.str());
    }
  }
  rep["outputs"] = out;
  write_text(common.report, rep.finish());
  return kExitOk;
}

struct MinorArgs {
  std::string graph;
  int d = 0;
  bool mixed = false;
  bool min_d = false;
  std::string coarsening;
  std::string output;
};

int cmd_minor(const MinorArgs& a, const Common& common) {
  const auto caps = effective_caps(common);
  const auto in = load_graph(a.graph);
  const auto& g = in.graph;
  Report rep("minor", common, caps);
  rep.input(in);
  rep.param("d") = a.d;
  rep.param("kind") = a.mixed ? "mixed" : "almost_mixed";
  Json out;
  if (a.min_d) {
    out["min_almost_mixed_free"] = min_almost_mixed_free(g, caps);
  } else {
    if (a.d < 1) throw InputError("--d must be >= 1");
    std::optional<Division> coarsening;
    if (!a.coarsening.empty()) {
      std::vector<int> cuts{0};
      for (auto c : parse_int_list(a.coarsening)) cuts.push_back(c);
      cuts.push_back(g.size());
      coarsening = Division::symmetric(cuts);
      if (!coarsening->valid_for(g.size())) throw InputError("coarsening cuts must be increasing and inside 1..n-1");
    }
    if (a.mixed && coarsening) throw InputError("--coarsening applies to almost mixed minors only");
    const auto w = a.mixed ? find_mixed_minor(g, a.d, caps) : find_almost_mixed_minor(g, a.d, coarsening, caps);
    out["found"] = w.has_value();
    out["witness"] = w ? witness_to_json(*w) : Json();
    if (w && !a.output.empty()) write_text(a.output, witness_to_json(*w).dump() + "\n");
  }
  rep["outputs"] = out;
  write_text(common.report, rep.finish());
  return kExitOk;
}

struct CompressArgs {
  std::string graph;
  std::string cuts;
  std::string kind = "H";
  std::string output;
};

int cmd_compress(const CompressArgs& a, const Common& common) {
  const auto caps = effective_caps(common);
  const auto in = load_graph(a.graph);
  const auto& g = in.graph;
  Report rep("compress", common, caps);
  rep.input(in);
  rep.param("kind") = a.kind;
  rep.param("cuts") = a.cuts;
  CompressionKind kind;
  if (a.kind == "H") kind = CompressionKind::H;
  else if (a.kind == "V") kind = CompressionKind::V;
  else if (a.kind == "M") kind = CompressionKind::M;
  else throw InputError("--kind must be H, V or M");
  std::vector<int> cuts{0};
  for (auto c : parse_int_list(a.cuts)) cuts.push_back(c);
  cuts.push_back(g.size());
  const auto div = Division::symmetric(cuts);
  if (!div.valid_for(g.size())) throw InputError("cuts must be increasing and inside 1..n-1");
  const auto res = compress(g, div, kind);
  Json out;
  out["blocks"] = res.graph.size();
  out["edges"] = res.graph.edge_count();
  out["omega"] = res.graph.size() == 0 ? 0 : clique_number(res.graph, caps.clique_n).first;
  if (kind == CompressionKind::M) out["degeneracy"] = degeneracy_coloring(res.graph).degeneracy;
  rep["outputs"] = out;
  if (!a.output.empty()) write_text(a.output, format_graph(res.graph));
  write_text(common.report, rep.finish());
  return kExitOk;
}

struct RecurrenceArgs {
  int d_max = 5;
  std::int64_t n_max = 1 << 10;
  std::int64_t alpha = 1;
  bool all_points = false;
  std::string output = "-";
};

int cmd_recurrence(const RecurrenceArgs& a, const Common& common) {
  std::map<int, std::int64_t> alpha;
  for (int d = 3; d <= a.d_max; ++d) alpha[d] = a.alpha;
  const auto table = build_table(a.d_max, a.n_max, alpha);
  std::ostringstream csv;
  csv << "d,n,log2_f,beta\n";
  csv << std::setprecision(17);
  for (int d = 3; d <= a.d_max; ++d) {
    const auto beta = fit_beta(table, d);
    for (std::int64_t n = 1; n <= a.n_max; n = a.all_points ? n + 1 : n * 2)
      csv << d << ',' << n << ',' << static_cast<double>(table.log2_f(d, n)) << ',' << beta << '\n';
  }
  write_text(a.output, csv.str());
  if (common.report != "-") {
    Report rep("recurrence", common, effective_caps(common));
    rep.param("d_max") = a.d_max;
    rep.param("n_max") = a.n_max;
    rep.param("alpha") = a.alpha;
    Json betas = Json::object();
    for (int d = 3; d <= a.d_max; ++d) betas[std::to_string(d)] = fit_beta(table, d);
    rep["outputs"] = {{"beta", betas}};
    write_text(common.report, rep.finish());
  }
  return kExitOk;
}

struct GenArgs {
  std::string family;
  std::vector<int> params;
  std::string output = "-";
  std::string sequence;
};

int cmd_gen(const GenArgs& a, const Common& common) {
  const auto gen = generate({a.family, a.params, common.seed});
  write_text(a.output, format_graph(gen.graph));
  if (!a.sequence.empty()) {
    if (!gen.sequence) throw InputError("family " + a.family + " has no attached contraction sequence");
    std::ostringstream os;
    write_sequence(os, gen.graph, *gen.sequence);
    write_text(a.sequence, os.str());
  }
  if (common.report != "-") {
    Report rep("gen", common, effective_caps(common));
    rep.param("family") = a.family;
    rep.param("params") = a.params;
    rep["outputs"] = {{"n", gen.graph.size()}, {"m", gen.graph.edge_count()}, {"digest", digest(format_graph(gen.graph))}};
    write_text(common.report, rep.finish());
  }
  return kExitOk;
}

struct BenchArgs {
  int n = 24;
  int d = 3;
  int reps = 20;
  int pct = 50;
};

// Corner-scan and minor-search throughput on seeded random graphs.
int cmd_bench(const BenchArgs& a, const Common& common) {
  const auto caps = effective_caps(common);
  Report rep("bench", common, caps);
  rep.param("n") = a.n;
  rep.param("d") = a.d;
  rep.param("reps") = a.reps;
  rep.param("percent") = a.pct;
  if (a.n < 2 || a.reps < 1) throw InputError("bench needs n >= 2 and reps >= 1");
  using clock = std::chrono::steady_clock;
  long zones = 0, mixed = 0, searches = 0, found = 0;
  double scan_secs = 0, search_secs = 0;
  for (int r = 0; r < a.reps; ++r) {
    const auto g = generate({"erdos_renyi", {a.n, a.pct}, common.seed + static_cast<std::uint64_t>(r)}).graph;
    auto t0 = clock::now();
    for (int r1 = 0; r1 < a.n; ++r1)
      for (int r2 = r1 + 2; r2 <= a.n; ++r2)
        for (int c1 = 0; c1 + 2 <= a.n; c1 += 2) {
          ++zones;
          mixed += find_corner(g, {r1, r2}, {c1, a.n}).has_value() ? 1 : 0;
        }
    scan_secs += std::chrono::duration<double>(clock::now() - t0).count();
    t0 = clock::now();
    ++searches;
    found += find_almost_mixed_minor(g, a.d, std::nullopt, caps).has_value() ? 1 : 0;
    search_secs += std::chrono::duration<double>(clock::now() - t0).count();
  }
  Json out;
  out["zones_scanned"] = zones;
  out["zones_mixed"] = mixed;
  out["zones_per_second"] = scan_secs > 0 ? zones / scan_secs : 0.0;
  out["minor_searches"] = searches;
  out["minors_found"] = found;
  out["searches_per_second"] = search_secs > 0 ? searches / search_secs : 0.0;
  rep["outputs"] = out;
  write_text(common.report, rep.finish());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colouring and oracles for graphs with almost-mixed-free adjacency matrices"};
  app.require_subcommand(1);
  std::function<int()> run;

  Common common;

  ColorArgs color;
  auto* c = app.add_subcommand("color", "Colour a graph with the bounded-minor construction");
  c->add_option("graph", color.graph, "Graph file")->required();
  c->add_option("--d", color.d, "Almost-mixed-free order d >= 2")->required();
  c->add_option("--k", color.k, "Blob slack k (0: floor(omega/8))");
  c->add_option("--trace", color.trace, "Write the decomposition trace JSON here");
  c->add_flag("--verify-promise", color.verify_promise, "Search for a d-almost mixed minor first");
  c->add_flag("--squash", color.squash, "Greedily merge compatible colour classes");
  c->add_option("-o,--output", color.output, "Colouring file ('-' for stdout)");
  add_common(c, common);
  c->callback([&] { run = [&] { return cmd_color(color, common); }; });

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a colouring or a minor witness against a graph");
  v->add_option("graph", verify.graph, "Graph file")->required();
  v->add_option("--coloring", verify.coloring, "Colouring file");
  v->add_option("--witness", verify.witness, "Witness JSON file");
  add_common(v, common);
  v->callback([&] { run = [&] { return cmd_verify(verify, common); }; });

  TwwArgs tww;
  auto* t = app.add_subcommand("tww", "Exact twin-width, or the width of a given contraction sequence");
  t->add_option("graph", tww.graph, "Graph file")->required();
  t->add_option("--sequence", tww.sequence, "Sequence file to evaluate instead of searching");
  t->add_option("-o,--output", tww.output, "Write the optimal sequence here");
  add_common(t, common);
  t->callback([&] { run = [&] { return cmd_tww(tww, common); }; });

  MinorArgs minor;
  auto* m = app.add_subcommand("minor", "Exhaustive (almost) mixed minor search");
  m->add_option("graph", minor.graph, "Graph file")->required();
  m->add_option("--d", minor.d, "Minor order");
  m->add_flag("--mixed", minor.mixed, "Require every zone mixed, not only off-diagonal ones");
  m->add_flag("--min-d", minor.min_d, "Report the least d with no d-almost mixed minor");
  m->add_option("--coarsening", minor.coarsening, "Restrict boundaries to these cuts (comma separated)");
  m->add_option("-o,--output", minor.output, "Write the witness JSON here");
  add_common(m, common);
  m->callback([&] { run = [&] { return cmd_minor(minor, common); }; });

  CompressArgs comp;
  auto* cp = app.add_subcommand("compress", "Horizontal, vertical or mixed compression along a symmetric division");
  cp->add_option("graph", comp.graph, "Graph file")->required();
  cp->add_option("--cuts", comp.cuts, "Last vertex of every block but the final one (comma separated)")->required();
  cp->add_option("--kind", comp.kind, "H, V or M");
  cp->add_option("-o,--output", comp.output, "Write the compressed graph here");
  add_common(cp, common);
  cp->callback([&] { run = [&] { return cmd_compress(comp, common); }; });

  RecurrenceArgs rec;
  auto* r = app.add_subcommand("recurrence", "Tabulate f_d(n) and fit beta_d; CSV d,n,log2_f,beta");
  r->add_option("--d-max", rec.d_max, "Largest d")->check(CLI::Range(3, 12));
  r->add_option("--n-max", rec.n_max, "Largest n")->check(CLI::Range(std::int64_t{8}, std::int64_t{1} << 24));
  r->add_option("--alpha", rec.alpha, "alpha_d for every d")->check(CLI::PositiveNumber);
  r->add_flag("--all", rec.all_points, "Emit every n instead of powers of two");
  r->add_option("-o,--output", rec.output, "CSV destination");
  add_common(r, common);
  r->callback([&] { run = [&] { return cmd_recurrence(rec, common); }; });

  GenArgs gen;
  auto* gcmd = app.add_subcommand("gen", "Generate a seeded graph in the shared format");
  gcmd->add_option("family", gen.family, "cograph | path | cycle | grid | disjoint_cliques | erdos_renyi | bounded_tww")->required();
  gcmd->add_option("params", gen.params, "Family parameters");
  gcmd->add_option("-o,--output", gen.output, "Graph destination");
  gcmd->add_option("--sequence", gen.sequence, "Write the attached contraction sequence here (bounded_tww)");
  add_common(gcmd, common);
  gcmd->callback([&] { run = [&] { return cmd_gen(gen, common); }; });

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Corner-scan and minor-search throughput");
  b->add_option("--n", bench.n, "Vertices per graph");
  b->add_option("--d", bench.d, "Minor order");
  b->add_option("--reps", bench.reps, "Graphs");
  b->add_option("--percent", bench.pct, "Edge percent");
  add_common(b, common);
  b->callback([&] { run = [&] { return cmd_bench(bench, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    return run();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const OracleCapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const EngineBug& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
