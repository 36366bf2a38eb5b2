#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plsa/alignment.hpp"
#include "plsa/chain_io.hpp"
#include "plsa/error.hpp"
#include "plsa/frechet.hpp"
#include "plsa/reduction.hpp"
#include "plsa/report.hpp"
#include "plsa/rigid_search.hpp"
#include "plsa/svg.hpp"

using namespace plsa;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitInvariant = 4;

// Equivalence is brute force over vertex subsets; keep it interactive.
constexpr std::size_t kMaxEquivalenceVertices = 12;

struct LoadedChain {
  Chain3D chain;
  InputInfo info;
};

bool has_pdb_extension(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".pdb" || ext == ".ent";
}

// "file", "file@name" for chain files, "file.pdb" or "file.pdb@X" for a PDB chain id.
LoadedChain load_chain(const std::string& spec) {
  std::string path = spec;
  std::optional<std::string> select;
  if (const auto at = spec.rfind('@'); at != std::string::npos && !std::filesystem::exists(spec)) {
    path = spec.substr(0, at);
    select = spec.substr(at + 1);
  }
  const std::string text = read_file(path);
  const std::string digest = fnv1a_digest(text);

  if (has_pdb_extension(path)) {
    std::optional<char> id;
    if (select) {
      if (select->size() != 1) throw Error(ErrorCode::ParseError, "PDB chain id must be one character: " + spec);
      id = (*select)[0];
    }
    auto chain = parse_pdb_ca(text, id);
    return {chain, {path, chain.id(), chain.size(), digest}};
  }

  auto doc = parse_chain_file(text);
  const Chain3D* chosen = nullptr;
  if (select) {
    chosen = doc.find(*select);
    if (!chosen) throw Error(ErrorCode::ParseError, path + " has no chain named '" + *select + "'");
  } else if (doc.chains.size() == 1) {
    chosen = &doc.chains.front();
  } else {
    throw Error(ErrorCode::ParseError, path + " holds " + std::to_string(doc.chains.size()) +
                                           " chains; pick one with " + path + "@name");
  }
  return {*chosen, {path, chosen->id(), chosen->size(), digest}};
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

InputInfo graph_input(const std::string& path) {
  const auto text = read_file(path);
  return {path, "", 0, fnv1a_digest(text)};
}

ReportFormat format_of(const std::string& f) { return f == "json" ? ReportFormat::Json : ReportFormat::Text; }

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void require_consistent(const RunReport& report) {
  const auto problems = report_violations(report);
  if (!problems.empty()) throw Error(ErrorCode::InvariantFailure, "result fails validation: " + problems.front());
}

std::string walk_text(const FrechetResult& r) {
  std::string out = "walk:";
  for (const auto& s : r.walk.steps) out += " (" + std::to_string(s.i) + "," + std::to_string(s.j) + ")";
  return out + "\n";
}

struct Options {
  std::vector<std::string> chains;
  std::string graph;
  std::string format = "text";
  double delta = 0.0;
  bool walk = false;
  bool fast = false;
  std::string mode = "triples";
  std::size_t budget = SearchConfig{}.budget;
  std::uint64_t seed = 0;
  std::optional<double> prune;
  std::string out;
  std::string report_path;
};

int run_dfd(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = load_chain(o.chains[0]);
  const auto b = load_chain(o.chains[1]);
  const auto result = discrete_frechet(a.chain, b.chain);
  RunReport report{"dfd", {a.info, b.info}, std::nullopt, result, std::nullopt, elapsed_ms(t0), std::nullopt,
                   {a.chain, b.chain}};
  require_consistent(report);
  std::cout << emit_report(report, format_of(o.format));
  if (o.walk && o.format == "text") std::cout << walk_text(result);
  return 0;
}

int run_plsa(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  RunReport report;
  report.command = "plsa";
  for (const auto& spec : o.chains) {
    auto loaded = load_chain(spec);
    report.inputs.push_back(loaded.info);
    report.chains.push_back(loaded.chain);
  }
  PlsaInstance{report.chains, o.delta}.validate();
  if (o.fast && report.chains.size() != 2) {
    throw Error(ErrorCode::InvalidConfig, "--fast applies to exactly two chains");
  }
  report.delta = o.delta;
  if (report.chains.size() == 2) {
    report.payload = o.fast ? plsa_static_pair_fast(report.chains[0], report.chains[1], o.delta)
                            : plsa_static_pair(report.chains[0], report.chains[1], o.delta);
  } else {
    report.payload = plsa_static_multi(report.chains, o.delta);
  }
  report.elapsed_ms = elapsed_ms(t0);
  require_consistent(report);
  std::cout << emit_report(report, format_of(o.format));
  return 0;
}

int run_rigid(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = load_chain(o.chains[0]);
  const auto b = load_chain(o.chains[1]);
  SearchConfig cfg{o.mode == "random" ? SearchMode::RandomRestarts : SearchMode::TripleEnumeration, o.budget, o.seed,
                   o.prune};
  const auto r = plsa_rigid_pair(a.chain, b.chain, o.delta, cfg);
  RunReport report{"plsa-rigid",
                   {a.info, b.info},
                   o.delta,
                   r.alignment,
                   r.motion,
                   elapsed_ms(t0),
                   cfg.mode == SearchMode::RandomRestarts ? std::optional<std::uint64_t>(o.seed) : std::nullopt,
                   {a.chain, apply_motion(r.motion, b.chain)}};
  require_consistent(report);
  std::cout << emit_report(report, format_of(o.format));
  if (o.format == "text") {
    std::cout << "motions evaluated: " << r.evaluated << " (best at candidate " << r.candidate_index << ")\n";
  }
  return 0;
}

int run_gen_hard(const Options& o) {
  const auto graph = load_graph(o.graph);
  const auto inst = build_reduction(graph, o.delta);
  std::filesystem::create_directories(o.out);

  nlohmann::json chains = nlohmann::json::array();
  for (std::size_t r = 0; r < inst.chains.size(); ++r) {
    const auto& chain = inst.chains[r];
    const std::string file = chain.id() + ".chain";
    const auto text = format_chain_document(ChainDocument{{chain}});
    write_file((std::filesystem::path(o.out) / file).string(), text);
    nlohmann::json entry{{"name", chain.id()}, {"file", file}, {"vertices", chain.size()},
                         {"digest", fnv1a_digest(text)}};
    if (r > 0) {
      const auto [i, j] = graph.edges()[r - 1];
      entry["edge"] = {i, j};
    } else {
      entry["edge"] = nullptr;
    }
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& l : inst.labels[r]) labels.push_back((l.layer == Layer::Prime ? "v'" : "v''") + std::to_string(l.vertex));
    entry["labels"] = labels;
    chains.push_back(entry);
  }
  const nlohmann::json manifest{{"graph", o.graph},          {"graph_digest", graph_input(o.graph).digest},
                                {"n_vertices", graph.n_vertices()}, {"n_edges", graph.edges().size()},
                                {"delta", inst.delta},       {"chains", chains}};
  write_file((std::filesystem::path(o.out) / "manifest.json").string(), manifest.dump(2) + "\n");
  std::cout << "wrote " << inst.chains.size() << " chains and manifest.json to " << o.out << "\n";
  return 0;
}

int run_verify(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto graph = load_graph(o.graph);
  const auto inst = build_reduction(graph, o.delta);
  ReductionSummary summary{graph.n_vertices(), graph.edges().size(), std::nullopt, std::nullopt, std::nullopt, {}};
  if (graph.n_vertices() <= kMaxBruteForceVertices) summary.properties = check_reduction_properties(inst);
  if (graph.n_vertices() <= kMaxEquivalenceVertices) {
    summary.independent_set = max_independent_set_bruteforce(graph);
    const auto sol = solve_reduction_bruteforce(inst);
    summary.alignment_k = sol.k;
    summary.alignment_vertices = sol.vertices;
  }
  RunReport report{"verify-reduction", {graph_input(o.graph)}, inst.delta, summary, std::nullopt, elapsed_ms(t0),
                   std::nullopt, {}};
  std::cout << emit_report(report, format_of(o.format));
  const bool props_ok = !summary.properties || summary.properties->all_hold();
  const bool equiv_ok = !summary.alignment_k || summary.equivalent();
  return props_ok && equiv_ok ? 0 : kExitInvariant;
}

int run_mis(const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto graph = load_graph(o.graph);
  RunReport report{"mis", {graph_input(o.graph)}, std::nullopt, max_independent_set_bruteforce(graph),
                   std::nullopt, elapsed_ms(t0), std::nullopt, {}};
  std::cout << emit_report(report, format_of(o.format));
  return 0;
}

int run_render(const Options& o) {
  const auto report = parse_report(read_file(o.report_path));
  if (const auto problems = report_violations(report); !problems.empty()) {
    throw Error(ErrorCode::ParseError, o.report_path + " does not validate: " + problems.front());
  }
  AlignmentResult alignment;
  if (const auto* r = std::get_if<AlignmentResult>(&report.payload)) {
    alignment = *r;
  } else {
    // A Fréchet coupling is drawn as the pairing of whole chains.
    for (const auto& s : std::get<FrechetResult>(report.payload).walk.steps) alignment.walk.steps.push_back({s.i, s.j});
  }
  write_file(o.out, emit_alignment_svg(alignment, report.chains));
  std::cout << "wrote " << o.out << "\n";
  return 0;
}

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Input: return kExitInput;
    case ErrorCategory::Precondition: return kExitPrecondition;
    case ErrorCategory::Invariant: return kExitInvariant;
  }
  return kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Protein local structure alignment under the discrete Frechet distance"};
  app.require_subcommand(1);
  Options o;
  const auto formats = CLI::IsMember({"json", "text"});
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(formats)->capture_default_str();
  };

  auto* dfd = app.add_subcommand("dfd", "Discrete Frechet distance of two chains");
  dfd->add_option("chains", o.chains, "Chain inputs A B")->required()->expected(2);
  dfd->add_flag("--walk", o.walk, "Print the optimal coupling (JSON always includes it)");
  add_format(dfd);

  auto* plsa = app.add_subcommand("plsa", "Static local alignment of 2 to 4 chains");
  plsa->add_option("chains", o.chains, "Chain inputs A B [C ...]")->required()->expected(2, -1);
  plsa->add_option("--delta", o.delta, "Frechet threshold")->required();
  plsa->add_flag("--fast", o.fast, "Prefix-maximum dynamic program (two chains only)");
  add_format(plsa);

  auto* rigid = app.add_subcommand("plsa-rigid", "Local alignment of two chains allowing a rigid motion of B");
  rigid->add_option("chains", o.chains, "Chain inputs A B")->required()->expected(2);
  rigid->add_option("--delta", o.delta, "Frechet threshold")->required();
  rigid->add_option("--mode", o.mode, "Candidate motions")->check(CLI::IsMember({"triples", "random"}))
      ->capture_default_str();
  rigid->add_option("--budget", o.budget, "Motions evaluated, identity included")->capture_default_str();
  rigid->add_option("--seed", o.seed, "Seed for random mode")->capture_default_str();
  rigid->add_option("--prune", o.prune, "Triple side-length tolerance (default 2 delta)");
  add_format(rigid);

  auto* gen = app.add_subcommand("gen-hard", "Write the chain family of a graph reduction");
  gen->add_option("graph", o.graph, "Graph file")->required();
  gen->add_option("--delta", o.delta, "Layer offset, 0 < delta < 0.1");
  gen->add_option("--out", o.out, "Output directory")->required();

  auto* verify = app.add_subcommand("verify-reduction", "Check a reduction instance's properties and equivalence");
  verify->add_option("graph", o.graph, "Graph file")->required();
  verify->add_option("--delta", o.delta, "Layer offset, 0 < delta < 0.1");
  add_format(verify);

  auto* mis = app.add_subcommand("mis", "Maximum independent set by exhaustive search");
  mis->add_option("graph", o.graph, "Graph file")->required();
  add_format(mis);

  auto* render = app.add_subcommand("render", "Draw a JSON result as SVG");
  render->add_option("report", o.report_path, "Result JSON from dfd, plsa or plsa-rigid")->required();
  render->add_option("--out", o.out, "SVG file")->required();

  for (auto* sub : {gen, verify}) sub->get_option("--delta")->default_val(kDefaultReductionDelta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (dfd->parsed()) return run_dfd(o);
    if (plsa->parsed()) return run_plsa(o);
    if (rigid->parsed()) return run_rigid(o);
    if (gen->parsed()) return run_gen_hard(o);
    if (verify->parsed()) return run_verify(o);
    if (mis->parsed()) return run_mis(o);
    return run_render(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
