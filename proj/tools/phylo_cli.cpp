// Command-line front end: every library operation behind one binary.
// Exit codes: 0 yes/success, 1 no (decision subcommands), 2 usage or
// malformed input, 3 precondition violation.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phylo/classify.hpp"
#include "phylo/cluster_containment.hpp"
#include "phylo/compression.hpp"
#include "phylo/decomposition.hpp"
#include "phylo/enewick.hpp"
#include "phylo/errors.hpp"
#include "phylo/generators.hpp"
#include "phylo/isomorphism.hpp"
#include "phylo/network.hpp"
#include "phylo/oracle.hpp"

using nlohmann::json;
using namespace phylo;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownHybridReference:
    case ErrorCode::CyclicGraph:
    case ErrorCode::NoRoot:
    case ErrorCode::MultipleRoots:
    case ErrorCode::DegreeViolation:
    case ErrorCode::DuplicateTaxon:
    case ErrorCode::UnlabeledLeaf:
    case ErrorCode::LabeledInternalNode:
      return 2;  // the input itself is bad
    default:
      return 3;  // structurally valid input outside an operation's domain
  }
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::SyntaxError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_edge_list(const std::string& path, const std::string& format) {
  if (format == "tsv") return true;
  if (format == "enwk") return false;
  return path.size() >= 4 && (path.ends_with(".tsv") || path.ends_with(".txt"));
}

Network load_network(const std::string& path, const std::string& format) {
  const std::string text = read_text(path);
  if (looks_like_edge_list(path, format)) return parse_edge_list(text);
  return parse_enewick(text);
}

// Primary output goes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) fail(ErrorCode::SyntaxError, "cannot open " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("PHYLO_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultSwitchingBudget;
}

NodeId resolve_node(const Network& net, const std::string& token) {
  if (auto id = net.find_name(token)) return *id;
  if (auto id = net.find_taxon(token)) return *id;
  fail(ErrorCode::UnknownNode, "no node named or labeled " + token);
}

Cluster split_cluster(const std::string& csv) {
  Cluster taxa;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ','))
    if (!item.empty()) taxa.push_back(item);
  return taxa;
}

json tri_state(const std::optional<bool>& v) {
  return v ? json(*v) : json(nullptr);
}

struct CommonInput {
  std::string path;
  std::string format;  // "", "enwk", "tsv"

  void attach(CLI::App* cmd) {
    cmd->add_option("file", path, "input network, '-' for stdin")->required();
    cmd->add_option("--format", format, "input format override")
        ->check(CLI::IsMember({"enwk", "tsv"}));
  }
  Network load() const { return load_network(path, format); }
};

int run_validate(const CommonInput& in, bool as_json) {
  const Network net = in.load();
  int rets = 0;
  for (NodeId v = 0; v < net.node_count(); ++v)
    if (net.kind(v) == NodeKind::Reticulate) ++rets;
  if (as_json) {
    json out{{"valid", true},
             {"nodes", net.node_count()},
             {"edges", net.edge_count()},
             {"leaves", net.leaves().size()},
             {"reticulations", rets},
             {"root", net.name(net.root())}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "valid: " << net.node_count() << " nodes, "
              << net.edge_count() << " edges, " << net.leaves().size()
              << " leaves, " << rets << " reticulations, root "
              << net.name(net.root()) << "\n";
  }
  return 0;
}

int run_classify(const CommonInput& in, bool as_json) {
  const Network net = in.load();
  const ClassificationReport rep = classification_report(net);
  if (as_json) {
    json out{{"binary", rep.binary},
             {"tree_child", rep.tree_child},
             {"reticulation_visible", rep.reticulation_visible},
             {"tree_sibling", rep.tree_sibling},
             {"galled", tri_state(rep.galled)},
             {"tree_based", rep.tree_based},
             {"quasi_reticulation_visible", rep.quasi_reticulation_visible},
             {"quasi_galled", rep.quasi_galled},
             {"witnesses", json(rep.witnesses)}};
    std::cout << out.dump() << "\n";
    return 0;
  }
  auto line = [&](const char* label, bool value) {
    std::cout << label << ": " << (value ? "yes" : "no") << "\n";
  };
  line("binary", rep.binary);
  line("tree-child", rep.tree_child);
  line("reticulation-visible", rep.reticulation_visible);
  line("tree-sibling", rep.tree_sibling);
  if (rep.galled)
    line("galled", *rep.galled);
  else
    std::cout << "galled: n/a (not binary)\n";
  line("tree-based", rep.tree_based);
  line("quasi-reticulation-visible", rep.quasi_reticulation_visible);
  line("quasi-galled", rep.quasi_galled);
  for (const auto& [key, text] : rep.witnesses)
    std::cout << "  " << key << ": " << text << "\n";
  return 0;
}

int run_decompose(const CommonInput& in, bool as_dot, const std::string& out) {
  const Network net = in.load();
  const Decomposition d = decompose(net);
  Sink sink(out);
  if (as_dot) {
    sink.out() << export_dot(net, &d, nullptr);
    return 0;
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    sink.out() << net.name(v) << "\t" << node_kind_name(net.kind(v)) << "\t";
    if (d.component_of[v] == Decomposition::kNone)
      sink.out() << "-";
    else
      sink.out() << d.component_of[v];
    sink.out() << "\n";
  }
  return 0;
}

int run_compress(const CommonInput& in, const std::string& out,
                 const std::string& map_path) {
  const Network net = in.load();
  const CompressionResult cr = compress(net);
  Sink sink(out);
  sink.out() << write_enewick(cr.compressed);
  if (!map_path.empty()) {
    Sink map_sink(map_path);
    for (NodeId v = 0; v < net.node_count(); ++v)
      map_sink.out() << net.name(v) << "\t"
                     << cr.compressed.name(cr.node_map[v]) << "\n";
  }
  return 0;
}

int run_scc(const CommonInput& in, const std::string& node,
            const std::string& cluster) {
  const Network net = in.load();
  const NodeId u = resolve_node(net, node);
  const SccConditions c =
      solve_scc_detailed(net, {u, split_cluster(cluster)});
  json out{{"answer", c.answer},
           {"conditions",
            {{"purple", c.purple_free},
             {"nprime", tri_state(c.nprime)},
             {"ndouble", tri_state(c.ndouble)}}}};
  std::cout << out.dump() << "\n";
  return c.answer ? 0 : 1;
}

int run_cc(const CommonInput& in, const std::string& cluster) {
  const Network net = in.load();
  const auto node = solve_cc(net, split_cluster(cluster));
  json out{{"answer", node.has_value()},
           {"node", node ? json(net.name(*node)) : json(nullptr)}};
  std::cout << out.dump() << "\n";
  return node ? 0 : 1;
}

int run_oracle_scc(const CommonInput& in, const std::string& node,
                   const std::string& cluster, std::uint64_t budget) {
  const Network net = in.load();
  const NodeId u = resolve_node(net, node);
  const bool answer = oracle_scc(net, u, split_cluster(cluster), budget);
  std::cout << json{{"answer", answer}}.dump() << "\n";
  return answer ? 0 : 1;
}

int run_oracle_clusters(const CommonInput& in, const std::string& node,
                        std::uint64_t budget, bool as_json) {
  const Network net = in.load();
  const NodeId u = resolve_node(net, node);
  const auto clusters = softwired_clusters_at(net, u, budget);
  if (as_json) {
    json arr = json::array();
    for (const Cluster& c : clusters) arr.push_back(c);
    std::cout << json{{"clusters", arr}}.dump() << "\n";
    return 0;
  }
  for (const Cluster& c : clusters) {
    for (std::size_t i = 0; i < c.size(); ++i)
      std::cout << (i ? "," : "") << c[i];
    std::cout << "\n";
  }
  return 0;
}

int run_oracle_trees(const CommonInput& in, std::uint64_t budget,
                     const std::string& out) {
  const Network net = in.load();
  Sink sink(out);
  for_each_displayed_tree(
      net, [&](const Network& tree) { sink.out() << write_enewick(tree); },
      budget);
  return 0;
}

int run_oracle_tree_based(const CommonInput& in, std::uint64_t budget) {
  const Network net = in.load();
  const bool answer = oracle_is_tree_based(net, budget);
  std::cout << json{{"answer", answer}}.dump() << "\n";
  return answer ? 0 : 1;
}

int run_gen(int leaves, int reticulations, const std::string& klass,
            std::uint64_t seed, const std::string& out) {
  const auto target = parse_class_target(klass);
  if (!target) fail(ErrorCode::GenerationFailed, "unknown class " + klass);
  GenSpec spec;
  spec.leaves = leaves;
  spec.reticulations = reticulations;
  spec.target = *target;
  spec.seed = seed;
  Sink sink(out);
  sink.out() << write_enewick(generate(spec));
  return 0;
}

// One CSV row per timed query, sizes ascending. Small rungs repeat the call
// and report the mean so the clock resolution does not drown the signal.
int run_bench_scc(const std::string& sizes_csv, std::uint64_t seed,
                  int queries, const std::string& out) {
  std::vector<std::int64_t> sizes;
  for (const std::string& tok : split_cluster(sizes_csv))
    sizes.push_back(std::stoll(tok));
  GenSpec base;
  base.target = ClassTarget::QuasiRV;
  base.seed = seed;
  const std::vector<Network> ladder = size_ladder(base, sizes);

  Sink sink(out);
  sink.out() << "size,nanoseconds,answer\n";
  std::mt19937_64 rng(seed);
  for (std::size_t rung = 0; rung < ladder.size(); ++rung) {
    const Network& net = ladder[rung];
    const std::int64_t m = net.node_count() + net.edge_count();
    std::vector<NodeId> tree_nodes;
    for (NodeId v = 0; v < net.node_count(); ++v)
      if (net.kind(v) == NodeKind::Tree) tree_nodes.push_back(v);
    const auto& taxa = net.taxa();
    const int reps = std::max<int>(1, static_cast<int>(200000 / (m + 1)));
    for (int q = 0; q < queries; ++q) {
      const NodeId u = tree_nodes[rng() % tree_nodes.size()];
      Cluster s;
      if (q % 2 == 0) {
        s = leaves_below(net, u);
      } else {
        for (const auto& t : taxa)
          if (rng() % 4 == 0) s.push_back(t);
        if (s.empty()) s.push_back(taxa[rng() % taxa.size()]);
      }
      bool answer = false;
      const auto start = std::chrono::steady_clock::now();
      for (int rep = 0; rep < reps; ++rep) answer = solve_scc(net, {u, s});
      const auto stop = std::chrono::steady_clock::now();
      const auto ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
              .count() /
          reps;
      sink.out() << m << "," << ns << "," << (answer ? "true" : "false")
                 << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rooted phylogenetic network toolkit"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker cap (orchestration is serial)")
      ->check(CLI::PositiveNumber);

  std::function<int()> action;

  CommonInput in_validate, in_classify, in_decompose, in_compress, in_scc,
      in_cc, in_oscc, in_oclusters, in_otrees, in_otb;
  bool json_validate = false, json_classify = false, json_clusters = false;
  bool json_scc = false, json_cc = false;
  bool dot_decompose = false;
  std::string out_decompose, out_compress, out_map, out_trees, out_gen,
      out_bench;
  std::string scc_node, scc_cluster, cc_cluster, oscc_node, oscc_cluster,
      oclusters_node;
  std::uint64_t budget = default_budget();
  int gen_leaves = 5, gen_rets = 2, bench_queries = 20;
  std::string gen_class = "any", bench_sizes = "1000,10000,100000";
  std::uint64_t gen_seed = 1, bench_seed = 1;

  auto* validate = app.add_subcommand("validate", "parse and check a network");
  in_validate.attach(validate);
  validate->add_flag("--json", json_validate, "JSON output");
  validate->callback([&] { action = [&] { return run_validate(in_validate, json_validate); }; });

  auto* classify = app.add_subcommand("classify", "class membership report");
  in_classify.attach(classify);
  classify->add_flag("--json", json_classify, "JSON output");
  classify->callback([&] { action = [&] { return run_classify(in_classify, json_classify); }; });

  auto* decompose_cmd =
      app.add_subcommand("decompose", "tree-node and reticulation components");
  in_decompose.attach(decompose_cmd);
  decompose_cmd->add_flag("--dot", dot_decompose, "DOT output with clusters");
  decompose_cmd->add_option("-o,--out", out_decompose, "output file");
  decompose_cmd->callback([&] {
    action = [&] { return run_decompose(in_decompose, dot_decompose, out_decompose); };
  });

  auto* compress_cmd =
      app.add_subcommand("compress", "quotient by same-kind components");
  in_compress.attach(compress_cmd);
  compress_cmd->add_option("-o,--out", out_compress, "output file");
  compress_cmd->add_option("--map", out_map, "node map TSV file");
  compress_cmd->callback([&] {
    action = [&] { return run_compress(in_compress, out_compress, out_map); };
  });

  auto* scc = app.add_subcommand("scc", "small cluster containment");
  in_scc.attach(scc);
  scc->add_option("--node", scc_node, "tree node (name or taxon)")->required();
  scc->add_option("--cluster", scc_cluster, "comma-separated taxa")->required();
  scc->add_flag("--json", json_scc, "JSON output (always on)");
  scc->callback([&] { action = [&] { return run_scc(in_scc, scc_node, scc_cluster); }; });

  auto* cc = app.add_subcommand("cc", "cluster containment");
  in_cc.attach(cc);
  cc->add_option("--cluster", cc_cluster, "comma-separated taxa")->required();
  cc->add_flag("--json", json_cc, "JSON output (always on)");
  cc->callback([&] { action = [&] { return run_cc(in_cc, cc_cluster); }; });

  auto* oracle = app.add_subcommand("oracle", "exponential reference checks");
  oracle->require_subcommand(1);

  auto* oscc = oracle->add_subcommand("scc", "switching-enumeration SCC");
  in_oscc.attach(oscc);
  oscc->add_option("--node", oscc_node, "tree node (name or taxon)")->required();
  oscc->add_option("--cluster", oscc_cluster, "comma-separated taxa")->required();
  oscc->add_option("--budget", budget, "switching cap");
  oscc->callback([&] {
    action = [&] { return run_oracle_scc(in_oscc, oscc_node, oscc_cluster, budget); };
  });

  auto* oclusters =
      oracle->add_subcommand("clusters", "softwired clusters at a node");
  in_oclusters.attach(oclusters);
  oclusters->add_option("--node", oclusters_node, "node (name or taxon)")
      ->required();
  oclusters->add_option("--budget", budget, "switching cap");
  oclusters->add_flag("--json", json_clusters, "JSON output");
  oclusters->callback([&] {
    action = [&] {
      return run_oracle_clusters(in_oclusters, oclusters_node, budget,
                                 json_clusters);
    };
  });

  auto* otrees = oracle->add_subcommand("trees", "displayed spanning trees");
  in_otrees.attach(otrees);
  otrees->add_option("--budget", budget, "switching cap");
  otrees->add_option("-o,--out", out_trees, "output file");
  otrees->callback([&] {
    action = [&] { return run_oracle_trees(in_otrees, budget, out_trees); };
  });

  auto* otb = oracle->add_subcommand("tree-based", "switching-enumeration tree-based");
  in_otb.attach(otb);
  otb->add_option("--budget", budget, "switching cap");
  otb->callback([&] { action = [&] { return run_oracle_tree_based(in_otb, budget); }; });

  auto* gen = app.add_subcommand("gen", "deterministic network generator");
  gen->add_option("--leaves", gen_leaves, "leaf count");
  gen->add_option("--reticulations", gen_rets, "reticulation count");
  gen->add_option("--class", gen_class,
                  "any|tree-child|reticulation-visible|galled|quasi-rv");
  gen->add_option("--seed", gen_seed, "PRNG seed");
  gen->add_option("-o,--out", out_gen, "output file");
  gen->callback([&] {
    action = [&] { return run_gen(gen_leaves, gen_rets, gen_class, gen_seed, out_gen); };
  });

  auto* bench = app.add_subcommand("bench", "timing harnesses");
  bench->require_subcommand(1);
  auto* bench_scc = bench->add_subcommand("scc", "containment timing ladder");
  bench_scc->add_option("--sizes", bench_sizes, "comma-separated |V|+|E| targets");
  bench_scc->add_option("--seed", bench_seed, "PRNG seed");
  bench_scc->add_option("--queries", bench_queries, "queries per rung");
  bench_scc->add_option("-o,--out", out_bench, "output CSV file");
  bench_scc->callback([&] {
    action = [&] {
      return run_bench_scc(bench_sizes, bench_seed, bench_queries, out_bench);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
