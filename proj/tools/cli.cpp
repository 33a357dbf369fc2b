#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treespan/coloring.hpp"
#include "treespan/errors.hpp"
#include "treespan/instance_lab.hpp"
#include "treespan/io.hpp"
#include "treespan/minor_structure.hpp"
#include "treespan/random.hpp"
#include "treespan/span_program.hpp"
#include "treespan/tree_program.hpp"
#include "treespan/walk_simulator.hpp"

namespace treespan::cli {

namespace {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

Json checks_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) a.push_back(Json{{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return a;
}

void print_checks(std::ostream& out, const std::vector<Check>& checks) {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks)
    out << (c.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << c.name << "  "
        << c.detail << '\n';
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void emit(const std::string& path, const Json& report) {
  if (!path.empty()) write_json_file(path, report);
}

// ---------------------------------------------------------------------------
// detect

struct DetectArgs {
  std::string graph, tree, coloring, bundle, json_out;
  long trials = 0;
  std::uint64_t seed = 0;
};

long default_trials(int k) {
  // 3 k^k, capped to keep the largest desk-scale trees tractable
  double t = 3.0 * std::pow(static_cast<double>(k), k);
  return static_cast<long>(std::min(t, 4096.0));
}

int cmd_detect(const DetectArgs& a, std::ostream& out) {
  InputGraph g;
  RootedTree tree;
  std::optional<Coloring> fixed;
  if (!a.bundle.empty()) {
    Bundle b = bundle_from_json(read_json_file(a.bundle));
    g = b.instance.graph;
    tree = b.instance.tree;
    fixed = b.instance.coloring;
  } else {
    if (a.graph.empty() || a.tree.empty()) throw FormatError("detect needs --graph and --tree, or --bundle");
    g = graph_from_json(read_json_file(a.graph));
    tree = tree_from_json(read_json_file(a.tree));
    if (!a.coloring.empty()) fixed = coloring_from_json(read_json_file(a.coloring));
  }

  long trials = fixed ? 1 : (a.trials > 0 ? a.trials : default_trials(tree.size()));
  CounterRng seeds(a.seed, 7);
  long accepted = 0, certified = 0;
  Json per = Json::array();
  for (long i = 0; i < trials; ++i) {
    Coloring c = fixed ? *fixed : random_coloring(g, tree, seeds.at(static_cast<std::uint64_t>(i)));
    ColoredGraph cg(g, c, tree);
    TreeProgram tp = build_tree_program(tree, cg);
    EvalResult r = evaluate(tp.program(), tp.availability());
    bool cert = false;
    if (r.accepted) {
      ++accepted;
      auto iota = correctly_colored_subgraph(cg, tree);
      cert = iota.has_value();
      if (cert) ++certified;
    }
    if (per.size() < 64)
      per.push_back(Json{{"trial", i},
                         {"coloring_seed", c.seed},
                         {"accepted", r.accepted},
                         {"borderline", r.borderline},
                         {"residual", r.residual},
                         {"witness_size", r.wsize},
                         {"certified", cert}});
    if (cert) {
      trials = i + 1;
      break;
    }
  }

  int code;
  std::string verdict, reason;
  if (certified > 0) {
    code = kExitSubgraph;
    verdict = "CONTAINS-SUBGRAPH";
    reason = "an accepting coloring carries a correctly colored copy of the tree";
  } else if (accepted == 0) {
    code = kExitNoMinor;
    verdict = "NO-MINOR";
    reason = "every coloring was rejected";
  } else {
    code = kExitOutsidePromise;
    verdict = "OUTSIDE-PROMISE-SUSPECTED";
    reason = "accepted without a correctly colored copy; the input violates the promise";
  }

  Json inputs = a.bundle.empty() ? Json{{"graph", a.graph}, {"tree", a.tree}} : Json{{"bundle", a.bundle}};
  if (!a.coloring.empty()) inputs["coloring"] = a.coloring;
  inputs["seed"] = a.seed;
  Json report{{"command", "detect"},
              {"inputs", inputs},
              {"trials", trials},
              {"accepted_trials", accepted},
              {"certified_trials", certified},
              {"verdict", verdict},
              {"reason", reason},
              {"exit_code", code},
              {"per_trial", per}};
  out << verdict << ": " << reason << " (" << trials << " trial" << (trials == 1 ? "" : "s") << ", "
      << accepted << " accepted)\n";
  emit(a.json_out, report);
  return code;
}

// ---------------------------------------------------------------------------
// verify

std::vector<Check> verify_bundle(const Bundle& b, Json& measurements) {
  std::vector<Check> checks;
  const PromiseInstance& inst = b.instance;
  const RootedTree& tree = inst.tree;
  ColoredGraph cg = inst.colored();

  // G_c as carried by the bundle, if any
  if (b.has_kept_edges) {
    std::vector<Edge> carried;
    for (auto [u, v] : b.kept_edges) carried.push_back({std::min(u, v), std::max(u, v)});
    std::sort(carried.begin(), carried.end());
    bool adj = true;
    std::string bad;
    for (auto [u, v] : carried) {
      bool ok = u >= 0 && v >= 0 && u < cg.size() && v < cg.size() && tree.has_edge(cg.color(u), cg.color(v));
      if (!ok && adj) bad = "edge (" + std::to_string(u) + "," + std::to_string(v) + ") joins non-adjacent blocks";
      adj = adj && ok;
    }
    checks.push_back({"block_adjacency", adj, adj ? "every kept edge joins tree-adjacent blocks" : bad});
    bool same = carried == cg.kept_edges();
    checks.push_back({"kept_edges_match", same,
                      same ? "carried G_c equals the recomputed one" : "carried G_c differs from the recomputed one"});
  }

  Label derived = derive_label(inst.graph, tree, inst.coloring);
  checks.push_back({"label_oracle", derived == inst.label,
                    std::string("bundle says ") + label_name(inst.label) + ", oracles say " + label_name(derived)});

  TreeProgram tp = build_tree_program(tree, cg);
  EvalResult r = evaluate(tp.program(), tp.availability());
  measurements["accepted"] = r.accepted;
  measurements["residual"] = r.residual;
  measurements["witness_size"] = r.wsize;
  measurements["num_inputs"] = tp.program().num_inputs();

  if (derived == Label::Positive) {
    checks.push_back({"positive_accepted", r.accepted, "residual " + num(r.residual)});
    const double bound = tree.num_edges();
    checks.push_back({"min_witness_within_edge_count", r.accepted && r.wsize <= bound + 1e-6,
                      "size " + num(r.wsize) + " vs |E_T| = " + num(bound)});
    auto iota = correctly_colored_subgraph(cg, tree);
    try {
      Eigen::VectorXd w = positive_witness_from_embedding(tp, *iota);
      double res = positive_residual(tp.program(), tp.availability(), w);
      double size = positive_size(tp.program(), tp.availability(), w);
      measurements["embedding_witness_size"] = size;
      checks.push_back({"embedding_witness_feasible", res <= 1e-8,
                        "residual " + num(res) + ", labeled size " + num(size)});
    } catch (const InfeasibleWitness& e) {
      checks.push_back({"embedding_witness_feasible", false, e.what()});
    }
  }

  if (derived == Label::Negative) checks.push_back({"negative_rejected", !r.accepted, "residual " + num(r.residual)});

  if (derived == Label::Negative || derived == Label::OutsidePromise) {
    MinorDecomposition dec = decompose(cg, tree);
    ConditionReport rep = check_conditions(dec, cg, tree);
    for (int c = 0; c < 6; ++c)
      checks.push_back({"decomposition_condition_" + std::to_string(c + 1), rep.pass[c], rep.detail[c]});
    bool has_minor = derived == Label::OutsidePromise;
    checks.push_back({"W_nonempty_iff_minor", dec.W.empty() != has_minor,
                      "|W| = " + std::to_string(dec.W.size())});
    measurements["decomposition"] = decomposition_to_json(dec, rep);
    if (dec.W.empty()) {
      CollapsedSets sets = collapse(dec, tree);
      auto cc = check_collapsed(sets, cg, tree);
      const char* names[4] = {"collapsed_disjoint_union", "collapsed_root_block", "collapsed_internal_closure",
                              "collapsed_leaf_isolation"};
      for (int c = 0; c < 4; ++c) checks.push_back({names[c], cc[c], ""});
      try {
        NegativeWitness nw = negative_witness_from(sets, tree, cg, tp);
        double m = tp.program().num_inputs();
        measurements["negative_witness_size"] = nw.size;
        checks.push_back({"negative_witness_valid", true,
                          "<w|tau> = " + num(nw.tau_overlap) + ", max available overlap " + num(nw.max_available)});
        checks.push_back({"negative_witness_within_4m", nw.size <= 4 * m + 1e-9,
                          "size " + num(nw.size) + " vs 4m = " + num(4 * m)});
      } catch (const InvariantViolation& e) {
        checks.push_back({"negative_witness_valid", false, e.what()});
      }
    }
  }

  try {
    NormalizedProgram np = build_normalized_program(tp, default_w1(tree), 11.0, min_block_size(tp));
    WalkFactorization wf = assemble(np);
    checks.push_back({"factorization_identity", true,
                      "max |A^T B - V/sqrt(4n)| = " + num(wf.identity_dev) + ", n = " + std::to_string(np.n())});
  } catch (const InvariantViolation& e) {
    checks.push_back({"factorization_identity", false, e.what()});
  }
  return checks;
}

int cmd_verify(const std::string& bundle_path, const std::string& json_out, std::ostream& out) {
  Bundle b = bundle_from_json(read_json_file(bundle_path));
  Json measurements = Json::object();
  std::vector<Check> checks = verify_bundle(b, measurements);
  bool ok = all_pass(checks);
  print_checks(out, checks);
  out << (ok ? "all checks passed\n" : "some checks failed\n");
  emit(json_out, Json{{"command", "verify"},
                      {"inputs", Json{{"bundle", bundle_path}}},
                      {"label", label_name(b.instance.label)},
                      {"checks", checks_json(checks)},
                      {"measurements", measurements},
                      {"all_pass", ok}});
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// analyze-spectrum

int cmd_spectrum(const std::string& tree_path, const std::vector<int>& n_list, double C, const std::string& json_out,
                 const std::string& table_out, std::ostream& out) {
  RootedTree tree = tree_from_json(read_json_file(tree_path));
  if (n_list.size() < 2) throw FormatError("--n needs at least two block sizes");
  for (int n : n_list) {
    if (n < 2) throw FormatError("block sizes must be at least 2");
    NormalizedProgram np = normalized_skeleton(tree, n, C);
    long reduced = static_cast<long>(np.I().size() + np.J().size());
    if (reduced > kMaxDenseWalk)
      throw InstanceTooLarge("reduced dimension " + std::to_string(reduced) + " at n = " + std::to_string(n) +
                             " exceeds " + std::to_string(kMaxDenseWalk));
  }
  SpectralReport rep = spectral_report(tree, n_list, C);
  std::vector<Check> checks;
  checks.push_back({"factorization_identity", rep.max_identity_dev <= 1e-12, num(rep.max_identity_dev)});
  bool counts = true;
  double perr = 0.0;
  for (const auto& w : rep.walk) {
    counts = counts && w.counts_match();
    perr = std::max(perr, w.max_phase_error);
  }
  checks.push_back({"eigenvalue_classification", counts, "multiplicities of +1, -1 and pairs"});
  checks.push_back({"phases_match_singular_values", perr <= 1e-8, num(perr)});
  checks.push_back({"delta_structure_fit", rep.fit_residual <= 1e-10, num(rep.fit_residual)});
  checks.push_back({"delta_distinct_spectrum_constant", rep.distinct_sizes_match && rep.distinct_deviation <= 1e-8,
                    num(rep.distinct_deviation)});
  checks.push_back({"gap_positive", rep.min_gap > 1e-6, num(rep.min_gap)});
  bool ok = all_pass(checks);

  std::ostringstream table;
  table << "n\tdim\tdim_S\tgap\tdelta_smallest_nonzero\n";
  for (std::size_t q = 0; q < n_list.size(); ++q)
    table << n_list[q] << '\t' << rep.walk[q].dim << '\t' << rep.walk[q].dim_S << '\t'
          << std::setprecision(12) << rep.walk[q].gap << '\t' << rep.delta[q].smallest_nonzero << '\n';
  out << table.str();
  print_checks(out, checks);
  if (!table_out.empty()) {
    std::ofstream f(table_out);
    if (!f) throw FormatError("cannot write '" + table_out + "'");
    f << table.str();
  }
  Json inputs{{"tree", tree_path}, {"n", n_list}, {"C", C}};
  emit(json_out, Json{{"command", "analyze-spectrum"},
                      {"inputs", inputs},
                      {"checks", checks_json(checks)},
                      {"report", spectral_report_to_json(rep)},
                      {"all_pass", ok}});
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gen

int cmd_gen(const std::string& kind, const std::string& tree_path, int n, std::uint64_t seed, double noise,
            const std::string& json_out, std::ostream& out) {
  PromiseInstance inst;
  auto need_tree = [&] {
    if (tree_path.empty()) throw FormatError("gen " + kind + " needs --tree");
    return tree_from_json(read_json_file(tree_path));
  };
  if (kind == "positive") {
    RootedTree t = need_tree();
    inst = gen_positive(t, n > 0 ? n : t.size(), seed, noise);
  } else if (kind == "negative") {
    RootedTree t = need_tree();
    inst = gen_negative(t, n > 0 ? n : t.size(), seed);
  } else if (kind == "counterexample") {
    inst = gen_counterexample(seed);
  } else if (kind == "worked-example") {
    inst = worked_example();
  } else if (kind == "bad-vertex") {
    inst = bad_vertex_example();
  } else if (kind == "good-root") {
    inst = good_root_example();
  } else {
    throw FormatError("unknown instance kind '" + kind + "'");
  }
  Json b = bundle_to_json(inst);
  if (json_out.empty()) {
    out << b.dump(2) << '\n';
  } else {
    write_json_file(json_out, b);
    out << label_name(inst.label) << " instance written to " << json_out << '\n';
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Span-program tree detection toolkit"};
  app.require_subcommand(1);

  DetectArgs da;
  auto* detect = app.add_subcommand("detect", "Evaluate the tree program over random colorings");
  detect->add_option("--graph", da.graph, "Graph JSON");
  detect->add_option("--tree", da.tree, "Tree JSON");
  detect->add_option("--coloring", da.coloring, "Use this coloring instead of random ones");
  detect->add_option("--bundle", da.bundle, "Instance bundle (graph, tree and coloring)");
  detect->add_option("--trials", da.trials, "Number of random colorings (default 3k^k, at most 4096)");
  detect->add_option("--seed", da.seed, "Seed for the colorings");
  detect->add_option("--json-out", da.json_out, "Write the run report here");

  std::string bundle, json_out, tree_path, table_out, kind;
  std::vector<int> n_list;
  double C = 11.0, noise = 0.3;
  int n = 0;
  std::uint64_t seed = 0;

  auto* verify = app.add_subcommand("verify", "Replay every applicable invariant on an instance bundle");
  verify->add_option("--bundle", bundle, "Instance bundle")->required();
  verify->add_option("--json-out", json_out, "Write the run report here");

  auto* spectrum = app.add_subcommand("analyze-spectrum", "Spectral checks of the walk operator for a tree");
  spectrum->add_option("--tree", tree_path, "Tree JSON")->required();
  spectrum->add_option("--n", n_list, "Block sizes, comma separated")->delimiter(',')->required();
  spectrum->add_option("--C", C, "Constant in alpha = C sqrt(W1)");
  spectrum->add_option("--json-out", json_out, "Write the spectral report here");
  spectrum->add_option("--table-out", table_out, "Write the gap table here");

  auto* gen = app.add_subcommand("gen", "Generate an oracle-labeled instance bundle");
  gen->add_option("kind", kind, "positive | negative | counterexample | worked-example | bad-vertex | good-root")
      ->required();
  gen->add_option("--tree", tree_path, "Tree JSON (positive, negative)");
  gen->add_option("--n", n, "Number of graph vertices");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--noise", noise, "Noise edge probability (positive)");
  gen->add_option("--json-out", json_out, "Write the bundle here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*detect) return cmd_detect(da, out);
    if (*verify) return cmd_verify(bundle, json_out, out);
    if (*spectrum) return cmd_spectrum(tree_path, n_list, C, json_out, table_out, out);
    if (*gen) return cmd_gen(kind, tree_path, n, seed, noise, json_out, out);
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InstanceTooLarge& e) {
    err << "instance too large: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace treespan::cli
