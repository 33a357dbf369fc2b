#include "treespan/io.hpp"

#include <fstream>
#include <sstream>

#include "treespan/errors.hpp"

namespace treespan {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<Edge> edge_list(const Json& j) {
  if (!j.is_array()) throw FormatError("'edges' must be an array");
  std::vector<Edge> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw FormatError("each edge must be a pair");
    out.emplace_back(as_int(e[0], "edge endpoint"), as_int(e[1], "edge endpoint"));
  }
  return out;
}

Json edges_json(const std::vector<Edge>& edges) {
  Json a = Json::array();
  for (auto [u, v] : edges) a.push_back({u, v});
  return a;
}

Json node_json(int x) {
  if (x == kSource) return "s";
  if (x == kSink) return "t";
  return x;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

const char* kind_name(ColumnKind k) {
  switch (k) {
    case ColumnKind::Target: return "target";
    case ColumnKind::Gamma: return "gamma";
    case ColumnKind::Free: return "free";
    case ColumnKind::Candidate: return "candidate";
    case ColumnKind::Dummy: return "dummy";
  }
  return "?";
}

template <class F>
auto rethrow_as_format(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

Json tree_to_json(const RootedTree& t) {
  return Json{{"nodes", t.size()}, {"root", t.root()}, {"edges", edges_json(t.edges())}};
}

RootedTree tree_from_json(const Json& j) {
  int nodes = as_int(field(j, "nodes"), "'nodes'");
  int root = as_int(field(j, "root"), "'root'");
  auto edges = edge_list(field(j, "edges"));
  return rethrow_as_format([&] { return RootedTree(nodes, root, edges); });
}

Json graph_to_json(const InputGraph& g) { return Json{{"n", g.size()}, {"edges", edges_json(g.edges())}}; }

InputGraph graph_from_json(const Json& j) {
  int n = as_int(field(j, "n"), "'n'");
  if (n < 0) throw FormatError("'n' must be non-negative");
  auto edges = edge_list(field(j, "edges"));
  return rethrow_as_format([&] { return InputGraph(n, edges); });
}

Json coloring_to_json(const Coloring& c) { return Json{{"seed", c.seed}, {"colors", c.colors}}; }

Coloring coloring_from_json(const Json& j) {
  Coloring c;
  const Json& seed = field(j, "seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) throw FormatError("'seed' must be an integer");
  c.seed = seed.get<std::uint64_t>();
  const Json& colors = field(j, "colors");
  if (!colors.is_array()) throw FormatError("'colors' must be an array");
  for (const auto& x : colors) c.colors.push_back(as_int(x, "color"));
  return c;
}

Json bundle_to_json(const PromiseInstance& inst) {
  Json j;
  j["graph"] = graph_to_json(inst.graph);
  j["tree"] = tree_to_json(inst.tree);
  j["coloring"] = coloring_to_json(inst.coloring);
  j["label"] = label_name(inst.label);
  j["provenance"] = Json{{"generator", inst.provenance.generator}, {"seed", inst.provenance.seed}};
  j["kept_edges"] = edges_json(inst.colored().kept_edges());
  return j;
}

Bundle bundle_from_json(const Json& j) {
  Bundle b;
  b.instance.graph = graph_from_json(field(j, "graph"));
  b.instance.tree = tree_from_json(field(j, "tree"));
  b.instance.coloring = coloring_from_json(field(j, "coloring"));
  const Json& label = field(j, "label");
  if (!label.is_string()) throw FormatError("'label' must be a string");
  b.instance.label = rethrow_as_format([&] { return parse_label(label.get<std::string>()); });
  if (j.contains("provenance")) {
    const Json& p = j["provenance"];
    if (p.contains("generator") && p["generator"].is_string())
      b.instance.provenance.generator = p["generator"].get<std::string>();
    if (p.contains("seed") && p["seed"].is_number_integer())
      b.instance.provenance.seed = p["seed"].get<std::uint64_t>();
  }
  if (j.contains("kept_edges")) {
    b.has_kept_edges = true;
    b.kept_edges = edge_list(j["kept_edges"]);
  }
  // shape checks; the coloring constructor validates ranges
  rethrow_as_format([&] { return b.instance.colored().size(); });
  return b;
}

Json span_program_to_json(const SpanProgram& p) {
  Json j;
  j["dimension"] = p.dimension();
  j["num_variables"] = p.num_variables();
  j["target"] = vector_json(p.target());
  Json cols = Json::array();
  for (int c = 0; c < p.num_inputs(); ++c) cols.push_back(vector_json(p.inputs().col(c)));
  j["inputs"] = cols;
  Json labels = Json::array();
  for (const auto& l : p.labels())
    labels.push_back(l.is_free() ? Json(nullptr) : Json{{"variable", l.variable}, {"value", l.value}});
  j["labels"] = labels;
  j["free"] = p.free_indices();
  return j;
}

SpanProgram span_program_from_json(const Json& j) {
  int d = as_int(field(j, "dimension"), "'dimension'");
  int nv = as_int(field(j, "num_variables"), "'num_variables'");
  const Json& target = field(j, "target");
  const Json& inputs = field(j, "inputs");
  const Json& labels = field(j, "labels");
  if (!target.is_array() || static_cast<int>(target.size()) != d) throw FormatError("target length mismatch");
  if (!inputs.is_array() || !labels.is_array() || inputs.size() != labels.size())
    throw FormatError("inputs and labels must be arrays of equal length");
  Eigen::VectorXd tau(d);
  for (int i = 0; i < d; ++i) tau[i] = target[i].get<double>();
  Eigen::MatrixXd a(d, static_cast<Eigen::Index>(inputs.size()));
  std::vector<InputLabel> ls;
  for (std::size_t c = 0; c < inputs.size(); ++c) {
    if (!inputs[c].is_array() || static_cast<int>(inputs[c].size()) != d)
      throw FormatError("input column length mismatch");
    for (int i = 0; i < d; ++i) a(i, static_cast<Eigen::Index>(c)) = inputs[c][i].get<double>();
    if (labels[c].is_null()) {
      ls.push_back({});
    } else {
      ls.push_back({as_int(field(labels[c], "variable"), "variable"), field(labels[c], "value").get<bool>()});
    }
  }
  return rethrow_as_format([&] { return SpanProgram(tau, a, ls, nv); });
}

Json normalized_program_to_json(const NormalizedProgram& np) {
  Json j = span_program_to_json(np.as_span_program());
  j["n"] = np.n();
  j["alpha"] = np.alpha();
  j["C"] = np.C();
  j["W1"] = np.w1();
  Json I = Json::array();
  for (const auto& i : np.I()) I.push_back({node_json(i.x), i.k, i.f});
  Json J = Json::array(), kinds = Json::array();
  for (std::size_t c = 0; c < np.J().size(); ++c) {
    const auto& q = np.J()[c];
    J.push_back({node_json(q.x1), q.k1, node_json(q.x2), q.k2});
    kinds.push_back(kind_name(np.kind(static_cast<int>(c))));
  }
  j["I"] = I;
  j["J"] = J;
  j["column_kinds"] = kinds;
  j["tau_index"] = np.tau_index();
  j["gamma_index"] = np.gamma_index();
  return j;
}

Json decomposition_to_json(const MinorDecomposition& dec, const ConditionReport& report) {
  Json j;
  j["root"] = dec.root;
  j["L"] = dec.L;
  j["W"] = dec.W;
  Json labels = Json::array();
  for (int l = 0; l < dec.L; ++l) {
    Json va = Json::object(), vab = Json::object();
    for (std::size_t a = 0; a < dec.V_al[l].size(); ++a)
      if (!dec.V_al[l][a].empty()) va[std::to_string(a)] = dec.V_al[l][a];
    for (std::size_t b = 0; b < dec.V_abl[l].size(); ++b)
      if (!dec.V_abl[l][b].empty()) vab[std::to_string(b)] = dec.V_abl[l][b];
    labels.push_back(Json{{"V_a", va}, {"V_ab_by_child", vab}});
  }
  j["labels"] = labels;
  Json conds = Json::array();
  for (int c = 0; c < 6; ++c)
    conds.push_back(Json{{"condition", c + 1}, {"pass", report.pass[c]}, {"detail", report.detail[c]}});
  j["conditions"] = conds;
  return j;
}

Json spectral_report_to_json(const SpectralReport& rep) {
  Json j;
  j["n_list"] = rep.n_list;
  Json per = Json::array();
  for (std::size_t q = 0; q < rep.n_list.size(); ++q) {
    const WalkSpectrum& w = rep.walk[q];
    const DeltaSpectrum& d = rep.delta[q];
    per.push_back(Json{{"n", rep.n_list[q]},
                       {"dim", w.dim},
                       {"dim_S", w.dim_S},
                       {"gap", w.gap},
                       {"max_phase_error", w.max_phase_error},
                       {"mult_plus", w.mult_plus},
                       {"mult_minus", w.mult_minus},
                       {"mult_pairs", w.mult_pairs},
                       {"pred_plus", w.pred_plus},
                       {"pred_minus", w.pred_minus},
                       {"pred_pairs", w.pred_pairs},
                       {"counts_match", w.counts_match()},
                       {"singular_values", w.singular_values},
                       {"delta_distinct", d.distinct},
                       {"delta_smallest_nonzero", d.smallest_nonzero},
                       {"delta_form_residual", d.form_residual}});
  }
  j["per_n"] = per;
  j["fit_residual"] = rep.fit_residual;
  j["distinct_deviation"] = rep.distinct_deviation;
  j["distinct_sizes_match"] = rep.distinct_sizes_match;
  j["theory_deviation"] = rep.theory_deviation;
  j["min_gap"] = rep.min_gap;
  j["max_identity_dev"] = rep.max_identity_dev;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("invalid JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace treespan
