#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "treespan/coloring.hpp"
#include "treespan/graph_core.hpp"
#include "treespan/instance_lab.hpp"
#include "treespan/minor_structure.hpp"
#include "treespan/span_program.hpp"
#include "treespan/tree_program.hpp"
#include "treespan/walk_simulator.hpp"

namespace treespan {

/// Insertion-ordered so that reports serialize byte-identically.
using Json = nlohmann::ordered_json;

// Readers throw FormatError on malformed or inconsistent documents.

/// {"nodes": k, "root": r, "edges": [[p, c], ...]}
Json tree_to_json(const RootedTree& t);
RootedTree tree_from_json(const Json& j);

/// {"n": n, "edges": [[u, v], ...]}
Json graph_to_json(const InputGraph& g);
InputGraph graph_from_json(const Json& j);

/// {"seed": k, "colors": [c0, c1, ...]}
Json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);

/// {"graph", "tree", "coloring", "label", "provenance", "kept_edges"}.
/// kept_edges is optional on input; when present it is returned separately
/// so verification can compare it with the recomputed G_c.
Json bundle_to_json(const PromiseInstance& inst);
struct Bundle {
  PromiseInstance instance;
  bool has_kept_edges = false;
  std::vector<Edge> kept_edges;
};
Bundle bundle_from_json(const Json& j);

/// Dense dump: target, input columns, labels, free index set.
Json span_program_to_json(const SpanProgram& p);
SpanProgram span_program_from_json(const Json& j);

/// Span-program dump of as_span_program() plus the I and J index lists and
/// the kind of every column. Sentinels appear as "s" and "t".
Json normalized_program_to_json(const NormalizedProgram& np);

/// W, V_{a,l}, V_{a,b,l} (the latter keyed by the child b) and the
/// per-condition table.
Json decomposition_to_json(const MinorDecomposition& dec, const ConditionReport& report);

Json spectral_report_to_json(const SpectralReport& rep);

/// Throws FormatError on unreadable files or invalid JSON.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace treespan
