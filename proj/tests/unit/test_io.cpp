#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "treespan/errors.hpp"
#include "treespan/instance_lab.hpp"
#include "treespan/io.hpp"

using namespace treespan;

TEST(Io, TreeGraphColoringRoundTrip) {
  RootedTree t = good_root_tree();
  RootedTree t2 = tree_from_json(tree_to_json(t));
  EXPECT_EQ(t2.edges(), t.edges());
  EXPECT_EQ(t2.root(), t.root());
  PromiseInstance inst = worked_example();
  EXPECT_EQ(graph_from_json(graph_to_json(inst.graph)).edges(), inst.graph.edges());
  Coloring c = coloring_from_json(coloring_to_json(inst.coloring));
  EXPECT_EQ(c.colors, inst.coloring.colors);
  EXPECT_EQ(c.seed, inst.coloring.seed);
}

TEST(Io, BundleRoundTripKeepsEverything) {
  PromiseInstance inst = bad_vertex_example();
  Json j = bundle_to_json(inst);
  Bundle b = bundle_from_json(j);
  EXPECT_EQ(b.instance.label, Label::Negative);
  EXPECT_EQ(b.instance.provenance.generator, "bad_vertex_example");
  EXPECT_TRUE(b.has_kept_edges);
  EXPECT_EQ(b.kept_edges, inst.colored().kept_edges());
  EXPECT_EQ(bundle_to_json(b.instance).dump(), j.dump());
}

TEST(Io, MalformedDocumentsAreFormatErrors) {
  EXPECT_THROW(tree_from_json(Json::parse(R"({"nodes": 3, "root": 0})")), FormatError);
  EXPECT_THROW(tree_from_json(Json::parse(R"({"nodes": 3, "root": 0, "edges": [[0,1]]})")), FormatError);
  EXPECT_THROW(graph_from_json(Json::parse(R"({"n": 2, "edges": [[0,0]]})")), FormatError);
  EXPECT_THROW(graph_from_json(Json::parse(R"({"n": "2", "edges": []})")), FormatError);
  EXPECT_THROW(graph_from_json(Json::parse(R"([1,2])")), FormatError);
  Json b = bundle_to_json(worked_example());
  b["label"] = "PROBABLY";
  EXPECT_THROW(bundle_from_json(b), FormatError);
  b = bundle_to_json(worked_example());
  b["coloring"]["colors"].push_back(0);
  EXPECT_THROW(bundle_from_json(b), FormatError);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), FormatError);
}

TEST(Io, SpanProgramRoundTrip) {
  PromiseInstance inst = worked_example();
  TreeProgram tp = build_tree_program(inst.tree, inst.colored());
  Json j = span_program_to_json(tp.program());
  SpanProgram p = span_program_from_json(j);
  EXPECT_EQ(p.inputs(), tp.program().inputs());
  EXPECT_EQ(p.target(), tp.program().target());
  EXPECT_EQ(p.free_indices(), tp.program().free_indices());
  EXPECT_EQ(span_program_to_json(p).dump(), j.dump());
}

TEST(Io, NormalizedProgramDumpNamesSentinels) {
  PromiseInstance inst = worked_example();
  TreeProgram tp = build_tree_program(inst.tree, inst.colored());
  NormalizedProgram np = build_normalized_program(tp, default_w1(inst.tree), 11.0, 2);
  Json j = normalized_program_to_json(np);
  EXPECT_EQ(j["I"].size(), np.I().size());
  EXPECT_EQ(j["J"][np.tau_index()][0], "s");
  EXPECT_EQ(j["J"][np.tau_index()][2], "t");
  EXPECT_EQ(j["column_kinds"][np.tau_index()], "target");
  EXPECT_EQ(j["column_kinds"][np.gamma_index()], "gamma");
}

TEST(Io, FileRoundTrip) {
  auto path = std::filesystem::temp_directory_path() / "treespan_io_roundtrip.json";
  Json j = bundle_to_json(worked_example());
  write_json_file(path.string(), j);
  EXPECT_EQ(read_json_file(path.string()), j);
  std::filesystem::remove(path);
}
