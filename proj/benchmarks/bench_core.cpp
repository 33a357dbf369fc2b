#include <benchmark/benchmark.h>

#include "treespan/instance_lab.hpp"
#include "treespan/minor_structure.hpp"
#include "treespan/tree_program.hpp"
#include "treespan/walk_simulator.hpp"

using namespace treespan;

namespace {

PromiseInstance planted(int n) { return gen_positive(binary7(), n, 1); }

}  // namespace

static void BM_Evaluate(benchmark::State& state) {
  PromiseInstance inst = planted(static_cast<int>(state.range(0)));
  TreeProgram tp = build_tree_program(inst.tree, inst.colored());
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(tp.program(), tp.availability()));
}
BENCHMARK(BM_Evaluate)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_MinorOracle(benchmark::State& state) {
  PromiseInstance inst = gen_negative(RootedTree::star(3), static_cast<int>(state.range(0)), 3);
  ColoredGraph cg = inst.colored();
  for (auto _ : state) benchmark::DoNotOptimize(minor_oracle(cg, inst.tree));
}
BENCHMARK(BM_MinorOracle)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_Decompose(benchmark::State& state) {
  PromiseInstance inst = bad_vertex_example();
  ColoredGraph cg = inst.colored();
  for (auto _ : state) benchmark::DoNotOptimize(decompose(cg, inst.tree));
}
BENCHMARK(BM_Decompose)->Unit(benchmark::kMillisecond);

static void BM_Assemble(benchmark::State& state) {
  NormalizedProgram np = normalized_skeleton(binary7(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(np));
}
BENCHMARK(BM_Assemble)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_WalkSpectrum(benchmark::State& state) {
  WalkFactorization wf = assemble(normalized_skeleton(RootedTree::star(3), static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(walk_spectrum(wf));
}
BENCHMARK(BM_WalkSpectrum)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Circuits(benchmark::State& state) {
  NormalizedProgram np = normalized_skeleton(RootedTree::star(3), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_circuits(np));
}
BENCHMARK(BM_Circuits)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
