#include <benchmark/benchmark.h>

#include "treepack/constructive.hpp"
#include "treepack/hosts.hpp"
#include "treepack/search.hpp"

using namespace treepack;

static void BM_enumerate_trees(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto trees = enumerate_free_trees(n);
    benchmark::DoNotOptimize(trees);
  }
}
BENCHMARK(BM_enumerate_trees)->Arg(8)->Arg(10);

static void BM_canonical_form(benchmark::State& state) {
  auto trees = enumerate_free_trees(10);
  for (auto _ : state)
    for (const Tree& t : trees) {
      auto s = canonical_form(t);
      benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_canonical_form);

static void BM_chromatic_mycielski(benchmark::State& state) {
  Graph g = mycielski(mycielski(mycielski(complete_graph(2))));
  for (auto _ : state) {
    auto r = chromatic_number(g);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_chromatic_mycielski);

static void BM_grundy_refine(benchmark::State& state) {
  Host h = mycielski_host(5);
  for (auto _ : state) {
    auto c = grundy_refine(h.graph, h.witness);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_grundy_refine);

static void BM_search_complete(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  Graph g = complete_graph(k);
  TreeFamily family = family_at(k, family_space_size(k) - 1);
  for (auto _ : state) {
    auto r = pack_exhaustive(g, family);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_search_complete)->Arg(5)->Arg(6);

static void BM_constructive_complete(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  Graph g = complete_graph(k);
  // index 0 is the all-paths family, out of scope for k >= 7; the last index
  // is all stars and stays in scope at every k
  TreeFamily family = family_at(k, k >= 7 ? family_space_size(k) - 1 : 0);
  for (auto _ : state) {
    auto r = pack_constructive(g, family);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_constructive_complete)->Arg(6)->Arg(7);

BENCHMARK_MAIN();
