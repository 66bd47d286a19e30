#include <doctest.h>

#include <stdexcept>

#include <set>

#include "treepack/coloring.hpp"

using namespace treepack;

namespace {

Graph cycle(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph::from_edge_list(n, es);
}

Graph complete(int n) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph::from_edge_list(n, es);
}

Graph petersen() {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(5 + i, 5 + (i + 2) % 5);
    es.emplace_back(i, 5 + i);
  }
  return Graph::from_edge_list(10, es);
}

bool proper(const Graph& g, const std::vector<int>& c) {
  for (const Edge& e : g.edges())
    if (c[e.u] == c[e.v]) return false;
  return true;
}

}  // namespace

TEST_CASE("chromatic number on known graphs") {
  CHECK(chromatic_number(complete(4)).chi == 4);
  CHECK(chromatic_number(cycle(5)).chi == 3);
  CHECK(chromatic_number(cycle(6)).chi == 2);
  CHECK(chromatic_number(petersen()).chi == 3);
  Graph k33 = Graph::from_edge_list(
      6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  CHECK(chromatic_number(k33).chi == 2);
}

TEST_CASE("chromatic witness is a proper coloring with chi colors") {
  Graph g = petersen();
  ChromaticResult r = chromatic_number(g);
  REQUIRE(static_cast<int>(r.witness.size()) == g.n());
  CHECK(proper(g, r.witness));
  std::set<int> used(r.witness.begin(), r.witness.end());
  CHECK(static_cast<int>(used.size()) == r.chi);
  CHECK_FALSE(r.timed_out);
}

TEST_CASE("critical subgraph extraction") {
  // C_5 with a pendant vertex: the 3-chromatic core is the odd cycle
  Graph g = Graph::from_edge_list(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}});
  CriticalSubgraph c = critical_subgraph(g, 3);
  CHECK(c.graph.n() == 5);
  CHECK(c.graph.m() == 5);
  CHECK(c.graph.min_degree() >= 2);
  CHECK(proper(c.graph, c.witness));
  for (int v : c.new_to_old) CHECK(v != 5);
  CHECK_THROWS_AS(critical_subgraph(complete(4), 3), std::invalid_argument);
}

TEST_CASE("grundy refinement produces a greedy-tight coloring") {
  Graph g = petersen();
  ChromaticResult r = chromatic_number(g);
  OrderedColoring oc = grundy_refine(g, r.witness);
  CHECK(check_grundy(g, oc));
  int total = 0;
  for (const auto& cls : oc.classes) total += static_cast<int>(cls.size());
  CHECK(total == g.n());

  // feeding a non-proper coloring is rejected
  std::vector<int> bad(g.n(), 0);
  CHECK_THROWS_AS(grundy_refine(g, bad), std::invalid_argument);
}

TEST_CASE("grundy refinement tolerates label gaps") {
  Graph g = cycle(5);
  std::vector<int> sparse{0, 7, 0, 7, 3};  // proper, labels 0,3,7
  OrderedColoring oc = grundy_refine(g, sparse);
  CHECK(check_grundy(g, oc));
  CHECK(oc.k() == 3);
}

TEST_CASE("peel tail keeps the top classes and their labels") {
  Graph g = complete(4);
  OrderedColoring oc = grundy_refine(g, {0, 1, 2, 3});
  PeeledTail t = peel_tail(g, oc, 2);
  CHECK(t.graph.n() == 2);
  CHECK(t.graph.m() == 1);
  CHECK(t.coloring.k() == 2);
  CHECK(check_grundy(t.graph, t.coloring));
  for (int v = 0; v < t.graph.n(); ++v) CHECK(t.old_to_new[t.new_to_old[v]] == v);
  // the two kept vertices are the ones from the top classes
  std::set<int> kept(t.new_to_old.begin(), t.new_to_old.end());
  std::set<int> expect(oc.classes[2].begin(), oc.classes[2].end());
  expect.insert(oc.classes[3].begin(), oc.classes[3].end());
  CHECK(kept == expect);
}

TEST_CASE("check_grundy rejects malformed partitions") {
  Graph g = cycle(4);
  OrderedColoring oc;
  oc.classes = {{0, 1}, {2}};  // vertex 3 missing
  CHECK_THROWS(check_grundy(g, oc));
}

TEST_CASE("ordered coloring json roundtrip") {
  Graph g = cycle(5);
  OrderedColoring oc = grundy_refine(g, chromatic_number(g).witness);
  OrderedColoring back = coloring_from_json(coloring_to_json(oc));
  CHECK(back.classes == oc.classes);
}
