#include <doctest.h>

#include <stdexcept>

#include "treepack/graph.hpp"

using namespace treepack;

TEST_CASE("edge normalization and ordering") {
  Edge e = make_edge(4, 1);
  CHECK(e.u == 1);
  CHECK(e.v == 4);
  CHECK(make_edge(1, 4) == e);
  CHECK(make_edge(0, 1) < make_edge(0, 2));
  CHECK(make_edge(0, 5) < make_edge(1, 2));
}

TEST_CASE("graph construction validates input") {
  CHECK_THROWS_AS(Graph::from_edge_list(3, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edge_list(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edge_list(3, {{-1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph::from_edge_list(-1, {}), std::invalid_argument);
  // duplicates collapse instead of erroring
  Graph g = Graph::from_edge_list(3, {{0, 1}, {1, 0}});
  CHECK(g.m() == 1);
}

TEST_CASE("degrees and neighbor lists") {
  Graph g = Graph::from_edge_list(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
  CHECK(g.n() == 5);
  CHECK(g.m() == 4);
  CHECK(g.degree(0) == 3);
  CHECK(g.degree(4) == 0);
  CHECK(g.min_degree() == 0);
  CHECK(g.degree_sum() == 8);
  CHECK(g.neighbors(0) == std::vector<int>{1, 2, 3});
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(3, 4));
  CHECK(g.degrees() == std::vector<int>{3, 2, 2, 1, 0});
}

TEST_CASE("induced subgraph keeps labels consistent") {
  Graph g = Graph::from_edge_list(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  InducedSubgraph s = induced_subgraph(g, {1, 2, 4, 5});
  CHECK(s.graph.n() == 4);
  CHECK(s.graph.m() == 2);  // edges 1-2 and 4-5 survive
  CHECK(s.new_to_old.size() == 4);
  for (int v = 0; v < 4; ++v) CHECK(s.old_to_new[s.new_to_old[v]] == v);
  CHECK(s.old_to_new[0] == -1);
  CHECK(s.old_to_new[3] == -1);
  int a = s.old_to_new[1], b = s.old_to_new[2];
  CHECK(s.graph.has_edge(a, b));
  CHECK_THROWS_AS(induced_subgraph(g, {1, 1}), std::invalid_argument);
}

TEST_CASE("text roundtrip") {
  Graph g = Graph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}});
  Graph h = from_text(to_text(g));
  CHECK(h.n() == g.n());
  CHECK(h.edges() == g.edges());
  CHECK_THROWS(from_text("not a graph"));
}
