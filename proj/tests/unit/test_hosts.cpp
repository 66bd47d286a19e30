#include <doctest.h>

#include <stdexcept>

#include <set>

#include "treepack/coloring.hpp"
#include "treepack/hosts.hpp"

using namespace treepack;

namespace {

bool proper(const Graph& g, const std::vector<int>& c) {
  for (const Edge& e : g.edges())
    if (c[e.u] == c[e.v]) return false;
  return true;
}

bool triangle_free(const Graph& g) {
  for (const Edge& e : g.edges())
    for (int w : g.neighbors(e.u))
      if (w != e.v && g.has_edge(w, e.v)) return false;
  return true;
}

}  // namespace

TEST_CASE("complete graph and host") {
  Graph k5 = complete_graph(5);
  CHECK(k5.n() == 5);
  CHECK(k5.m() == 10);
  CHECK(k5.min_degree() == 4);
  Host h = complete_host(5);
  CHECK(h.chi == 5);
  CHECK(h.cert == "construction");  // chi = n needs no solver
  CHECK(proper(h.graph, h.witness));
}

TEST_CASE("one mycielski step doubles and adds one") {
  Graph c5 = Graph::from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  Graph g = mycielski(c5);
  CHECK(g.n() == 11);
  CHECK(g.m() == 3 * c5.m() + c5.n());  // 20
  CHECK(triangle_free(g));              // preserved from C_5
  CHECK(chromatic_number(g).chi == 4);
}

TEST_CASE("mycielski tower sizes and certificates") {
  const int sizes[] = {2, 5, 11, 23, 47};
  for (int k = 2; k <= 6; ++k) {
    Host h = mycielski_host(k);
    CHECK(h.graph.n() == sizes[k - 2]);
    CHECK(h.chi == k);
    CHECK(proper(h.graph, h.witness));
    std::set<int> used(h.witness.begin(), h.witness.end());
    CHECK(static_cast<int>(used.size()) == k);
    if (h.graph.n() <= 24)
      CHECK(h.cert == "exact");
    else
      CHECK(h.cert == "construction");
    CHECK(triangle_free(h.graph));  // the whole tower grows from a single edge
  }
  CHECK(mycielski_host(2).cert == "exact");
  CHECK_THROWS_AS(mycielski_host(1), std::invalid_argument);
  CHECK_THROWS_AS(mycielski_host(8), std::invalid_argument);
}

TEST_CASE("seeded random graphs are deterministic") {
  Graph a = random_gnm(12, 30, 7);
  Graph b = random_gnm(12, 30, 7);
  CHECK(a.edges() == b.edges());
  CHECK(a.n() == 12);
  CHECK(a.m() == 30);
  Graph c = random_gnm(12, 30, 8);
  CHECK(a.edges() != c.edges());
  CHECK_THROWS_AS(random_gnm(4, 7, 0), std::invalid_argument);  // more than C(4,2)
}

TEST_CASE("random graphs with a degree floor") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    Graph g = random_min_degree(15, 4, seed);
    CHECK(g.n() == 15);
    CHECK(g.min_degree() >= 4);
  }
  Graph a = random_min_degree(15, 4, 3);
  Graph b = random_min_degree(15, 4, 3);
  CHECK(a.edges() == b.edges());
}
