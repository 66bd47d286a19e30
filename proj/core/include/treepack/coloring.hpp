#pragma once

#include <string>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

// Ordered color classes A_1..A_k. The interesting case carries the Grundy
// property: every x in A_i has a neighbor in each A_j, j < i.
struct OrderedColoring {
  std::vector<std::vector<int>> classes;  // each sorted

  int k() const { return static_cast<int>(classes.size()); }
};

struct ChromaticResult {
  int chi = 0;
  std::vector<int> witness;  // vertex -> class 0..chi-1, valid iff !timed_out
  bool timed_out = false;
  unsigned long long nodes = 0;
};

// Exact branch and bound (saturation order, clique lower bound, greedy upper
// bound). Deterministic. Budget exhaustion reports timed_out, never a wrong
// number.
ChromaticResult chromatic_number(const Graph& g, unsigned long long node_budget = 50'000'000ULL);

struct CriticalSubgraph {
  Graph graph;
  std::vector<int> new_to_old;
  std::vector<int> witness;  // proper k-coloring of graph
};

// Induced subgraph H with chi(H) = k and chi(H - v) < k for every v; hence
// min degree >= k-1. Rejects inputs with chi(g) != k. Throws on budget
// exhaustion.
CriticalSubgraph critical_subgraph(const Graph& g, int k,
                                   unsigned long long node_budget = 50'000'000ULL);

// Repeatedly moves any vertex missing a neighbor in some lower class down to
// the smallest feasible class (ascending vertex id), dropping emptied
// classes. Terminates: the class-index sum strictly decreases. Result always
// satisfies check_grundy.
OrderedColoring grundy_refine(const Graph& g, const std::vector<int>& proper);

// True iff c partitions V(g) into independent sets with the Grundy property.
// Non-partition input is a structural error (throws), distinct from false.
bool check_grundy(const Graph& g, const OrderedColoring& c);

struct PeeledTail {
  Graph graph;
  OrderedColoring coloring;  // classes reindexed 1..i
  std::vector<int> new_to_old;
  std::vector<int> old_to_new;
};

// Induced subgraph on the top i classes A_{k-i+1}..A_k. The reindexed
// coloring keeps the Grundy property.
PeeledTail peel_tail(const Graph& g, const OrderedColoring& c, int i);

// {"classes": [[v,...], ...]} in order A_1..A_k.
std::string coloring_to_json(const OrderedColoring& c);
OrderedColoring coloring_from_json(const std::string& text);

}  // namespace treepack
