#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treepack/graph.hpp"
#include "treepack/packing.hpp"
#include "treepack/trees.hpp"

namespace treepack {

// Layered low-degree vertex sets avoided by levelwise embedding. B_1 holds
// the vertices of degree < k-1; B_i (i >= 2) the neighbors of earlier layers
// with < k-1 neighbors outside those layers.
struct BSets {
  std::vector<std::vector<int>> layers;  // B_1..B_k, each sorted

  std::vector<int> all() const;  // sorted union
  int total() const;
};

BSets compute_b_sets(const Graph& gp, int k);

struct LevelwiseOutcome {
  std::vector<int> image;  // tree vertex -> host vertex, valid iff ok
  bool ok = false;
  int failed_level = -1;
};

// Root outside every layer, level-j vertices outside B_1..B_{k-j}. Greedy by
// ascending id; guaranteed when |V(t)| <= k and the host kept min degree
// >= k-1 before at most C(k,2) edge removals. |V(t)| > k is rejected.
LevelwiseOutcome embed_tree_levelwise(const Graph& gp, const Tree& t, const BSets& b, int k);

struct DegreePackResult {
  Packing packing;
  bool ok = false;
  std::string failure;  // names the starving tree order and level
};

// Packs T_k..T_2 in descending order, recomputing B-sets on the residual
// after each removal. Requires min degree >= k-1 and n >= k.
DegreePackResult pack_min_degree(const Graph& g, const TreeFamily& family);

// Exact degree threshold num/den.
struct Ratio {
  long long num = 0;
  long long den = 1;
};

struct PeelTrace {
  Graph graph;
  std::vector<int> new_to_old;
  // (degree sum, vertex count) before round 1 and after every round.
  std::vector<std::pair<long long, long long>> rounds;
};

// Batch-removes vertices of degree < threshold until none remain. The
// recorded rounds let callers assert the average-degree monotonicity that
// holds whenever the running average stays >= 2*threshold.
PeelTrace peel(const Graph& g, Ratio threshold);

struct AvgDegreeOptions {
  // Try the greedy unpeeled embedding chain first, fall back to the standard
  // peel-embed rounds per tree.
  bool erdos_sos_chain = false;
};

struct AvgDegreeResult {
  Packing packing;
  bool ok = false;
  std::string failure;
  // Residual (degree sum, vertex count) after each tree removal, for the
  // (k-2)/2 * n bound assertions.
  std::vector<std::pair<long long, long long>> residuals;
};

// Packs T_s..T_2 (family.k() == s) with the peel-embed-recurse rounds.
// Preconditions: 2s <= k, 2m >= (k-1)n, k <= n.
AvgDegreeResult pack_avg_degree(const Graph& g, const TreeFamily& family, int k,
                                const AvgDegreeOptions& opt = {});

}  // namespace treepack
