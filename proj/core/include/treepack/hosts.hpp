#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

// A generated host with its chromatic provenance. cert is "exact" when chi
// was certified by the exact solver at generation time, "construction" when
// it follows from how the graph was built (e.g. one Mycielski step adds one
// to chi). witness is always a proper coloring with chi classes.
struct Host {
  Graph graph;
  std::string name;
  int chi = 0;
  std::vector<int> witness;
  std::string cert;
};

Graph complete_graph(int n);
Host complete_host(int n);

// One Mycielski step: V + twin set U + apex w. Triangle-free inputs stay
// triangle-free; chi rises by exactly one; min degree rises by one.
Graph mycielski(const Graph& g);

// Tower member M_k (chi = k): M_2 = K_2, M_3 = C_5, M_4 = Grötzsch, ...
// Supported: 2 <= k <= 7. Bases up to M_5 are exactly certified, larger
// members carry construction provenance.
Host mycielski_host(int k);

// Uniform m-subset of all pairs. Deterministic in (n, m, seed).
Graph random_gnm(int n, long long m, std::uint64_t seed);

// Random graph patched until min degree >= dmin. Deterministic.
Graph random_min_degree(int n, int dmin, std::uint64_t seed);

}  // namespace treepack
