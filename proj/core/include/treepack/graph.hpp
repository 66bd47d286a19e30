#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace treepack {

// Unordered pair with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Simple undirected graph on dense 0-based vertex ids. Immutable after
// construction; edge list kept sorted, per-vertex neighbor lists sorted.
class Graph {
 public:
  Graph() = default;

  // Normalizes orientation, sorts, deduplicates. Rejects loops and
  // out-of-range endpoints.
  static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  bool has_edge(int u, int v) const;

  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  std::vector<int> degrees() const;
  // 0 on a graph with no vertices.
  int min_degree() const;
  long long degree_sum() const { return 2LL * m(); }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

struct InducedSubgraph {
  Graph graph;
  std::vector<int> old_to_new;  // -1 for dropped vertices
  std::vector<int> new_to_old;  // order-preserving
};

// keep may be unsorted; duplicates rejected.
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& keep);

// Text format: "n m" then one "u v" line per edge, sorted. Bit-exact
// round-trip for normalized graphs.
std::string to_text(const Graph& g);
Graph from_text(const std::string& text);

}  // namespace treepack
