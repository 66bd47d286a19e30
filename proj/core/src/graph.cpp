#include "treepack/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace treepack {

Graph Graph::from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  std::vector<Edge> es;
  es.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a == b)
      throw std::invalid_argument("self-loop (" + std::to_string(a) + "," + std::to_string(b) + ")");
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("endpoint out of range (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") with n=" + std::to_string(n));
    es.push_back(make_edge(a, b));
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(es);
  g.adj_.assign(n, {});
  for (const Edge& e : g.edges_) {
    g.adj_[e.u].push_back(e.v);
    g.adj_[e.v].push_back(e.u);
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  return g;
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  Edge e = make_edge(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n_);
  for (int v = 0; v < n_; ++v) d[v] = degree(v);
  return d;
}

int Graph::min_degree() const {
  if (n_ == 0) return 0;
  int best = degree(0);
  for (int v = 1; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate vertex in keep set");
  for (int v : sorted)
    if (v < 0 || v >= g.n()) throw std::invalid_argument("keep vertex out of range");

  InducedSubgraph out;
  out.old_to_new.assign(g.n(), -1);
  out.new_to_old = sorted;
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) out.old_to_new[sorted[i]] = i;

  std::vector<std::pair<int, int>> pairs;
  for (const Edge& e : g.edges()) {
    int a = out.old_to_new[e.u], b = out.old_to_new[e.v];
    if (a >= 0 && b >= 0) pairs.emplace_back(a, b);
  }
  out.graph = Graph::from_edge_list(static_cast<int>(sorted.size()), pairs);
  return out;
}

std::string to_text(const Graph& g) {
  std::ostringstream os;
  os << g.n() << ' ' << g.m() << '\n';
  for (const Edge& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

Graph from_text(const std::string& text) {
  std::istringstream is(text);
  int n = 0, m = 0;
  if (!(is >> n >> m)) throw std::invalid_argument("bad header, expected \"n m\"");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(m);
  for (int i = 0; i < m; ++i) {
    int a = 0, b = 0;
    if (!(is >> a >> b))
      throw std::invalid_argument("truncated edge list at line " + std::to_string(i + 2));
    pairs.emplace_back(a, b);
  }
  return Graph::from_edge_list(n, pairs);
}

}  // namespace treepack
