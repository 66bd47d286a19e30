#include "treepack/hosts.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "treepack/coloring.hpp"

namespace treepack {

namespace {

// Fisher-Yates with plain modulo: std::shuffle and the distribution classes
// are implementation-defined, this keeps seeds portable.
template <typename T>
void det_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

size_t det_pick(size_t size, std::mt19937_64& rng) { return rng() % size; }

}  // namespace

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return Graph::from_edge_list(n, pairs);
}

Host complete_host(int n) {
  Host h;
  h.graph = complete_graph(n);
  h.name = "K_" + std::to_string(n);
  h.chi = n;
  h.witness.resize(n);
  for (int v = 0; v < n; ++v) h.witness[v] = v;
  h.cert = "construction";
  return h;
}

Graph mycielski(const Graph& g) {
  int n = g.n();
  std::vector<std::pair<int, int>> pairs;
  for (const Edge& e : g.edges()) pairs.emplace_back(e.u, e.v);
  // Twin u_i (= n + i) copies v_i's neighborhood; apex w (= 2n) sees all twins.
  for (const Edge& e : g.edges()) {
    pairs.emplace_back(n + e.u, e.v);
    pairs.emplace_back(n + e.v, e.u);
  }
  for (int i = 0; i < n; ++i) pairs.emplace_back(n + i, 2 * n);
  return Graph::from_edge_list(2 * n + 1, pairs);
}

Host mycielski_host(int k) {
  if (k < 2 || k > 7) throw std::invalid_argument("mycielski host supports k in 2..7");
  Graph g = complete_graph(2);
  std::vector<int> witness{0, 1};
  for (int step = 3; step <= k; ++step) {
    int n = g.n();
    Graph next = mycielski(g);
    std::vector<int> w(next.n());
    for (int i = 0; i < n; ++i) {
      w[i] = witness[i];
      w[n + i] = witness[i];  // twin keeps v_i's color: twins are non-adjacent to v_i
    }
    w[2 * n] = step - 1;  // apex gets the new color
    g = std::move(next);
    witness = std::move(w);
  }

  Host h;
  h.name = "M_" + std::to_string(k);
  h.chi = k;
  h.cert = "construction";
  if (g.n() <= 24) {
    ChromaticResult r = chromatic_number(g);
    if (r.timed_out || r.chi != k)
      throw std::runtime_error("mycielski certification failed at k=" + std::to_string(k));
    h.cert = "exact";
  }
  h.graph = std::move(g);
  h.witness = std::move(witness);
  return h;
}

Graph random_gnm(int n, long long m, std::uint64_t seed) {
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  if (m < 0 || m > static_cast<long long>(all.size()))
    throw std::invalid_argument("edge count out of range");
  std::mt19937_64 rng(seed);
  det_shuffle(all, rng);
  all.resize(static_cast<size_t>(m));
  return Graph::from_edge_list(n, all);
}

Graph random_min_degree(int n, int dmin, std::uint64_t seed) {
  if (dmin >= n) throw std::invalid_argument("dmin must be < n");
  std::mt19937_64 rng(seed);
  Graph g = random_gnm(n, std::min<long long>(1LL * dmin * n, 1LL * n * (n - 1) / 2), seed);
  std::vector<std::pair<int, int>> pairs;
  for (const Edge& e : g.edges()) pairs.emplace_back(e.u, e.v);
  while (true) {
    int deficient = -1;
    for (int v = 0; v < n && deficient < 0; ++v)
      if (g.degree(v) < dmin) deficient = v;
    if (deficient < 0) break;
    std::vector<int> candidates;
    for (int u = 0; u < n; ++u)
      if (u != deficient && !g.has_edge(u, deficient)) candidates.push_back(u);
    int pick = candidates[det_pick(candidates.size(), rng)];
    pairs.emplace_back(deficient, pick);
    g = Graph::from_edge_list(n, pairs);
  }
  return g;
}

}  // namespace treepack
