#include "treepack/degree.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace treepack {

namespace {

// BFS parent layout used by both greedy embedders.
struct BfsLayout {
  std::vector<int> order;   // tree vertices, root first
  std::vector<int> parent;  // parent tree vertex, -1 for root
  std::vector<int> depth;
};

BfsLayout bfs_layout(const Tree& t) {
  int root = 0;
  for (int v = 1; v < t.n(); ++v)
    if (t.g.degree(v) > t.g.degree(root)) root = v;
  BfsLayout out;
  out.parent.assign(t.n(), -1);
  out.depth.assign(t.n(), 0);
  std::vector<char> seen(t.n(), 0);
  out.order.push_back(root);
  seen[root] = 1;
  for (size_t head = 0; head < out.order.size(); ++head) {
    int x = out.order[head];
    for (int y : t.g.neighbors(x))
      if (!seen[y]) {
        seen[y] = 1;
        out.parent[y] = x;
        out.depth[y] = out.depth[x] + 1;
        out.order.push_back(y);
      }
  }
  return out;
}

// First-fit greedy embedding into hosts of min degree >= |V(t)| - 1.
std::optional<std::vector<int>> greedy_embed_bfs(const Graph& h, const Tree& t) {
  if (h.n() < t.n()) return std::nullopt;
  BfsLayout layout = bfs_layout(t);
  int root_deg = t.g.degree(layout.order[0]);
  int root_img = -1;
  for (int v = 0; v < h.n(); ++v)
    if (h.degree(v) >= root_deg && (root_img < 0 || h.degree(v) > h.degree(root_img)))
      root_img = v;
  if (root_img < 0) return std::nullopt;

  std::vector<int> image(t.n(), -1);
  std::vector<char> used(h.n(), 0);
  image[layout.order[0]] = root_img;
  used[root_img] = 1;
  for (size_t i = 1; i < layout.order.size(); ++i) {
    int tv = layout.order[i];
    int pimg = image[layout.parent[tv]];
    int pick = -1;
    for (int y : h.neighbors(pimg))
      if (!used[y]) {
        pick = y;
        break;
      }
    if (pick < 0) return std::nullopt;
    image[tv] = pick;
    used[pick] = 1;
  }
  return image;
}

Graph remove_edges(const Graph& g, const std::vector<Edge>& victims) {
  std::set<Edge> kill(victims.begin(), victims.end());
  std::vector<std::pair<int, int>> pairs;
  for (const Edge& e : g.edges())
    if (!kill.count(e)) pairs.emplace_back(e.u, e.v);
  return Graph::from_edge_list(g.n(), pairs);
}

}  // namespace

std::vector<int> BSets::all() const {
  std::vector<int> out;
  for (const auto& layer : layers) out.insert(out.end(), layer.begin(), layer.end());
  std::sort(out.begin(), out.end());
  return out;
}

int BSets::total() const {
  int t = 0;
  for (const auto& layer : layers) t += static_cast<int>(layer.size());
  return t;
}

BSets compute_b_sets(const Graph& gp, int k) {
  BSets b;
  b.layers.assign(k, {});
  std::vector<char> in_union(gp.n(), 0);

  for (int v = 0; v < gp.n(); ++v)
    if (gp.degree(v) < k - 1) {
      b.layers[0].push_back(v);
      in_union[v] = 1;
    }

  for (int i = 1; i < k; ++i) {
    std::vector<int>& layer = b.layers[i];
    for (int v = 0; v < gp.n(); ++v) {
      if (in_union[v]) continue;
      bool touches = false;
      int outside = 0;
      for (int y : gp.neighbors(v)) {
        if (in_union[y])
          touches = true;
        else
          ++outside;
      }
      if (touches && outside < k - 1) layer.push_back(v);
    }
    if (layer.empty()) break;
    for (int v : layer) in_union[v] = 1;
  }
  return b;
}

LevelwiseOutcome embed_tree_levelwise(const Graph& gp, const Tree& t, const BSets& b, int k) {
  if (t.n() > k) throw std::invalid_argument("tree larger than k");
  LevelwiseOutcome out;

  // forbidden_until[v] = largest j such that v lies in B_1..B_j (0 if none).
  std::vector<int> forbidden_until(gp.n(), 0);
  for (int j = 0; j < static_cast<int>(b.layers.size()); ++j)
    for (int v : b.layers[j]) forbidden_until[v] = std::max(forbidden_until[v], j + 1);

  auto eligible = [&](int v, int level) {
    // Level j may not use B_1..B_{k-j}; the root (level 0) avoids all of B.
    int cutoff = level == 0 ? k : k - level;
    return forbidden_until[v] == 0 || forbidden_until[v] > cutoff;
  };

  BfsLayout layout = bfs_layout(t);
  std::vector<int> image(t.n(), -1);
  std::vector<char> used(gp.n(), 0);

  int root_img = -1;
  for (int v = 0; v < gp.n() && root_img < 0; ++v)
    if (eligible(v, 0)) root_img = v;
  if (root_img < 0) {
    out.failed_level = 0;
    return out;
  }
  image[layout.order[0]] = root_img;
  used[root_img] = 1;

  for (size_t i = 1; i < layout.order.size(); ++i) {
    int tv = layout.order[i];
    int level = layout.depth[tv];
    int pimg = image[layout.parent[tv]];
    int pick = -1;
    for (int y : gp.neighbors(pimg))
      if (!used[y] && eligible(y, level)) {
        pick = y;
        break;
      }
    if (pick < 0) {
      out.failed_level = level;
      return out;
    }
    image[tv] = pick;
    used[pick] = 1;
  }
  out.image = std::move(image);
  out.ok = true;
  return out;
}

DegreePackResult pack_min_degree(const Graph& g, const TreeFamily& family) {
  int k = family.k();
  DegreePackResult out;
  if (g.n() < k) {
    out.failure = "host has fewer than k vertices";
    return out;
  }
  if (g.min_degree() < k - 1) {
    out.failure = "min degree below k-1";
    return out;
  }

  Graph residual = g;
  out.packing.k = k;
  for (int order = k; order >= 2; --order) {
    BSets b = compute_b_sets(residual, k);
    LevelwiseOutcome e = embed_tree_levelwise(residual, family.tree(order), b, k);
    if (!e.ok) {
      out.failure = "tree " + std::to_string(order) + " starved at level " +
                    std::to_string(e.failed_level) + " (layer boundary B_1..B_" +
                    std::to_string(std::max(0, k - e.failed_level)) + ")";
      return out;
    }
    std::vector<Edge> edges;
    for (const Edge& te : family.tree(order).g.edges())
      edges.push_back(make_edge(e.image[te.u], e.image[te.v]));
    std::sort(edges.begin(), edges.end());
    residual = remove_edges(residual, edges);
    out.packing.colors[order] = std::move(edges);
  }
  out.ok = true;
  return out;
}

PeelTrace peel(const Graph& g, Ratio threshold) {
  if (threshold.den <= 0) throw std::invalid_argument("threshold denominator must be positive");
  PeelTrace out;
  out.graph = g;
  out.new_to_old.resize(g.n());
  for (int v = 0; v < g.n(); ++v) out.new_to_old[v] = v;
  out.rounds.emplace_back(out.graph.degree_sum(), out.graph.n());

  while (true) {
    std::vector<int> keep;
    for (int v = 0; v < out.graph.n(); ++v)
      if (static_cast<long long>(out.graph.degree(v)) * threshold.den >= threshold.num)
        keep.push_back(v);
    if (static_cast<int>(keep.size()) == out.graph.n()) break;
    InducedSubgraph sub = induced_subgraph(out.graph, keep);
    std::vector<int> lifted(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) lifted[i] = out.new_to_old[keep[i]];
    out.graph = std::move(sub.graph);
    out.new_to_old = std::move(lifted);
    out.rounds.emplace_back(out.graph.degree_sum(), out.graph.n());
    if (out.graph.n() == 0) break;
  }
  return out;
}

AvgDegreeResult pack_avg_degree(const Graph& g, const TreeFamily& family, int k,
                                const AvgDegreeOptions& opt) {
  int s = family.k();
  if (2 * s > k) throw std::invalid_argument("requires 2s <= k");
  if (g.degree_sum() < static_cast<long long>(k - 1) * g.n())
    throw std::invalid_argument("requires at least (k-1)n/2 edges");
  if (k > g.n()) throw std::invalid_argument("requires k <= n");

  AvgDegreeResult out;
  out.packing.k = s;

  // The peeled subgraph only locates the embedding; edges are removed from
  // the residual on the full vertex set, which the next round peels afresh.
  Graph residual = g;

  for (int i = s; i >= 2; --i) {
    int ki = k - (s - i);
    std::vector<Edge> chosen;
    if (opt.erdos_sos_chain) {
      std::optional<std::vector<int>> image = greedy_embed_bfs(residual, family.tree(i));
      if (image)
        for (const Edge& te : family.tree(i).g.edges())
          chosen.push_back(make_edge((*image)[te.u], (*image)[te.v]));
    }
    if (chosen.empty()) {
      PeelTrace p = peel(residual, Ratio{ki - 1, 2});
      if (p.graph.n() == 0) {
        out.failure = "peel emptied the residual before T_" + std::to_string(i);
        return out;
      }
      std::optional<std::vector<int>> image = greedy_embed_bfs(p.graph, family.tree(i));
      if (!image) {
        out.failure = "greedy embedding starved on T_" + std::to_string(i);
        return out;
      }
      for (const Edge& te : family.tree(i).g.edges())
        chosen.push_back(
            make_edge(p.new_to_old[(*image)[te.u]], p.new_to_old[(*image)[te.v]]));
    }
    std::sort(chosen.begin(), chosen.end());
    residual = remove_edges(residual, chosen);
    out.packing.colors[i] = std::move(chosen);
    out.residuals.emplace_back(residual.degree_sum(), residual.n());
  }
  out.ok = true;
  return out;
}

}  // namespace treepack
