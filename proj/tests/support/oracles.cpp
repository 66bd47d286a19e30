#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace oracle {

namespace {

std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
  std::vector<int> degree(n, 1);
  for (int v : seq) ++degree[v];
  std::vector<std::pair<int, int>> edges;
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  for (int v : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    if (--degree[v] == 1) leaves.insert(v);
  }
  int a = *leaves.begin(), b = *std::next(leaves.begin());
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return edges;
}

std::string rooted(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int y : adj[v])
    if (y != parent) kids.push_back(rooted(adj, y, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "[";
  for (const std::string& k : kids) s += k;
  return s + "]";
}

}  // namespace

std::string canon_tree(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  if (n == 1) return "[]";
  // centers by repeated leaf removal
  std::vector<int> deg(n);
  for (int v = 0; v < n; ++v) deg[v] = static_cast<int>(adj[v].size());
  std::vector<char> gone(n, 0);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  int left = n;
  while (left > 2) {
    std::vector<int> next;
    for (int v : layer) {
      gone[v] = 1;
      --left;
      for (int y : adj[v])
        if (!gone[y] && --deg[y] == 1) next.push_back(y);
    }
    layer = std::move(next);
  }
  std::vector<std::string> forms;
  for (int v = 0; v < n; ++v)
    if (!gone[v]) forms.push_back(rooted(adj, v, -1));
  std::sort(forms.begin(), forms.end());
  std::string s;
  for (const std::string& f : forms) s += f;
  return s;
}

std::set<std::string> prufer_free_tree_canon(int n) {
  std::set<std::string> out;
  if (n == 1) {
    out.insert("[]");
    return out;
  }
  if (n == 2) {
    out.insert(canon_tree(2, {{0, 1}}));
    return out;
  }
  std::vector<int> seq(n - 2, 0);
  while (true) {
    out.insert(canon_tree(n, prufer_decode(seq, n)));
    int i = 0;
    while (i < n - 2 && seq[i] == n - 1) seq[i++] = 0;
    if (i == n - 2) break;
    ++seq[i];
  }
  return out;
}

int prufer_free_tree_count(int n) {
  return static_cast<int>(prufer_free_tree_canon(n).size());
}

bool naive_pack(const treepack::Graph& host, const treepack::TreeFamily& family) {
  using treepack::Edge;
  using treepack::make_edge;
  int total = 0;
  for (int o = 2; o <= family.k(); ++o) total += o - 1;
  if (total > host.m()) return false;

  std::set<Edge> used;
  std::function<bool(int)> pack_from = [&](int order) -> bool {
    if (order > family.k()) return true;
    const treepack::Tree& t = family.tree(order);
    std::vector<int> image(t.n(), -1);
    std::vector<char> taken(host.n(), 0);
    std::function<bool(int)> place = [&](int tv) -> bool {
      if (tv == t.n()) return pack_from(order + 1);
      for (int hv = 0; hv < host.n(); ++hv) {
        if (taken[hv]) continue;
        std::vector<Edge> added;
        bool fits = true;
        // each tree edge is checked once, when its higher endpoint is placed
        for (int ty : t.g.neighbors(tv)) {
          if (ty >= tv) continue;
          Edge e = make_edge(image[ty], hv);
          if (!host.has_edge(e.u, e.v) || used.count(e)) {
            fits = false;
            break;
          }
          added.push_back(e);
        }
        if (!fits) continue;
        for (const Edge& e : added) used.insert(e);
        image[tv] = hv;
        taken[hv] = 1;
        if (place(tv + 1)) return true;
        taken[hv] = 0;
        image[tv] = -1;
        for (const Edge& e : added) used.erase(e);
      }
      return false;
    };
    return place(0);
  };
  return pack_from(2);
}

int brute_chromatic(const treepack::Graph& g) {
  if (g.n() == 0) return 0;
  if (g.m() == 0) return 1;
  for (int c = 2; c <= g.n(); ++c) {
    std::vector<int> color(g.n(), -1);
    std::function<bool(int)> go = [&](int v) -> bool {
      if (v == g.n()) return true;
      for (int cv = 0; cv < c; ++cv) {
        bool ok = true;
        for (int y : g.neighbors(v))
          if (y < v && color[y] == cv) ok = false;
        if (!ok) continue;
        color[v] = cv;
        if (go(v + 1)) return true;
        color[v] = -1;
      }
      return false;
    };
    if (go(0)) return c;
  }
  return g.n();
}

}  // namespace oracle
