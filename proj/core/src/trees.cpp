#include "treepack/trees.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace treepack {

namespace {

std::vector<int> bfs_component(const Graph& g, int start) {
  std::vector<int> seen(g.n(), 0);
  std::vector<int> order;
  std::queue<int> q;
  q.push(start);
  seen[start] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    order.push_back(x);
    for (int y : g.neighbors(x))
      if (!seen[y]) {
        seen[y] = 1;
        q.push(y);
      }
  }
  return order;
}

// 1 or 2 centers via leaf peeling.
std::vector<int> tree_centers(const Graph& g) {
  int n = g.n();
  if (n == 1) return {0};
  std::vector<int> deg = g.degrees();
  std::vector<int> layer;
  for (int v = 0; v < n; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  int remaining = n;
  while (remaining > 2) {
    std::vector<int> next;
    remaining -= static_cast<int>(layer.size());
    for (int v : layer)
      for (int y : g.neighbors(v))
        if (--deg[y] == 1) next.push_back(y);
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

std::string rooted_canon(const Graph& g, int root, int parent) {
  std::vector<std::string> kids;
  for (int y : g.neighbors(root))
    if (y != parent) kids.push_back(rooted_canon(g, y, root));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  s += ")";
  return s;
}

}  // namespace

bool is_tree(const Graph& g) {
  if (g.n() == 0) return false;
  if (g.m() != g.n() - 1) return false;
  return static_cast<int>(bfs_component(g, 0).size()) == g.n();
}

Tree tree_from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs) {
  Graph g = Graph::from_edge_list(n, pairs);
  if (!is_tree(g)) throw std::invalid_argument("edge list is not a tree");
  return Tree{std::move(g)};
}

TreeFamily::TreeFamily(std::vector<Tree> trees) : trees_(std::move(trees)) {
  for (int i = 0; i < static_cast<int>(trees_.size()); ++i)
    if (trees_[i].n() != i + 2)
      throw std::invalid_argument("family slot " + std::to_string(i + 2) + " holds a tree on " +
                                  std::to_string(trees_[i].n()) + " vertices");
}

const Tree& TreeFamily::tree(int order) const {
  if (order < 2 || order > k())
    throw std::invalid_argument("no tree of order " + std::to_string(order) + " in family");
  return trees_[order - 2];
}

std::string canonical_form(const Tree& t) {
  std::vector<int> centers = tree_centers(t.g);
  if (centers.size() == 1) return "C" + rooted_canon(t.g, centers[0], -1);
  std::string a = rooted_canon(t.g, centers[0], centers[1]);
  std::string b = rooted_canon(t.g, centers[1], centers[0]);
  if (b < a) std::swap(a, b);
  return "B" + a + b;
}

std::vector<Tree> enumerate_free_trees(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("n out of supported range 1..12");
  std::vector<Tree> current;
  current.push_back(Tree{Graph::from_edge_list(1, {})});
  for (int size = 2; size <= n; ++size) {
    std::map<std::string, Tree> dedup;
    for (const Tree& t : current) {
      for (int host = 0; host < t.n(); ++host) {
        std::vector<std::pair<int, int>> pairs;
        for (const Edge& e : t.g.edges()) pairs.emplace_back(e.u, e.v);
        pairs.emplace_back(host, size - 1);
        Tree grown{Graph::from_edge_list(size, pairs)};
        dedup.emplace(canonical_form(grown), std::move(grown));
      }
    }
    current.clear();
    for (auto& [canon, tree] : dedup) current.push_back(std::move(tree));
  }
  return current;  // map iteration already sorted by canonical form
}

TreeClass classify(const Tree& t) {
  if (t.n() < 2) throw std::invalid_argument("classify needs >= 2 vertices");
  TreeClass c;
  std::vector<int> deg = t.g.degrees();
  int maxdeg = *std::max_element(deg.begin(), deg.end());
  c.is_star = (maxdeg == t.n() - 1);
  c.is_path = (maxdeg <= 2);
  for (int v = 0; v < t.n() && !c.is_spider; ++v) {
    bool ok = true;
    for (int x = 0; x < t.n() && ok; ++x) {
      if (x == v) continue;
      int d = deg[x] - (t.g.has_edge(x, v) ? 1 : 0);
      ok = d <= 1;
    }
    c.is_spider = ok;
  }
  return c;
}

std::vector<PendingStar> find_pending_stars(const Tree& t) {
  if (t.n() < 3) throw std::invalid_argument("pending stars need >= 3 vertices");
  if (classify(t).is_star) throw std::invalid_argument("a star has no pending star");
  std::vector<int> deg = t.g.degrees();
  std::vector<PendingStar> out;
  for (int x = 0; x < t.n(); ++x) {
    std::vector<int> leaves, big;
    for (int y : t.g.neighbors(x)) (deg[y] == 1 ? leaves : big).push_back(y);
    if (big.size() == 1 && !leaves.empty())
      out.push_back(PendingStar{x, std::move(leaves), big[0]});
  }
  return out;  // neighbors scanned in vertex order, so sorted by center id
}

LeafRemoval remove_leaves(const Tree& t, const std::vector<int>& victims) {
  std::vector<int> vs = victims;
  std::sort(vs.begin(), vs.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
    throw std::invalid_argument("duplicate victim");
  for (int v : vs)
    if (v < 0 || v >= t.n()) throw std::invalid_argument("victim out of range");
  if (t.n() - static_cast<int>(vs.size()) < 2)
    throw std::invalid_argument("removal would leave fewer than 2 vertices");

  std::vector<int> deg = t.g.degrees();
  bool all_leaves = std::all_of(vs.begin(), vs.end(), [&](int v) { return deg[v] == 1; });
  if (!all_leaves) {
    // Must be exactly one whole pending star.
    bool matched = false;
    for (const PendingStar& ps : find_pending_stars(t)) {
      std::vector<int> span = ps.leaves;
      span.push_back(ps.center);
      std::sort(span.begin(), span.end());
      if (span == vs) {
        matched = true;
        break;
      }
    }
    if (!matched)
      throw std::invalid_argument("victims are neither all leaves nor one whole pending star");
  }

  std::vector<int> keep;
  std::set<int> victim_set(vs.begin(), vs.end());
  for (int v = 0; v < t.n(); ++v)
    if (!victim_set.count(v)) keep.push_back(v);

  InducedSubgraph sub = induced_subgraph(t.g, keep);
  if (!is_tree(sub.graph)) throw std::invalid_argument("victim set would disconnect the tree");

  std::set<int> attach;
  for (int v : vs)
    for (int y : t.g.neighbors(v))
      if (!victim_set.count(y)) attach.insert(y);

  LeafRemoval out;
  out.tree = Tree{std::move(sub.graph)};
  out.old_to_new = std::move(sub.old_to_new);
  out.new_to_old = std::move(sub.new_to_old);
  out.attachments.assign(attach.begin(), attach.end());
  return out;
}

std::string family_to_json(const TreeFamily& f) {
  nlohmann::json j;
  j["k"] = f.k();
  j["trees"] = nlohmann::json::object();
  for (int order = 2; order <= f.k(); ++order) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : f.tree(order).g.edges()) edges.push_back({e.u, e.v});
    j["trees"][std::to_string(order)] = edges;
  }
  return j.dump();
}

TreeFamily family_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int k = j.at("k").get<int>();
  if (k < 2) throw std::invalid_argument("family needs k >= 2");
  std::vector<Tree> trees;
  for (int order = 2; order <= k; ++order) {
    const nlohmann::json& edges = j.at("trees").at(std::to_string(order));
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : edges) pairs.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    trees.push_back(tree_from_edge_list(order, pairs));
  }
  return TreeFamily(std::move(trees));
}

}  // namespace treepack
