#include "treepack/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace treepack {

namespace {

struct BudgetExceeded {};

// Exact chi via DSATUR branch and bound. Colors are 0-based. `best` holds the
// incumbent upper bound and its witness; search prunes at used >= best.
class ChiSolver {
 public:
  ChiSolver(const Graph& g, unsigned long long budget) : g_(g), budget_(budget) {}

  ChromaticResult run() {
    ChromaticResult out;
    int n = g_.n();
    if (n == 0) return out;

    best_witness_ = greedy_coloring();
    best_ = 1 + *std::max_element(best_witness_.begin(), best_witness_.end());
    lower_ = clique_lower_bound();

    color_.assign(n, -1);
    try {
      if (lower_ < best_) {
        // Seed a heuristic clique with distinct colors to break symmetry.
        for (int i = 0; i < static_cast<int>(clique_.size()); ++i) color_[clique_[i]] = i;
        branch(static_cast<int>(clique_.size()), static_cast<int>(clique_.size()));
      }
    } catch (const BudgetExceeded&) {
      out.timed_out = true;
      out.nodes = nodes_;
      return out;
    }
    out.chi = best_;
    out.witness = best_witness_;
    out.nodes = nodes_;
    return out;
  }

 private:
  std::vector<int> greedy_coloring() const {
    // Smallest-last vertex order, first-fit colors.
    int n = g_.n();
    std::vector<int> deg = g_.degrees();
    std::vector<char> removed(n, 0);
    std::vector<int> order(n);
    for (int step = n - 1; step >= 0; --step) {
      int pick = -1;
      for (int v = 0; v < n; ++v)
        if (!removed[v] && (pick < 0 || deg[v] < deg[pick])) pick = v;
      removed[pick] = 1;
      order[step] = pick;
      for (int y : g_.neighbors(pick))
        if (!removed[y]) --deg[y];
    }
    std::vector<int> col(n, -1);
    for (int v : order) {
      std::vector<char> used(n + 1, 0);
      for (int y : g_.neighbors(v))
        if (col[y] >= 0) used[col[y]] = 1;
      int c = 0;
      while (used[c]) ++c;
      col[v] = c;
    }
    return col;
  }

  int clique_lower_bound() {
    // Grow a clique greedily from each vertex in descending degree order.
    int n = g_.n();
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    std::stable_sort(verts.begin(), verts.end(),
                     [&](int a, int b) { return g_.degree(a) > g_.degree(b); });
    int bestsz = 0;
    for (int s : verts) {
      std::vector<int> cl{s};
      for (int v : verts) {
        if (v == s) continue;
        bool ok = true;
        for (int c : cl)
          if (!g_.has_edge(v, c)) {
            ok = false;
            break;
          }
        if (ok) cl.push_back(v);
      }
      if (static_cast<int>(cl.size()) > bestsz) {
        bestsz = static_cast<int>(cl.size());
        clique_ = cl;
      }
    }
    return bestsz;
  }

  void branch(int colored, int used) {
    if (++nodes_ > budget_) throw BudgetExceeded{};
    if (used >= best_) return;
    if (colored == g_.n()) {
      best_ = used;
      best_witness_ = color_;
      return;
    }
    int v = pick_vertex();
    std::vector<char> forbidden(used + 1, 0);
    for (int y : g_.neighbors(v))
      if (color_[y] >= 0) forbidden[color_[y]] = 1;
    int cap = std::min(used + 1, best_ - 1);  // new color only as color `used`
    for (int c = 0; c < cap; ++c) {
      if (c < used && forbidden[c]) continue;
      color_[v] = c;
      branch(colored + 1, std::max(used, c + 1));
      color_[v] = -1;
      if (best_ <= lower_) return;
    }
  }

  int pick_vertex() const {
    int n = g_.n(), pick = -1, best_sat = -1, best_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (color_[v] >= 0) continue;
      std::vector<char> seen(n + 1, 0);
      int sat = 0;
      for (int y : g_.neighbors(v))
        if (color_[y] >= 0 && !seen[color_[y]]) {
          seen[color_[y]] = 1;
          ++sat;
        }
      int deg = g_.degree(v);
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    return pick;
  }

  const Graph& g_;
  unsigned long long budget_;
  unsigned long long nodes_ = 0;
  int best_ = 0;
  int lower_ = 0;
  std::vector<int> clique_;
  std::vector<int> color_;
  std::vector<int> best_witness_;
};

void require_proper(const Graph& g, const std::vector<int>& col) {
  if (static_cast<int>(col.size()) != g.n())
    throw std::invalid_argument("coloring size mismatch");
  for (const Edge& e : g.edges())
    if (col[e.u] == col[e.v]) throw std::invalid_argument("coloring not proper");
}

}  // namespace

ChromaticResult chromatic_number(const Graph& g, unsigned long long node_budget) {
  return ChiSolver(g, node_budget).run();
}

CriticalSubgraph critical_subgraph(const Graph& g, int k, unsigned long long node_budget) {
  ChromaticResult top = chromatic_number(g, node_budget);
  if (top.timed_out) throw std::runtime_error("chromatic budget exceeded on input");
  if (top.chi != k)
    throw std::invalid_argument("chromatic number is " + std::to_string(top.chi) + ", not " +
                                std::to_string(k));

  Graph cur = g;
  std::vector<int> new_to_old(g.n());
  std::iota(new_to_old.begin(), new_to_old.end(), 0);
  std::vector<int> witness = top.witness;

  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (int v = 0; v < cur.n(); ++v) {
      std::vector<int> keep;
      for (int w = 0; w < cur.n(); ++w)
        if (w != v) keep.push_back(w);
      InducedSubgraph sub = induced_subgraph(cur, keep);
      ChromaticResult r = chromatic_number(sub.graph, node_budget);
      if (r.timed_out) throw std::runtime_error("chromatic budget exceeded during deletion scan");
      if (r.chi == k) {
        std::vector<int> lifted(keep.size());
        for (size_t i = 0; i < keep.size(); ++i) lifted[i] = new_to_old[keep[i]];
        cur = std::move(sub.graph);
        new_to_old = std::move(lifted);
        witness = r.witness;
        shrunk = true;
        break;
      }
    }
  }
  return CriticalSubgraph{std::move(cur), std::move(new_to_old), std::move(witness)};
}

OrderedColoring grundy_refine(const Graph& g, const std::vector<int>& proper) {
  require_proper(g, proper);
  std::vector<int> cls = proper;  // 0-based class index per vertex

  auto normalize = [&] {
    // Drop empty classes, keep relative order.
    int mx = -1;
    for (int c : cls) mx = std::max(mx, c);
    std::vector<int> count(mx + 1, 0), remap(mx + 1, -1);
    for (int c : cls) ++count[c];
    int next = 0;
    for (int c = 0; c <= mx; ++c)
      if (count[c] > 0) remap[c] = next++;
    for (int& c : cls) c = remap[c];
    return next;
  };

  int k = normalize();
  bool moved = true;
  while (moved) {
    moved = false;
    for (int v = 0; v < g.n() && !moved; ++v) {
      if (cls[v] == 0) continue;
      std::vector<char> present(k, 0);
      for (int y : g.neighbors(v)) present[cls[y]] = 1;
      for (int j = 0; j < cls[v]; ++j) {
        if (!present[j]) {
          cls[v] = j;  // smallest feasible class; independence holds by absence
          k = normalize();
          moved = true;
          break;
        }
      }
    }
  }

  OrderedColoring out;
  out.classes.assign(k, {});
  for (int v = 0; v < g.n(); ++v) out.classes[cls[v]].push_back(v);
  return out;
}

bool check_grundy(const Graph& g, const OrderedColoring& c) {
  std::vector<int> owner(g.n(), -1);
  for (int i = 0; i < c.k(); ++i) {
    for (int v : c.classes[i]) {
      if (v < 0 || v >= g.n()) throw std::invalid_argument("class vertex out of range");
      if (owner[v] != -1) throw std::invalid_argument("vertex in two classes");
      owner[v] = i;
    }
  }
  for (int v = 0; v < g.n(); ++v)
    if (owner[v] == -1) throw std::invalid_argument("vertex missing from all classes");

  for (const Edge& e : g.edges())
    if (owner[e.u] == owner[e.v]) return false;  // class not independent

  for (int v = 0; v < g.n(); ++v) {
    std::vector<char> seen(c.k(), 0);
    for (int y : g.neighbors(v)) seen[owner[y]] = 1;
    for (int j = 0; j < owner[v]; ++j)
      if (!seen[j]) return false;
  }
  return true;
}

PeeledTail peel_tail(const Graph& g, const OrderedColoring& c, int i) {
  int k = c.k();
  if (i < 1 || i > k) throw std::invalid_argument("peel depth out of range");
  std::vector<int> keep;
  for (int j = k - i; j < k; ++j)
    for (int v : c.classes[j]) keep.push_back(v);
  std::sort(keep.begin(), keep.end());

  InducedSubgraph sub = induced_subgraph(g, keep);
  PeeledTail out;
  out.coloring.classes.assign(i, {});
  for (int j = k - i; j < k; ++j) {
    for (int v : c.classes[j]) out.coloring.classes[j - (k - i)].push_back(sub.old_to_new[v]);
    std::sort(out.coloring.classes[j - (k - i)].begin(), out.coloring.classes[j - (k - i)].end());
  }
  out.graph = std::move(sub.graph);
  out.new_to_old = std::move(sub.new_to_old);
  out.old_to_new = std::move(sub.old_to_new);
  return out;
}

std::string coloring_to_json(const OrderedColoring& c) {
  nlohmann::json j;
  j["classes"] = c.classes;
  return j.dump();
}

OrderedColoring coloring_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  OrderedColoring c;
  c.classes = j.at("classes").get<std::vector<std::vector<int>>>();
  for (auto& cl : c.classes) std::sort(cl.begin(), cl.end());
  return c;
}

}  // namespace treepack
