#include "treepack/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "treepack/coloring.hpp"
#include "treepack/constructive.hpp"
#include "treepack/verify.hpp"

namespace treepack {

namespace {

struct BudgetExceeded {};

const std::vector<Tree>& cached_trees(int order) {
  static std::mutex mu;
  static std::map<int, std::vector<Tree>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, enumerate_free_trees(order)).first;
  return it->second;
}

// BFS layout of one tree with sibling symmetry links: a vertex whose rooted
// subtree equals its previous sibling's must take a larger host image.
struct TreePlan {
  int n = 0;
  std::vector<int> bfs;          // tree vertex at each position
  std::vector<int> parent_pos;   // -1 for root
  std::vector<int> equal_prev;   // position of equal-subtree previous sibling, -1 if none
  std::vector<int> children;     // child count per position
  int max_degree = 0;
};

std::string subtree_canon(const Graph& g, int v, int parent) {
  std::vector<std::string> kids;
  for (int y : g.neighbors(v))
    if (y != parent) kids.push_back(subtree_canon(g, y, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  return s + ")";
}

TreePlan plan_tree(const Tree& t) {
  TreePlan plan;
  plan.n = t.n();
  int root = 0;
  for (int v = 1; v < t.n(); ++v)
    if (t.g.degree(v) > t.g.degree(root)) root = v;
  plan.max_degree = t.g.degree(root);

  std::vector<int> pos_of(t.n(), -1);
  plan.bfs.push_back(root);
  plan.parent_pos.push_back(-1);
  plan.equal_prev.push_back(-1);
  pos_of[root] = 0;
  for (int head = 0; head < static_cast<int>(plan.bfs.size()); ++head) {
    int x = plan.bfs[head];
    int parent = plan.parent_pos[head] >= 0 ? plan.bfs[plan.parent_pos[head]] : -1;
    std::vector<std::pair<std::string, int>> kids;
    for (int y : t.g.neighbors(x))
      if (y != parent) kids.emplace_back(subtree_canon(t.g, y, x), y);
    std::sort(kids.begin(), kids.end());
    for (size_t i = 0; i < kids.size(); ++i) {
      plan.bfs.push_back(kids[i].second);
      plan.parent_pos.push_back(head);
      bool same = i > 0 && kids[i].first == kids[i - 1].first;
      plan.equal_prev.push_back(same ? static_cast<int>(plan.bfs.size()) - 2 : -1);
      pos_of[kids[i].second] = static_cast<int>(plan.bfs.size()) - 1;
    }
  }
  plan.children.assign(plan.n, 0);
  for (int p = 1; p < plan.n; ++p) ++plan.children[plan.parent_pos[p]];
  return plan;
}

// True if some automorphism of g maps a to b. Capped backtracking; a cap hit
// counts as "no" (callers only use this to skip work, so that is sound).
bool exists_automorphism(const Graph& g, int a, int b, long long cap = 200000) {
  int n = g.n();
  std::vector<int> deg = g.degrees();
  if (deg[a] != deg[b]) return false;
  std::vector<int> img(n, -1);
  std::vector<char> taken(n, 0);
  img[a] = b;
  taken[b] = 1;
  long long steps = 0;

  std::function<bool(int)> go = [&](int v) -> bool {
    if (++steps > cap) return false;
    while (v < n && img[v] != -1) ++v;
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (taken[w] || deg[w] != deg[v]) continue;
      bool ok = true;
      for (int y = 0; y < n && ok; ++y) {
        if (img[y] == -1 || y == v) continue;
        if (g.has_edge(v, y) != g.has_edge(w, img[y])) ok = false;
      }
      if (!ok) continue;
      img[v] = w;
      taken[w] = 1;
      if (go(v + 1)) return true;
      img[v] = -1;
      taken[w] = 0;
    }
    return false;
  };
  return go(0);
}

std::vector<char> root_candidate_mask(const Graph& g, bool orbit_pruning) {
  std::vector<char> allowed(g.n(), 1);
  if (!orbit_pruning || g.n() > 10) return allowed;
  for (int v = 1; v < g.n(); ++v)
    for (int u = 0; u < v && allowed[v]; ++u)
      if (allowed[u] && exists_automorphism(g, v, u)) allowed[v] = 0;
  return allowed;
}

class Packer {
 public:
  Packer(const Graph& g, const TreeFamily& family, const SearchOptions& opt)
      : g_(g), family_(family), opt_(opt) {
    for (int order = family.k(); order >= 2; --order) {
      orders_.push_back(order);
      plans_.push_back(plan_tree(family.tree(order)));
    }
    for (int i = 0; i < g.m(); ++i) edge_index_.emplace(g.edges()[i], i);
    used_edge_.assign(g.m(), 0);
    free_deg_ = g.degrees();
    free_edges_ = g.m();
    root_mask_ = root_candidate_mask(g, opt.orbit_pruning);
    images_.resize(plans_.size());
    for (size_t i = 0; i < plans_.size(); ++i) images_[i].assign(plans_[i].n, -1);
    on_tree_.assign(g.n(), 0);
  }

  SearchResult run() {
    SearchResult out;
    try {
      if (place_tree(0)) {
        out.outcome = SearchOutcome::SAT;
        out.packing.k = family_.k();
        for (size_t ti = 0; ti < plans_.size(); ++ti) {
          std::vector<Edge> edges;
          const Tree& t = family_.tree(orders_[ti]);
          for (const Edge& e : t.g.edges())
            edges.push_back(make_edge(images_[ti][e.u], images_[ti][e.v]));
          std::sort(edges.begin(), edges.end());
          out.packing.colors[orders_[ti]] = std::move(edges);
        }
      } else {
        out.outcome = SearchOutcome::UNSAT;
      }
    } catch (const BudgetExceeded&) {
      out.outcome = SearchOutcome::TIMEOUT;
    }
    out.nodes = nodes_;
    return out;
  }

 private:
  bool place_tree(size_t ti) {
    if (ti == plans_.size()) return true;
    const TreePlan& plan = plans_[ti];
    int need = 0;
    for (size_t tj = ti; tj < plans_.size(); ++tj) need += plans_[tj].n - 1;
    if (need > free_edges_) return false;
    return place_vertex(ti, 0);
  }

  bool place_vertex(size_t ti, int pos) {
    const TreePlan& plan = plans_[ti];
    if (pos == plan.n) {
      std::vector<int> snapshot = images_[ti];
      for (int v : snapshot) on_tree_[v] = 0;  // vertex marks are per-tree
      bool ok = place_tree(ti + 1);
      for (int v : snapshot) on_tree_[v] = 1;
      return ok;
    }

    int tv = plan.bfs[pos];
    int kids = plan.children[pos];
    int floor_img = plan.equal_prev[pos] >= 0 ? images_[ti][plan.bfs[plan.equal_prev[pos]]] : -1;

    if (pos == 0) {
      for (int v = 0; v < g_.n(); ++v) {
        if ((ti == 0 && !root_mask_[v]) || free_deg_[v] < kids) continue;
        if (++nodes_ > opt_.node_budget) throw BudgetExceeded{};
        images_[ti][tv] = v;
        on_tree_[v] = 1;
        if (place_vertex(ti, pos + 1)) return true;
        on_tree_[v] = 0;
        images_[ti][tv] = -1;
      }
      return false;
    }

    int parent_img = images_[ti][plan.bfs[plan.parent_pos[pos]]];
    for (int y : g_.neighbors(parent_img)) {
      if (on_tree_[y] || y <= floor_img) continue;
      auto eit = edge_index_.find(make_edge(parent_img, y));
      int ei = eit->second;
      if (used_edge_[ei] || free_deg_[y] - 1 < kids) continue;
      if (++nodes_ > opt_.node_budget) throw BudgetExceeded{};
      used_edge_[ei] = 1;
      --free_deg_[parent_img];
      --free_deg_[y];
      --free_edges_;
      images_[ti][tv] = y;
      on_tree_[y] = 1;
      if (place_vertex(ti, pos + 1)) return true;
      on_tree_[y] = 0;
      images_[ti][tv] = -1;
      used_edge_[ei] = 0;
      ++free_deg_[parent_img];
      ++free_deg_[y];
      ++free_edges_;
    }
    return false;
  }

  const Graph& g_;
  const TreeFamily& family_;
  SearchOptions opt_;
  std::vector<int> orders_;
  std::vector<TreePlan> plans_;
  std::map<Edge, int> edge_index_;
  std::vector<char> used_edge_;
  std::vector<int> free_deg_;
  int free_edges_ = 0;
  std::vector<char> root_mask_;
  std::vector<std::vector<int>> images_;
  std::vector<char> on_tree_;
  unsigned long long nodes_ = 0;
};

template <typename Fn>
void run_indexed(long long total, int jobs, Fn&& body) {
  if (jobs <= 1) {
    for (long long i = 0; i < total; ++i) body(i);
    return;
  }
  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (long long i = next.fetch_add(1); i < total; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

const char* to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::SAT: return "SAT";
    case SearchOutcome::UNSAT: return "UNSAT";
    case SearchOutcome::TIMEOUT: return "TIMEOUT";
  }
  return "?";
}

SearchResult pack_exhaustive(const Graph& g, const TreeFamily& family, const SearchOptions& opt) {
  return Packer(g, family, opt).run();
}

long long family_space_size(int k) {
  long long total = 1;
  for (int order = 2; order <= k; ++order)
    total *= static_cast<long long>(cached_trees(order).size());
  return total;
}

TreeFamily family_at(int k, long long index) {
  if (index < 0 || index >= family_space_size(k)) throw std::invalid_argument("family index");
  std::vector<Tree> trees;
  long long rest = index;
  for (int order = 2; order <= k; ++order) {
    const auto& options = cached_trees(order);
    trees.push_back(options[rest % options.size()]);
    rest /= static_cast<long long>(options.size());
  }
  return TreeFamily(std::move(trees));
}

std::string family_id(int k, long long index) {
  std::string id;
  long long rest = index;
  for (int order = 2; order <= k; ++order) {
    const auto& options = cached_trees(order);
    if (!id.empty()) id += ';';
    id += std::to_string(order) + ":" + std::to_string(rest % options.size());
    rest /= static_cast<long long>(options.size());
  }
  return id;
}

SweepReport sweep_tpc(int n, const SearchOptions& opt, int jobs) {
  if (n < 2 || n > 8) throw std::invalid_argument("tpc sweep supports n in 2..8");
  Graph host = complete_graph(n);
  long long total = family_space_size(n);

  SweepReport report;
  report.families_total = static_cast<int>(total);
  report.records.resize(total);

  run_indexed(total, jobs, [&](long long i) {
    TreeFamily family = family_at(n, i);
    auto t0 = std::chrono::steady_clock::now();
    SearchResult r = pack_exhaustive(host, family, opt);
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    SweepRecord rec;
    rec.host = "K_" + std::to_string(n);
    rec.family_id = family_id(n, i);
    rec.outcome = r.outcome;
    rec.nodes = r.nodes;
    rec.elapsed_s = dt.count();
    if (r.outcome == SearchOutcome::SAT && !verify_packing(host, family, r.packing).ok) {
      rec.outcome = SearchOutcome::UNSAT;
      rec.note = "verification failed";
    }
    report.records[i] = std::move(rec);
  });

  for (const SweepRecord& rec : report.records) {
    if (rec.outcome == SearchOutcome::SAT)
      ++report.packed;
    else if (rec.outcome == SearchOutcome::TIMEOUT)
      report.timeouts.push_back(rec);
    else
      report.failures.push_back(rec);
  }
  return report;
}

SweepReport sweep_chromatic(int k, const std::vector<Host>& hosts, const FamilyFilter& filter,
                            const ChromaticSweepOptions& opt) {
  SweepReport report;
  std::vector<const Host*> certified;
  for (const Host& h : hosts) {
    if (h.chi != k) {
      report.skipped_hosts.push_back(h.name + ": claimed chi " + std::to_string(h.chi) +
                                     " != " + std::to_string(k));
      continue;
    }
    // Witness properness is cheap and catches mislabeled hosts.
    bool proper = static_cast<int>(h.witness.size()) == h.graph.n();
    int classes = 0;
    if (proper) {
      for (const Edge& e : h.graph.edges())
        if (h.witness[e.u] == h.witness[e.v]) proper = false;
      for (int c : h.witness) classes = std::max(classes, c + 1);
    }
    if (!proper || classes != k) {
      report.skipped_hosts.push_back(h.name + ": witness not a proper k-coloring");
      continue;
    }
    if (h.cert != "exact" && h.cert != "construction") {
      if (h.graph.n() > 40) {
        report.skipped_hosts.push_back(h.name + ": no provenance and too large for exact chi");
        continue;
      }
      ChromaticResult r = chromatic_number(h.graph, opt.chi_budget);
      if (r.timed_out || r.chi != k) {
        report.skipped_hosts.push_back(h.name + ": exact certification failed");
        continue;
      }
    }
    certified.push_back(&h);
  }

  long long per_host = family_space_size(k);
  std::vector<long long> family_indices;
  for (long long i = 0; i < per_host; ++i) {
    if (!filter || filter(family_at(k, i))) family_indices.push_back(i);
  }

  long long total = static_cast<long long>(certified.size()) * family_indices.size();
  report.families_total = static_cast<int>(total);
  report.records.resize(total);

  run_indexed(total, opt.jobs, [&](long long flat) {
    const Host& h = *certified[flat / family_indices.size()];
    long long fi = family_indices[flat % family_indices.size()];
    TreeFamily family = family_at(k, fi);

    auto t0 = std::chrono::steady_clock::now();
    SearchResult r = pack_exhaustive(h.graph, family, opt.search);
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;

    SweepRecord rec;
    rec.host = h.name;
    rec.family_id = family_id(k, fi);
    rec.outcome = r.outcome;
    rec.nodes = r.nodes;
    rec.elapsed_s = dt.count();
    if (r.outcome == SearchOutcome::SAT && !verify_packing(h.graph, family, r.packing).ok) {
      rec.outcome = SearchOutcome::UNSAT;
      rec.note = "verification failed";
    }

    if (opt.cross_check_constructive && non_star_count(family) <= 3) {
      PackOptions popt;
      popt.witness = h.witness;
      popt.prefer_witness_pipeline = true;
      try {
        ConstructiveResult c = pack_constructive(h.graph, family, popt);
        if (!c.falsifications.empty())
          rec.note += (rec.note.empty() ? "" : "; ") + std::string("constructive fell back");
        else if (r.outcome == SearchOutcome::UNSAT)
          rec.note += (rec.note.empty() ? "" : "; ") + std::string("oracle UNSAT but constructive packed");
      } catch (const std::exception& e) {
        rec.note += (rec.note.empty() ? "" : "; ") + std::string("constructive error: ") + e.what();
      }
    }
    report.records[flat] = std::move(rec);
  });

  for (const SweepRecord& rec : report.records) {
    bool bad_note = rec.note.find("constructive") != std::string::npos ||
                    rec.note.find("verification failed") != std::string::npos;
    if (rec.outcome == SearchOutcome::SAT && !bad_note)
      ++report.packed;
    else if (rec.outcome == SearchOutcome::TIMEOUT)
      report.timeouts.push_back(rec);
    else
      report.failures.push_back(rec);
  }
  return report;
}

std::string records_to_jsonl(const std::vector<SweepRecord>& records, bool include_elapsed) {
  std::string out;
  for (const SweepRecord& rec : records) {
    nlohmann::json j;
    j["host"] = rec.host;
    j["family"] = rec.family_id;
    j["outcome"] = to_string(rec.outcome);
    j["nodes"] = rec.nodes;
    if (include_elapsed) j["elapsed"] = rec.elapsed_s;
    if (!rec.note.empty()) j["note"] = rec.note;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace treepack
