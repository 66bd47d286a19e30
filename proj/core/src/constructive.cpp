#include "treepack/constructive.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "treepack/verify.hpp"

namespace treepack {

namespace {

constexpr int kPerm3[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
constexpr int kClassPairs[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};

struct BudgetHit {};

struct FalsifyError : std::runtime_error {
  CaseTag tag;
  int level;
  FalsifyError(CaseTag t, int lv, const std::string& msg)
      : std::runtime_error(msg), tag(t), level(lv) {}
};

std::string dispatch_dump(const TreeFamily& f, const std::string& msg) {
  std::string s = msg + "; family k=" + std::to_string(f.k());
  for (int o = 2; o <= f.k(); ++o)
    s += " T" + std::to_string(o) + "=" + canonical_form(f.tree(o));
  return s;
}

// ---- tree-side selection helpers ----

std::vector<int> leaf_neighbor_vertices(const Tree& t) {
  std::vector<int> out;
  for (int v = 0; v < t.n(); ++v) {
    bool has = false;
    for (int y : t.g.neighbors(v))
      if (t.g.degree(y) == 1) has = true;
    if (has && t.g.degree(v) >= 1) out.push_back(v);
  }
  return out;
}

int smallest_leaf_at(const Tree& t, int v) {
  for (int y : t.g.neighbors(v))
    if (t.g.degree(y) == 1) return y;
  throw std::logic_error("vertex has no leaf neighbor");
}

TreeRemoval::Group leaves_group(const Tree& t, const std::vector<int>& neighbors_) {
  TreeRemoval::Group g;
  g.kind = TreeRemoval::Group::Kind::LEAVES;
  std::set<int> taken;
  for (int v : neighbors_) {
    int leaf = -1;
    for (int y : t.g.neighbors(v))
      if (t.g.degree(y) == 1 && !taken.count(y)) {
        leaf = y;
        break;
      }
    if (leaf < 0) throw std::logic_error("no unused leaf at chosen vertex");
    taken.insert(leaf);
    g.victims.push_back(leaf);
    g.attachments.push_back(v);
  }
  return g;
}

TreeRemoval::Group ps_group(const PendingStar& p) {
  TreeRemoval::Group g;
  g.kind = TreeRemoval::Group::Kind::PENDING_STAR;
  g.victims.push_back(p.center);
  for (int leaf : p.leaves) g.victims.push_back(leaf);
  g.attachments.push_back(p.neighbor);
  return g;
}

// Smallest (order, center) pending star satisfying pred.
const PendingStar* pick_pending_star(const std::vector<PendingStar>& ps,
                                     const std::function<bool(const PendingStar&)>& pred) {
  const PendingStar* best = nullptr;
  for (const PendingStar& p : ps) {
    if (!pred(p)) continue;
    if (!best || p.order() < best->order() ||
        (p.order() == best->order() && p.center < best->center))
      best = &p;
  }
  return best;
}

// First two leaf-neighbor vertices, ascending.
std::pair<int, int> two_leaf_neighbors(const Tree& t, const std::string& who) {
  std::vector<int> ln = leaf_neighbor_vertices(t);
  if (ln.size() < 2) throw std::logic_error("expected two leaf-neighbor vertices in " + who);
  return {ln[0], ln[1]};
}

// ---- generic embedding recovery (edge list of one color -> image map) ----

using Adj = std::map<int, std::vector<int>>;

std::vector<int> centers_of(const Adj& adj) {
  if (adj.size() == 1) return {adj.begin()->first};
  std::map<int, int> deg;
  std::map<int, char> dead;
  for (const auto& [v, ns] : adj) deg[v] = static_cast<int>(ns.size());
  std::vector<int> cur;
  for (const auto& [v, d] : deg)
    if (d <= 1) cur.push_back(v);
  int remaining = static_cast<int>(adj.size());
  while (remaining > 2) {
    std::vector<int> nxt;
    for (int v : cur) {
      dead[v] = 1;
      --remaining;
      for (int y : adj.at(v))
        if (!dead[y] && --deg[y] == 1) nxt.push_back(y);
    }
    cur = std::move(nxt);
  }
  std::vector<int> out;
  for (const auto& [v, ns] : adj)
    if (!dead[v]) out.push_back(v);
  return out;
}

std::string rooted_canon(const Adj& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int y : adj.at(v))
    if (y != parent) kids.push_back(rooted_canon(adj, y, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const std::string& t : kids) s += t;
  s += ")";
  return s;
}

bool match_rooted(const Adj& ta, const Adj& ia, int vt, int pt, int vi, int pi,
                  std::vector<int>& out) {
  std::vector<std::pair<std::string, int>> kt, ki;
  for (int y : ta.at(vt))
    if (y != pt) kt.emplace_back(rooted_canon(ta, y, vt), y);
  for (int y : ia.at(vi))
    if (y != pi) ki.emplace_back(rooted_canon(ia, y, vi), y);
  if (kt.size() != ki.size()) return false;
  std::sort(kt.begin(), kt.end());
  std::sort(ki.begin(), ki.end());
  for (size_t i = 0; i < kt.size(); ++i)
    if (kt[i].first != ki[i].first) return false;
  out[vt] = vi;
  for (size_t i = 0; i < kt.size(); ++i)
    if (!match_rooted(ta, ia, kt[i].second, vt, ki[i].second, vi, out)) return false;
  return true;
}

std::optional<std::vector<int>> tree_embedding_from_edges(const Tree& t,
                                                          const std::vector<Edge>& edges) {
  if (static_cast<int>(edges.size()) != t.n() - 1) return std::nullopt;
  Adj ia;
  for (const Edge& e : edges) {
    ia[e.u].push_back(e.v);
    ia[e.v].push_back(e.u);
  }
  if (static_cast<int>(ia.size()) != t.n()) return std::nullopt;
  // connectivity
  {
    std::set<int> seen;
    std::vector<int> stack{ia.begin()->first};
    seen.insert(stack[0]);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int y : ia.at(v))
        if (seen.insert(y).second) stack.push_back(y);
    }
    if (seen.size() != ia.size()) return std::nullopt;
  }
  Adj ta;
  for (int v = 0; v < t.n(); ++v) ta[v] = t.g.neighbors(v);
  std::vector<int> ct = centers_of(ta), ci = centers_of(ia);
  if (ct.size() != ci.size()) return std::nullopt;
  std::vector<int> out(t.n(), -1);
  if (ct.size() == 1) {
    if (match_rooted(ta, ia, ct[0], -1, ci[0], -1, out)) return out;
    return std::nullopt;
  }
  for (int flip = 0; flip < 2; ++flip) {
    int c0 = ci[flip], c1 = ci[1 - flip];
    std::fill(out.begin(), out.end(), -1);
    if (match_rooted(ta, ia, ct[0], ct[1], c0, c1, out) &&
        match_rooted(ta, ia, ct[1], ct[0], c1, c0, out))
      return out;
  }
  return std::nullopt;
}

// ---- completion search engine ----

struct Ctx {
  const Graph& g;
  std::vector<int> cls;  // 0-based lower-class index, -1 above
  std::set<Edge> used;
  unsigned long long* nodes = nullptr;
  unsigned long long cap = 0;

  bool free_edge(int u, int v) const {
    return u >= 0 && v >= 0 && u != v && g.has_edge(u, v) && !used.count(make_edge(u, v));
  }
  void tick() {
    if (++*nodes > cap) throw BudgetHit{};
  }
};

using Cont = const std::function<bool()>&;
using Step = std::function<bool(Cont)>;

bool run_steps(const std::vector<Step>& steps, size_t i) {
  if (i == steps.size()) return true;
  return steps[i]([&] { return run_steps(steps, i + 1); });
}

// Attach one new leaf of the given tree: an uncolored edge from `from()` to a
// vertex of an allowed lower class, not already in the tree's image.
Step attach_step(Ctx& c, std::function<int()> from, std::function<std::vector<int>()> classes,
                 std::set<int>& occ, std::vector<Edge>& edges, int& out,
                 const int* prefer = nullptr) {
  return [&c, from, classes, &occ, &edges, &out, prefer](Cont next) -> bool {
    int f = from();
    std::vector<int> allowed = classes();
    auto eligible = [&](int y) {
      if (occ.count(y)) return false;
      bool in = false;
      for (int cl : allowed)
        if (c.cls[y] == cl) in = true;
      return in && c.free_edge(f, y);
    };
    std::vector<int> cands;
    if (prefer && *prefer >= 0 && eligible(*prefer)) cands.push_back(*prefer);
    for (int y : c.g.neighbors(f))
      if (eligible(y) && !(prefer && y == *prefer)) cands.push_back(y);
    for (int y : cands) {
      c.tick();
      Edge e = make_edge(f, y);
      c.used.insert(e);
      edges.push_back(e);
      occ.insert(y);
      out = y;
      if (next()) return true;
      out = -1;
      occ.erase(y);
      edges.pop_back();
      c.used.erase(e);
    }
    return false;
  };
}

Step attach_fixed(Ctx& c, std::function<int()> from, std::vector<int> classes, std::set<int>& occ,
                  std::vector<Edge>& edges, int& out, const int* prefer = nullptr) {
  return attach_step(
      c, std::move(from), [classes] { return classes; }, occ, edges, out, prefer);
}

// `count` extra leaves at `base`, all distinct, outside the tree's image.
Step fan_step(Ctx& c, const int& base, int count, std::set<int>& occ, std::vector<Edge>& edges,
              std::vector<int>& out) {
  return [&c, &base, count, &occ, &edges, &out](Cont next) -> bool {
    std::vector<int> elig;
    for (int y : c.g.neighbors(base))
      if (!occ.count(y) && c.free_edge(base, y)) elig.push_back(y);
    std::function<bool(size_t, int)> rec = [&](size_t start, int left) -> bool {
      if (left == 0) return next();
      for (size_t i = start; i + left <= elig.size(); ++i) {
        int y = elig[i];
        if (occ.count(y) || !c.free_edge(base, y)) continue;
        c.tick();
        Edge e = make_edge(base, y);
        c.used.insert(e);
        edges.push_back(e);
        occ.insert(y);
        out.push_back(y);
        if (rec(i + 1, left - 1)) return true;
        out.pop_back();
        occ.erase(y);
        edges.pop_back();
        c.used.erase(e);
      }
      return false;
    };
    return rec(0, count);
  };
}

// Anchor candidates: designated vertices first, then the remaining
// lower-class vertices by descending free degree.
std::function<std::vector<int>()> anchor_list(const Ctx& c, std::vector<const int*> designated) {
  return [&c, designated] {
    std::vector<int> out;
    std::set<int> seen;
    for (const int* p : designated)
      if (p && *p >= 0 && seen.insert(*p).second) out.push_back(*p);
    std::vector<std::pair<int, int>> rest;
    for (int v = 0; v < c.g.n(); ++v) {
      if (c.cls[v] < 0 || seen.count(v)) continue;
      int fd = 0;
      for (int y : c.g.neighbors(v))
        if (c.free_edge(v, y)) ++fd;
      rest.emplace_back(-fd, v);
    }
    std::sort(rest.begin(), rest.end());
    for (const auto& [nfd, v] : rest) out.push_back(v);
    return out;
  };
}

// One deferred star: pick an anchor, take order-1 free incident edges,
// preferring leaves outside the lower classes.
Step star_step(Ctx& c, int order, std::function<std::vector<int>()> anchors,
               std::map<int, std::vector<Edge>>& colors) {
  return [&c, order, anchors, &colors](Cont next) -> bool {
    int need = order - 1;
    for (int a : anchors()) {
      c.tick();
      std::vector<int> leaves;
      for (int pass = 0; pass < 2 && static_cast<int>(leaves.size()) < need; ++pass)
        for (int y : c.g.neighbors(a)) {
          if (static_cast<int>(leaves.size()) == need) break;
          bool upper = c.cls[y] < 0;
          if ((pass == 0) != upper) continue;
          if (c.free_edge(a, y)) leaves.push_back(y);
        }
      if (static_cast<int>(leaves.size()) < need) continue;
      std::vector<Edge>& sink = colors[order];
      for (int y : leaves) {
        Edge e = make_edge(a, y);
        c.used.insert(e);
        sink.push_back(e);
      }
      if (next()) return true;
      for (int y : leaves) c.used.erase(make_edge(a, y));
      sink.resize(sink.size() - leaves.size());
      if (sink.empty()) colors.erase(order);
    }
    return false;
  };
}

Step index_step(Ctx& c, int count, int& out) {
  return [&c, count, &out](Cont next) -> bool {
    for (int i = 0; i < count; ++i) {
      c.tick();
      out = i;
      if (next()) return true;
    }
    out = -1;
    return false;
  };
}

Step vertex_step(Ctx& c, std::vector<int> cands, int& out) {
  return [&c, cands, &out](Cont next) -> bool {
    for (int v : cands) {
      c.tick();
      out = v;
      if (next()) return true;
    }
    out = -1;
    return false;
  };
}

struct Env {
  Ctx& c;
  const TreeFamily& family;
  const ReductionPlan& plan;
  const AppliedReduction& applied;
  std::map<int, std::vector<int>>& img;       // original order -> partial image, -1 on victims
  std::map<int, std::set<int>>& occ;          // per modified order: occupied host vertices
  std::map<int, std::vector<Edge>>& colors;   // per original order: its edges so far
  int k = 0;
};

const TreeRemoval::Group& group_of(const Env& e, int order, size_t gi) {
  for (const TreeRemoval& r : e.plan.removals)
    if (r.order == order) {
      if (gi >= r.groups.size()) throw std::logic_error("missing removal group");
      return r.groups[gi];
    }
  throw std::logic_error("missing removal entry for order " + std::to_string(order));
}

int rimg(const Env& e, int order, int old_vid) {
  const std::vector<int>& im = e.img.at(order);
  if (old_vid < 0 || old_vid >= static_cast<int>(im.size()) || im[old_vid] < 0)
    throw std::logic_error("role vertex has no surviving image");
  return im[old_vid];
}

// ---- per-case completion scripts ----

bool h_claim1(Env& e) {
  std::vector<Step> steps;
  steps.push_back(star_step(e.c, e.k, anchor_list(e.c, {}), e.colors));
  return run_steps(steps, 0);
}

bool h_claim2(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& gk = group_of(e, k, 0);
  int a = -1;
  std::vector<Step> steps;
  steps.push_back(attach_fixed(
      e.c, [&e, &gk, k] { return rimg(e, k, gk.attachments[0]); }, {0}, e.occ[k], e.colors[k], a));
  steps.push_back(star_step(e.c, k - 1, anchor_list(e.c, {&a}), e.colors));
  return run_steps(steps, 0);
}

bool h_claim3(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& gk = group_of(e, k, 0);
  const TreeRemoval::Group& g1 = group_of(e, k - 1, 0);
  int swu = 0, swx = 0, a = -1, b = -1, ap = -1, bp = -1;
  std::vector<Step> steps;
  steps.push_back(index_step(e.c, 2, swu));
  steps.push_back(index_step(e.c, 2, swx));
  steps.push_back(attach_fixed(
      e.c, [&e, &gk, &swu, k] { return rimg(e, k, gk.attachments[swu]); }, {0}, e.occ[k],
      e.colors[k], a));
  steps.push_back(attach_fixed(
      e.c, [&e, &gk, &swu, k] { return rimg(e, k, gk.attachments[1 - swu]); }, {1}, e.occ[k],
      e.colors[k], b));
  steps.push_back(attach_fixed(
      e.c, [&e, &g1, &swx, k] { return rimg(e, k - 1, g1.attachments[swx]); }, {0}, e.occ[k - 1],
      e.colors[k - 1], ap));
  steps.push_back(attach_fixed(
      e.c, [&e, &g1, &swx, k] { return rimg(e, k - 1, g1.attachments[1 - swx]); }, {1},
      e.occ[k - 1], e.colors[k - 1], bp));
  steps.push_back(star_step(e.c, k - 2, anchor_list(e.c, {&a, &b}), e.colors));
  steps.push_back(star_step(e.c, k - 3, anchor_list(e.c, {&b, &a}), e.colors));
  return run_steps(steps, 0);
}

bool h_claim4(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& gk = group_of(e, k, 0);
  int r = static_cast<int>(gk.victims.size());
  int a = -1;
  std::vector<int> ds;
  std::vector<Step> steps;
  steps.push_back(attach_fixed(
      e.c, [&e, &gk, k] { return rimg(e, k, gk.attachments[0]); }, {0}, e.occ[k], e.colors[k], a));
  steps.push_back(fan_step(e.c, a, r - 1, e.occ[k], e.colors[k], ds));
  steps.push_back(star_step(e.c, k - r, anchor_list(e.c, {&a}), e.colors));
  return run_steps(steps, 0);
}

bool h_claim5(Env& e) {
  // Reduced shapes at this point: slot 4 holds the big tree minus its pending
  // star (a 4-path), slot 3 the 4-vertex path minus a leaf (a 3-path).
  bool spider6 = classify(e.family.tree(6)).is_spider;
  const AppliedReduction::Fate& f6 = e.applied.fates[6 - 2];
  const AppliedReduction::Fate& f4 = e.applied.fates[4 - 2];
  const Tree& t6r = e.applied.reduced.tree(f6.new_order);
  const Tree& t4r = e.applied.reduced.tree(f4.new_order);
  std::vector<int> ucands, vcands;
  for (int old = 0; old < static_cast<int>(f6.old_to_new.size()); ++old) {
    int nv = f6.old_to_new[old];
    if (nv < 0) continue;
    if (t6r.g.degree(nv) == (spider6 ? 2 : 1)) ucands.push_back(e.img.at(6)[old]);
  }
  for (int old = 0; old < static_cast<int>(f4.old_to_new.size()); ++old) {
    int nv = f4.old_to_new[old];
    if (nv < 0) continue;
    if (t4r.g.degree(nv) == 1) vcands.push_back(e.img.at(4)[old]);
  }
  std::sort(ucands.begin(), ucands.end());
  std::sort(vcands.begin(), vcands.end());

  int u = -1, a = -1, v = -1, b = -1;
  std::vector<int> d1;
  std::vector<Step> steps;
  steps.push_back(vertex_step(e.c, ucands, u));
  steps.push_back(attach_fixed(
      e.c, [&u] { return u; }, {0}, e.occ[6], e.colors[6], a));
  steps.push_back(fan_step(e.c, a, 1, e.occ[6], e.colors[6], d1));
  steps.push_back(vertex_step(e.c, vcands, v));
  steps.push_back(attach_fixed(
      e.c, [&v] { return v; }, {0}, e.occ[4], e.colors[4], b));
  steps.push_back(star_step(e.c, 3, anchor_list(e.c, {&a}), e.colors));
  return run_steps(steps, 0);
}

bool h_case1(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& gr = group_of(e, k, 0);    // pending star, neighbor u
  const TreeRemoval::Group& gl = group_of(e, k, 1);    // single leaf, neighbor v
  const TreeRemoval::Group& g1 = group_of(e, k - 1, 0);  // single leaf, neighbor x
  int a = -1, b = -1, p = -1;
  std::vector<int> ds;
  std::vector<Step> steps;
  steps.push_back(attach_fixed(
      e.c, [&e, &gl, k] { return rimg(e, k, gl.attachments[0]); }, {0}, e.occ[k], e.colors[k], a));
  steps.push_back(attach_fixed(
      e.c, [&e, &gr, k] { return rimg(e, k, gr.attachments[0]); }, {1}, e.occ[k], e.colors[k], b));
  steps.push_back(fan_step(e.c, b, 2, e.occ[k], e.colors[k], ds));
  steps.push_back(attach_fixed(
      e.c, [&e, &g1, k] { return rimg(e, k - 1, g1.attachments[0]); }, {0, 1}, e.occ[k - 1],
      e.colors[k - 1], p));
  steps.push_back(star_step(e.c, k - 2, anchor_list(e.c, {&a, &b}), e.colors));
  steps.push_back(star_step(e.c, k - 4, anchor_list(e.c, {&b, &a}), e.colors));
  return run_steps(steps, 0);
}

bool h_case2_1(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& r1 = group_of(e, k, 0);
  const TreeRemoval::Group& r2 = group_of(e, k, 1);
  const TreeRemoval::Group& g1 = group_of(e, k - 1, 0);  // two leaves, neighbors x, y
  int swu = 0, swx = 0, a = -1, b = -1, p = -1, q = -1;
  std::vector<int> d1, d2;
  auto ps_att = [&e, &r1, &r2, k](int idx) {
    return rimg(e, k, (idx == 0 ? r1 : r2).attachments[0]);
  };
  std::vector<Step> steps;
  steps.push_back(index_step(e.c, 2, swu));
  steps.push_back(index_step(e.c, 2, swx));
  steps.push_back(attach_fixed(
      e.c, [ps_att, &swu] { return ps_att(swu); }, {0}, e.occ[k], e.colors[k], a));
  steps.push_back(fan_step(e.c, a, 1, e.occ[k], e.colors[k], d1));
  steps.push_back(attach_fixed(
      e.c, [ps_att, &swu] { return ps_att(1 - swu); }, {1}, e.occ[k], e.colors[k], b));
  steps.push_back(fan_step(e.c, b, 1, e.occ[k], e.colors[k], d2));
  steps.push_back(attach_fixed(
      e.c, [&e, &g1, &swx, k] { return rimg(e, k - 1, g1.attachments[swx]); }, {0, 1},
      e.occ[k - 1], e.colors[k - 1], p));
  steps.push_back(attach_fixed(
      e.c, [&e, &g1, &swx, k] { return rimg(e, k - 1, g1.attachments[1 - swx]); }, {0, 1},
      e.occ[k - 1], e.colors[k - 1], q));
  steps.push_back(star_step(e.c, k - 3, anchor_list(e.c, {&a, &b}), e.colors));
  steps.push_back(star_step(e.c, k - 4, anchor_list(e.c, {&b, &a}), e.colors));
  return run_steps(steps, 0);
}

bool h_case2_2_1(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& gu = group_of(e, k, 0);      // three leaves, u_1..u_3
  const TreeRemoval::Group& gr = group_of(e, k - 1, 0);  // pending star order r, neighbor x
  const TreeRemoval::Group& gw = group_of(e, k - 2, 0);  // two leaves, w and z
  int r = static_cast<int>(gr.victims.size());
  int pu = 0, pw = 0, a = -1, b = -1, cc = -1, e3 = -1, f = -1, g2 = -1;
  std::vector<int> ds;
  auto urole = [&e, &gu, &pu, k](int role) {
    return rimg(e, k, gu.attachments[kPerm3[pu][role]]);
  };
  std::vector<Step> steps;
  steps.push_back(index_step(e.c, 6, pu));
  steps.push_back(index_step(e.c, 2, pw));
  steps.push_back(attach_fixed(
      e.c, [&e, &gr, k] { return rimg(e, k - 1, gr.attachments[0]); }, {0}, e.occ[k - 1],
      e.colors[k - 1], a));
  steps.push_back(fan_step(e.c, a, r - 1, e.occ[k - 1], e.colors[k - 1], ds));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(0); }, {1}, e.occ[k], e.colors[k], b));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(1); }, {2}, e.occ[k], e.colors[k], cc));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(2); }, {0}, e.occ[k], e.colors[k], e3));
  steps.push_back(attach_step(
      e.c, [&e, &gw, k] { return rimg(e, k - 2, gw.attachments[0]); },
      [&pw] { return std::vector<int>{pw == 0 ? 1 : 2}; }, e.occ[k - 2], e.colors[k - 2], f));
  steps.push_back(attach_step(
      e.c, [&e, &gw, k] { return rimg(e, k - 2, gw.attachments[1]); },
      [&pw] { return std::vector<int>{pw == 0 ? 2 : 1}; }, e.occ[k - 2], e.colors[k - 2], g2));
  steps.push_back(star_step(e.c, k - r - 1, anchor_list(e.c, {&a}), e.colors));
  steps.push_back(star_step(e.c, k - 3, anchor_list(e.c, {&b, &cc}), e.colors));
  steps.push_back(star_step(e.c, k - 4, anchor_list(e.c, {&cc, &b}), e.colors));
  return run_steps(steps, 0);
}

bool h_case2_2_2_1(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& gu = group_of(e, k, 0);
  const TreeRemoval::Group& gx = group_of(e, k - 1, 0);  // pending star order 3, neighbor x
  const TreeRemoval::Group& gw = group_of(e, k - 2, 0);  // pending star order r, neighbor w
  int r = static_cast<int>(gw.victims.size());
  int pu = 0, cc = -1, e1 = -1, e2 = -1, a = -1, b1 = -1, b2 = -1, b3 = -1;
  std::vector<int> ds;
  auto urole = [&e, &gu, &pu, k](int role) {
    return rimg(e, k, gu.attachments[kPerm3[pu][role]]);
  };
  std::vector<Step> steps;
  steps.push_back(index_step(e.c, 6, pu));
  steps.push_back(attach_fixed(
      e.c, [&e, &gx, k] { return rimg(e, k - 1, gx.attachments[0]); }, {2}, e.occ[k - 1],
      e.colors[k - 1], cc));
  steps.push_back(attach_fixed(
      e.c, [&cc] { return cc; }, {0}, e.occ[k - 1], e.colors[k - 1], e1));
  steps.push_back(attach_fixed(
      e.c, [&cc] { return cc; }, {1}, e.occ[k - 1], e.colors[k - 1], e2));
  steps.push_back(attach_fixed(
      e.c, [&e, &gw, k] { return rimg(e, k - 2, gw.attachments[0]); }, {0}, e.occ[k - 2],
      e.colors[k - 2], a));
  steps.push_back(fan_step(e.c, a, r - 1, e.occ[k - 2], e.colors[k - 2], ds));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(2); }, {2}, e.occ[k], e.colors[k], b3));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(1); }, {0}, e.occ[k], e.colors[k], b2));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(0); }, {1}, e.occ[k], e.colors[k], b1));
  steps.push_back(star_step(e.c, k - r - 2, anchor_list(e.c, {&a}), e.colors));
  steps.push_back(star_step(e.c, k - 4, anchor_list(e.c, {&cc}), e.colors));
  steps.push_back(star_step(e.c, k - 3, anchor_list(e.c, {}), e.colors));
  return run_steps(steps, 0);
}

bool h_case2_2_2_2(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& gu = group_of(e, k, 0);
  const TreeRemoval::Group& gx = group_of(e, k - 1, 0);  // pending star order 3, neighbor x
  const TreeRemoval::Group& gw = group_of(e, k - 2, 0);  // pending star order 2, neighbor w
  const TreeRemoval::Group& gz = group_of(e, k - 2, 1);  // one leaf, neighbor z
  int pu = 0, cc = -1, e1 = -1, e2 = -1, a = -1, b = -1;
  std::vector<int> d1;
  auto urole = [&e, &gu, &pu, k](int role) {
    return rimg(e, k, gu.attachments[kPerm3[pu][role]]);
  };
  std::vector<Step> steps;
  steps.push_back(index_step(e.c, 6, pu));
  steps.push_back(attach_fixed(
      e.c, [&e, &gx, k] { return rimg(e, k - 1, gx.attachments[0]); }, {2}, e.occ[k - 1],
      e.colors[k - 1], cc));
  steps.push_back(attach_fixed(
      e.c, [&cc] { return cc; }, {0}, e.occ[k - 1], e.colors[k - 1], e1));
  steps.push_back(attach_fixed(
      e.c, [&cc] { return cc; }, {1}, e.occ[k - 1], e.colors[k - 1], e2));
  steps.push_back(attach_fixed(
      e.c, [&e, &gw, k] { return rimg(e, k - 2, gw.attachments[0]); }, {0}, e.occ[k - 2],
      e.colors[k - 2], a));
  steps.push_back(attach_fixed(
      e.c, [&e, &gz, k] { return rimg(e, k - 2, gz.attachments[0]); }, {1}, e.occ[k - 2],
      e.colors[k - 2], b));
  steps.push_back(fan_step(e.c, a, 1, e.occ[k - 2], e.colors[k - 2], d1));
  int t3 = -1, t2 = -1, t1 = -1;
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(2); }, {2}, e.occ[k], e.colors[k], t3));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(1); }, {0}, e.occ[k], e.colors[k], t2));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(0); }, {1}, e.occ[k], e.colors[k], t1));
  steps.push_back(star_step(e.c, k - 5, anchor_list(e.c, {&a}), e.colors));
  steps.push_back(star_step(e.c, k - 4, anchor_list(e.c, {&b}), e.colors));
  steps.push_back(star_step(e.c, k - 3, anchor_list(e.c, {&cc}), e.colors));
  return run_steps(steps, 0);
}

bool h_case2_3_1(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& gu = group_of(e, k, 0);
  const TreeRemoval::Group& rx = group_of(e, k - 1, 0);  // pending star order 2, neighbor x
  const TreeRemoval::Group& ry = group_of(e, k - 1, 1);  // pending star order 2, neighbor y
  const TreeRemoval::Group& gw = group_of(e, k - 2, 0);  // two leaves, w and z
  int swx = 0, pu = 0, pwz = 0, a = -1, b = -1, cc = -1, tw = -1, tz = -1, t1 = -1, t2 = -1;
  std::vector<int> d1, f1;
  auto xrole = [&e, &rx, &ry, &swx, k](int idx) {
    return rimg(e, k - 1, ((idx ^ swx) == 0 ? rx : ry).attachments[0]);
  };
  auto urole = [&e, &gu, &pu, k](int role) {
    return rimg(e, k, gu.attachments[kPerm3[pu][role]]);
  };
  std::vector<Step> steps;
  steps.push_back(index_step(e.c, 2, swx));
  steps.push_back(index_step(e.c, 6, pu));
  steps.push_back(index_step(e.c, 6, pwz));
  steps.push_back(attach_fixed(
      e.c, [xrole] { return xrole(0); }, {0}, e.occ[k - 1], e.colors[k - 1], a));
  steps.push_back(fan_step(e.c, a, 1, e.occ[k - 1], e.colors[k - 1], d1));
  steps.push_back(attach_fixed(
      e.c, [xrole] { return xrole(1); }, {1}, e.occ[k - 1], e.colors[k - 1], b));
  steps.push_back(fan_step(e.c, b, 1, e.occ[k - 1], e.colors[k - 1], f1));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(2); }, {2}, e.occ[k], e.colors[k], cc));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(0); }, {1}, e.occ[k], e.colors[k], t1));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(1); }, {0}, e.occ[k], e.colors[k], t2));
  steps.push_back(attach_step(
      e.c, [&e, &gw, k] { return rimg(e, k - 2, gw.attachments[0]); },
      [&pwz] { return std::vector<int>{kClassPairs[pwz][0]}; }, e.occ[k - 2], e.colors[k - 2],
      tw));
  steps.push_back(attach_step(
      e.c, [&e, &gw, k] { return rimg(e, k - 2, gw.attachments[1]); },
      [&pwz] { return std::vector<int>{kClassPairs[pwz][1]}; }, e.occ[k - 2], e.colors[k - 2],
      tz));
  steps.push_back(star_step(e.c, k - 5, anchor_list(e.c, {&a, &b, &cc}), e.colors));
  steps.push_back(star_step(e.c, k - 4, anchor_list(e.c, {&b, &a, &cc}), e.colors));
  steps.push_back(star_step(e.c, k - 3, anchor_list(e.c, {&cc, &b, &a}), e.colors));
  return run_steps(steps, 0);
}

bool h_case2_3_2_1(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& gu = group_of(e, k, 0);      // three leaves, u_1..u_3
  const TreeRemoval::Group& gx = group_of(e, k - 1, 0);  // three leaves, x_1..x_3
  const TreeRemoval::Group& gw = group_of(e, k - 2, 0);  // pending star order r, neighbor w
  int r = static_cast<int>(gw.victims.size());
  int pu = 0, px = 0, sx = 0, a = -1, b = -1, cc = -1, e3 = -1, x2t = -1, x1t = -1, x3t = -1;
  std::vector<int> ds;
  auto urole = [&e, &gu, &pu, k](int role) {
    return rimg(e, k, gu.attachments[kPerm3[pu][role]]);
  };
  auto xrole = [&e, &gx, &px, k](int role) {
    return rimg(e, k - 1, gx.attachments[kPerm3[px][role]]);
  };
  std::vector<Step> steps;
  steps.push_back(index_step(e.c, 6, pu));
  steps.push_back(index_step(e.c, 6, px));
  steps.push_back(index_step(e.c, 2, sx));
  steps.push_back(attach_fixed(
      e.c, [&e, &gw, k] { return rimg(e, k - 2, gw.attachments[0]); }, {0}, e.occ[k - 2],
      e.colors[k - 2], a));
  steps.push_back(fan_step(e.c, a, r - 1, e.occ[k - 2], e.colors[k - 2], ds));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(2); }, {0}, e.occ[k], e.colors[k], e3, &a));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(0); }, {1}, e.occ[k], e.colors[k], b));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(1); }, {2}, e.occ[k], e.colors[k], cc));
  steps.push_back(attach_fixed(
      e.c, [xrole] { return xrole(1); }, {0}, e.occ[k - 1], e.colors[k - 1], x2t, &a));
  steps.push_back(attach_step(
      e.c, [xrole] { return xrole(0); },
      [&sx] { return std::vector<int>{sx == 0 ? 1 : 2}; }, e.occ[k - 1], e.colors[k - 1], x1t));
  steps.push_back(attach_step(
      e.c, [xrole] { return xrole(2); },
      [&sx] { return std::vector<int>{sx == 0 ? 2 : 1}; }, e.occ[k - 1], e.colors[k - 1], x3t));
  steps.push_back(star_step(e.c, k - r - 2, anchor_list(e.c, {&a}), e.colors));
  steps.push_back(star_step(e.c, k - 4, anchor_list(e.c, {&b, &cc}), e.colors));
  steps.push_back(star_step(e.c, k - 3, anchor_list(e.c, {&cc, &b}), e.colors));
  return run_steps(steps, 0);
}

bool h_case2_3_2_2(Env& e) {
  int k = e.k;
  const TreeRemoval::Group& gu = group_of(e, k, 0);
  const TreeRemoval::Group& gx = group_of(e, k - 1, 0);
  const TreeRemoval::Group& gw = group_of(e, k - 2, 0);  // pending star order 2, neighbor w
  const TreeRemoval::Group& gz = group_of(e, k - 2, 1);  // one leaf, neighbor z
  int pu = 0, px = 0, su = 0, a = -1, b = -1, u1t = -1, x1t = -1, x2t = -1, x3t = -1, u2t = -1,
      u3t = -1;
  std::vector<int> d1;
  auto urole = [&e, &gu, &pu, k](int role) {
    return rimg(e, k, gu.attachments[kPerm3[pu][role]]);
  };
  auto xrole = [&e, &gx, &px, k](int role) {
    return rimg(e, k - 1, gx.attachments[kPerm3[px][role]]);
  };
  std::vector<Step> steps;
  steps.push_back(index_step(e.c, 6, pu));
  steps.push_back(index_step(e.c, 6, px));
  steps.push_back(index_step(e.c, 2, su));
  steps.push_back(attach_fixed(
      e.c, [&e, &gz, k] { return rimg(e, k - 2, gz.attachments[0]); }, {0}, e.occ[k - 2],
      e.colors[k - 2], a));
  steps.push_back(attach_fixed(
      e.c, [&e, &gw, k] { return rimg(e, k - 2, gw.attachments[0]); }, {1}, e.occ[k - 2],
      e.colors[k - 2], b));
  steps.push_back(fan_step(e.c, b, 1, e.occ[k - 2], e.colors[k - 2], d1));
  steps.push_back(attach_fixed(
      e.c, [urole] { return urole(0); }, {1}, e.occ[k], e.colors[k], u1t));
  steps.push_back(attach_fixed(
      e.c, [xrole] { return xrole(0); }, {1}, e.occ[k - 1], e.colors[k - 1], x1t));
  steps.push_back(attach_fixed(
      e.c, [xrole] { return xrole(1); }, {2}, e.occ[k - 1], e.colors[k - 1], x2t));
  steps.push_back(attach_fixed(
      e.c, [xrole] { return xrole(2); }, {0}, e.occ[k - 1], e.colors[k - 1], x3t));
  steps.push_back(attach_step(
      e.c, [urole] { return urole(1); },
      [&su] { return std::vector<int>{su == 0 ? 0 : 2}; }, e.occ[k], e.colors[k], u2t));
  steps.push_back(attach_step(
      e.c, [urole] { return urole(2); },
      [&su] { return std::vector<int>{su == 0 ? 2 : 0}; }, e.occ[k], e.colors[k], u3t));
  steps.push_back(star_step(e.c, k - 5, anchor_list(e.c, {&a, &b}), e.colors));
  steps.push_back(star_step(e.c, k - 4, anchor_list(e.c, {&b, &a}), e.colors));
  steps.push_back(star_step(e.c, k - 3, anchor_list(e.c, {}), e.colors));
  return run_steps(steps, 0);
}

struct CompletionResult {
  Packing packing;
  EmbeddingSet images;
};

CompletionResult complete_case(const Graph& g, const OrderedColoring& classes,
                               const TreeFamily& family, const ReductionPlan& plan,
                               const AppliedReduction& applied, const Packing& sub,
                               const EmbeddingSet& sub_images, unsigned long long* nodes,
                               unsigned long long cap) {
  int k = family.k();
  int t = plan.recursion_depth_drop;

  Ctx ctx{g, std::vector<int>(g.n(), -1), {}, nodes, cap};
  for (int i = 0; i < t; ++i)
    for (int v : classes.classes[i]) ctx.cls[v] = i;

  std::map<int, std::vector<Edge>> colors;
  std::map<int, std::vector<int>> img;
  std::map<int, std::set<int>> occ;
  size_t sub_edges = 0;

  for (const AppliedReduction::Fate& fate : applied.fates) {
    if (fate.new_order < 0) continue;  // deferred star
    auto ce = sub.colors.find(fate.new_order);
    if (ce == sub.colors.end())
      throw std::runtime_error("sub packing missing color " + std::to_string(fate.new_order));
    auto ie = sub_images.find(fate.new_order);
    if (ie == sub_images.end())
      throw std::runtime_error("sub embedding missing order " + std::to_string(fate.new_order));
    colors[fate.original_order] = ce->second;
    sub_edges += ce->second.size();
    for (const Edge& e : ce->second) ctx.used.insert(e);
    std::vector<int> im(family.tree(fate.original_order).n(), -1);
    for (int old = 0; old < static_cast<int>(fate.old_to_new.size()); ++old)
      if (fate.old_to_new[old] >= 0) im[old] = ie->second.at(fate.old_to_new[old]);
    std::set<int>& o = occ[fate.original_order];
    for (int v : im)
      if (v >= 0) o.insert(v);
    img[fate.original_order] = std::move(im);
  }

  Env env{ctx, family, plan, applied, img, occ, colors, k};
  bool done = false;
  try {
    switch (plan.case_tag) {
      case CaseTag::CLAIM1: done = h_claim1(env); break;
      case CaseTag::CLAIM2: done = h_claim2(env); break;
      case CaseTag::CLAIM3: done = h_claim3(env); break;
      case CaseTag::CLAIM4: done = h_claim4(env); break;
      case CaseTag::CLAIM5: done = h_claim5(env); break;
      case CaseTag::CASE1: done = h_case1(env); break;
      case CaseTag::CASE2_1: done = h_case2_1(env); break;
      case CaseTag::CASE2_2_1: done = h_case2_2_1(env); break;
      case CaseTag::CASE2_2_2_1: done = h_case2_2_2_1(env); break;
      case CaseTag::CASE2_2_2_2: done = h_case2_2_2_2(env); break;
      case CaseTag::CASE2_3_1: done = h_case2_3_1(env); break;
      case CaseTag::CASE2_3_2_1: done = h_case2_3_2_1(env); break;
      case CaseTag::CASE2_3_2_2: done = h_case2_3_2_2(env); break;
      case CaseTag::BASE_K_LE_3:
        done = true;
        break;
    }
  } catch (const BudgetHit&) {
    throw FalsifyError(plan.case_tag, k,
                       "completion search budget exhausted in " + to_string(plan.case_tag) +
                           " at k=" + std::to_string(k));
  }
  if (!done) {
    std::string sizes;
    for (int i = 0; i < t; ++i)
      sizes += (i ? "," : "") + std::to_string(classes.classes[i].size());
    throw FalsifyError(plan.case_tag, k,
                       "no completion found for " + to_string(plan.case_tag) +
                           " at k=" + std::to_string(k) + " (lower class sizes [" + sizes +
                           "], sub edges " + std::to_string(sub_edges) + ")");
  }

  size_t removed = 0;
  for (const TreeRemoval& r : plan.removals)
    for (const TreeRemoval::Group& gr : r.groups) removed += gr.victims.size();
  size_t star_edges = 0;
  for (int o : plan.deferred_stars) star_edges += static_cast<size_t>(o - 1);
  size_t total = 0;
  for (const auto& [o, es] : colors) total += es.size();
  if (total != sub_edges + removed + star_edges)
    throw FalsifyError(plan.case_tag, k,
                       "edge accounting mismatch in " + to_string(plan.case_tag) + ": " +
                           std::to_string(total) + " != " + std::to_string(sub_edges) + "+" +
                           std::to_string(removed) + "+" + std::to_string(star_edges));

  CompletionResult out;
  out.packing.k = k;
  for (auto& [o, es] : colors) {
    std::sort(es.begin(), es.end());
    out.packing.colors[o] = es;
  }
  for (int o = 2; o <= k; ++o) {
    auto it = out.packing.colors.find(o);
    if (it == out.packing.colors.end())
      throw FalsifyError(plan.case_tag, k, "color " + std::to_string(o) + " missing after completion");
    std::optional<std::vector<int>> im = tree_embedding_from_edges(family.tree(o), it->second);
    if (!im)
      throw FalsifyError(plan.case_tag, k,
                         "color " + std::to_string(o) + " is not shaped like its tree after " +
                             to_string(plan.case_tag));
    out.images[o] = std::move(*im);
  }
  return out;
}

// ---- recursion host preparation and the packer itself ----

struct Level {
  Graph graph;
  OrderedColoring coloring;
  std::vector<int> new_to_old;
};

// Peel to min degree kp-1 (never removes a kp-chromatic-critical core), then
// re-establish the Grundy property. Collapsing below kp classes reports
// failure.
std::optional<Level> prepare_level(Graph g, std::vector<int> assign, int kp) {
  std::vector<int> n2o(g.n());
  std::iota(n2o.begin(), n2o.end(), 0);
  while (true) {
    if (g.n() == 0) return std::nullopt;
    std::vector<int> keep;
    for (int v = 0; v < g.n(); ++v)
      if (g.degree(v) >= kp - 1) keep.push_back(v);
    if (static_cast<int>(keep.size()) == g.n()) break;
    InducedSubgraph sub = induced_subgraph(g, keep);
    std::vector<int> a2(keep.size()), m2(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) {
      a2[i] = assign[keep[i]];
      m2[i] = n2o[keep[i]];
    }
    g = std::move(sub.graph);
    assign = std::move(a2);
    n2o = std::move(m2);
  }
  OrderedColoring refined = grundy_refine(g, assign);
  if (refined.k() != kp) return std::nullopt;
  return Level{std::move(g), std::move(refined), std::move(n2o)};
}

struct LevelResult {
  Packing packing;
  EmbeddingSet images;
};

LevelResult base_pack(const Graph& h, const OrderedColoring& classes, const TreeFamily& family) {
  LevelResult out;
  int k = family.k();
  out.packing.k = k;
  if (k == 2) {
    if (h.m() == 0) throw FalsifyError(CaseTag::BASE_K_LE_3, 2, "no edge for the 2-vertex tree");
    Edge e = h.edges()[0];
    out.packing.colors[2] = {e};
    out.images[2] = {e.u, e.v};
    return out;
  }
  std::vector<int> cls(h.n(), -1);
  for (int i = 0; i < 3; ++i)
    for (int v : classes.classes[i]) cls[v] = i;
  int x = -1, a = -1, b = -1;
  for (int cand : classes.classes[2]) {
    int ca = -1, cb = -1;
    for (int y : h.neighbors(cand)) {
      if (cls[y] == 0 && ca < 0) ca = y;
      if (cls[y] == 1 && cb < 0) cb = y;
    }
    if (ca >= 0 && cb >= 0) {
      x = cand;
      a = ca;
      b = cb;
      break;
    }
  }
  if (x < 0)
    throw FalsifyError(CaseTag::BASE_K_LE_3, 3, "no top-class vertex sees both lower classes");
  std::vector<Edge> p3{make_edge(x, a), make_edge(x, b)};
  std::sort(p3.begin(), p3.end());
  std::optional<std::vector<int>> im3 = tree_embedding_from_edges(family.tree(3), p3);
  if (!im3) throw FalsifyError(CaseTag::BASE_K_LE_3, 3, "3-vertex tree shape mismatch");
  out.packing.colors[3] = p3;
  out.images[3] = std::move(*im3);
  for (const Edge& e : h.edges())
    if (!(e == p3[0]) && !(e == p3[1])) {
      out.packing.colors[2] = {e};
      out.images[2] = {e.u, e.v};
      break;
    }
  if (!out.packing.colors.count(2))
    throw FalsifyError(CaseTag::BASE_K_LE_3, 3, "no spare edge for the 2-vertex tree");
  return out;
}

LevelResult pack_rec(const Graph& h, const OrderedColoring& classes, const TreeFamily& family,
                     unsigned long long* nodes, unsigned long long cap) {
  int k = family.k();
  if (classes.k() != k || !check_grundy(h, classes) || h.min_degree() < k - 1)
    throw FalsifyError(CaseTag::BASE_K_LE_3, k,
                       "recursion invariant violated at k=" + std::to_string(k) +
                           ": need a Grundy " + std::to_string(k) +
                           "-coloring with min degree >= " + std::to_string(k - 1));
  if (k <= 3) return base_pack(h, classes, family);

  ReductionPlan plan = select_reduction(family, k);
  AppliedReduction applied = apply_reduction_detailed(family, plan);
  int t = plan.recursion_depth_drop;

  PeeledTail tail = peel_tail(h, classes, k - t);
  std::vector<int> assign(tail.graph.n(), -1);
  for (int i = 0; i < tail.coloring.k(); ++i)
    for (int v : tail.coloring.classes[i]) assign[v] = i;
  std::optional<Level> lvl = prepare_level(tail.graph, assign, k - t);
  if (!lvl)
    throw FalsifyError(plan.case_tag, k,
                       "recursion host collapsed below " + std::to_string(k - t) +
                           " classes at k=" + std::to_string(k));

  LevelResult sub = pack_rec(lvl->graph, lvl->coloring, applied.reduced, nodes, cap);

  auto lift = [&](int v) { return tail.new_to_old[lvl->new_to_old[v]]; };
  Packing sub_l;
  sub_l.k = k - t;
  for (const auto& [o, es] : sub.packing.colors) {
    std::vector<Edge> up;
    up.reserve(es.size());
    for (const Edge& e : es) up.push_back(make_edge(lift(e.u), lift(e.v)));
    std::sort(up.begin(), up.end());
    sub_l.colors[o] = std::move(up);
  }
  EmbeddingSet img_l;
  for (const auto& [o, im] : sub.images) {
    std::vector<int> up;
    up.reserve(im.size());
    for (int v : im) up.push_back(lift(v));
    img_l[o] = std::move(up);
  }

  CompletionResult comp =
      complete_case(h, classes, family, plan, applied, sub_l, img_l, nodes, cap);
  return {std::move(comp.packing), std::move(comp.images)};
}

}  // namespace

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::BASE_K_LE_3: return "BASE_K_LE_3";
    case CaseTag::CLAIM1: return "CLAIM1";
    case CaseTag::CLAIM2: return "CLAIM2";
    case CaseTag::CLAIM3: return "CLAIM3";
    case CaseTag::CLAIM4: return "CLAIM4";
    case CaseTag::CLAIM5: return "CLAIM5";
    case CaseTag::CASE1: return "CASE1";
    case CaseTag::CASE2_1: return "CASE2_1";
    case CaseTag::CASE2_2_1: return "CASE2_2_1";
    case CaseTag::CASE2_2_2_1: return "CASE2_2_2_1";
    case CaseTag::CASE2_2_2_2: return "CASE2_2_2_2";
    case CaseTag::CASE2_3_1: return "CASE2_3_1";
    case CaseTag::CASE2_3_2_1: return "CASE2_3_2_1";
    case CaseTag::CASE2_3_2_2: return "CASE2_3_2_2";
  }
  return "UNKNOWN";
}

int TreeRemoval::new_order() const {
  int victims = 0;
  for (const Group& g : groups) victims += static_cast<int>(g.victims.size());
  return order - victims;
}

int non_star_count(const TreeFamily& family) {
  int count = 0;
  for (int o = 2; o <= family.k(); ++o)
    if (!classify(family.tree(o)).is_star) ++count;
  return count;
}

ReductionPlan select_reduction(const TreeFamily& family, int k) {
  if (k != family.k()) throw std::invalid_argument("k does not match the family");
  ReductionPlan plan;
  if (k <= 3) {
    plan.case_tag = CaseTag::BASE_K_LE_3;
    return plan;
  }
  if (non_star_count(family) > 3)
    throw std::invalid_argument(dispatch_dump(family, "more than 3 non-stars"));

  auto star_at = [&](int o) { return classify(family.tree(o)).is_star; };

  if (star_at(k)) {
    plan.case_tag = CaseTag::CLAIM1;
    plan.deferred_stars = {k};
    plan.recursion_depth_drop = 1;
    return plan;
  }
  if (star_at(k - 1)) {
    plan.case_tag = CaseTag::CLAIM2;
    const Tree& tk = family.tree(k);
    std::vector<int> ln = leaf_neighbor_vertices(tk);
    TreeRemoval rem;
    rem.order = k;
    rem.groups.push_back(leaves_group(tk, {ln[0]}));
    plan.removals.push_back(std::move(rem));
    plan.deferred_stars = {k - 1};
    plan.recursion_depth_drop = 1;
    return plan;
  }
  if (k >= 5 && star_at(k - 2) && star_at(k - 3)) {
    plan.case_tag = CaseTag::CLAIM3;
    auto [u, v] = two_leaf_neighbors(family.tree(k), "the largest tree");
    auto [x, y] = two_leaf_neighbors(family.tree(k - 1), "the second tree");
    TreeRemoval rk;
    rk.order = k;
    rk.groups.push_back(leaves_group(family.tree(k), {u, v}));
    TreeRemoval r1;
    r1.order = k - 1;
    r1.groups.push_back(leaves_group(family.tree(k - 1), {x, y}));
    plan.removals.push_back(std::move(rk));
    plan.removals.push_back(std::move(r1));
    plan.deferred_stars = {k - 2, k - 3};
    plan.recursion_depth_drop = 2;
    return plan;
  }
  {
    std::vector<PendingStar> ps = find_pending_stars(family.tree(k));
    const PendingStar* best = pick_pending_star(ps, [&](const PendingStar& p) {
      int r = p.order();
      return k - r >= 2 && star_at(k - r);
    });
    if (best) {
      plan.case_tag = CaseTag::CLAIM4;
      TreeRemoval rem;
      rem.order = k;
      rem.groups.push_back(ps_group(*best));
      plan.removals.push_back(std::move(rem));
      plan.deferred_stars = {k - best->order()};
      plan.recursion_depth_drop = 1;
      return plan;
    }
  }

  if (k <= 6) {
    if (k != 6) throw std::logic_error(dispatch_dump(family, "dispatch exhausted below k=6"));
    // All of T_4, T_5, T_6 are non-stars here and every pending star in T_6
    // has order 2, so T_6 is a 6-path or the (2,2,1) spider.
    std::vector<PendingStar> ps = find_pending_stars(family.tree(6));
    const PendingStar* r6 =
        pick_pending_star(ps, [](const PendingStar& p) { return p.order() == 2; });
    if (!r6) throw std::logic_error(dispatch_dump(family, "six-vertex tree has no order-2 pending star"));
    for (const PendingStar& p : ps)
      if (p.order() != 2)
        throw std::logic_error(dispatch_dump(family, "unexpected pending-star order at k=6"));
    plan.case_tag = CaseTag::CLAIM5;
    TreeRemoval r6rem;
    r6rem.order = 6;
    r6rem.groups.push_back(ps_group(*r6));
    TreeRemoval r4rem;
    r4rem.order = 4;
    std::vector<int> ln4 = leaf_neighbor_vertices(family.tree(4));
    r4rem.groups.push_back(leaves_group(family.tree(4), {ln4[0]}));
    plan.removals.push_back(std::move(r6rem));
    plan.removals.push_back(std::move(r4rem));
    plan.deferred_stars = {3};
    plan.recursion_depth_drop = 1;
    return plan;
  }

  // k >= 7: the two largest trees plus exactly one of the next two are
  // non-stars, and the pending stars of T_k share one order (2 or 3).
  bool s2 = star_at(k - 2), s3 = star_at(k - 3);
  if (s2 == s3)
    throw std::logic_error(dispatch_dump(family, "claims exhausted with an invalid star pattern"));
  std::vector<PendingStar> psk = find_pending_stars(family.tree(k));
  int expected = s3 ? 2 : 3;
  for (const PendingStar& p : psk)
    if (p.order() != expected)
      throw std::logic_error(dispatch_dump(family, "mixed pending-star orders in the largest tree"));

  if (expected == 3) {
    plan.case_tag = CaseTag::CASE1;
    const PendingStar* r = pick_pending_star(psk, [](const PendingStar&) { return true; });
    std::set<int> in_r{r->center};
    for (int leaf : r->leaves) in_r.insert(leaf);
    int v = -1;
    for (int cand : leaf_neighbor_vertices(family.tree(k)))
      if (cand != r->neighbor && !in_r.count(cand)) {
        v = cand;
        break;
      }
    if (v < 0) throw std::logic_error(dispatch_dump(family, "no second leaf spot beside the pending star"));
    TreeRemoval rk;
    rk.order = k;
    rk.groups.push_back(ps_group(*r));
    rk.groups.push_back(leaves_group(family.tree(k), {v}));
    TreeRemoval r1;
    r1.order = k - 1;
    std::vector<int> ln = leaf_neighbor_vertices(family.tree(k - 1));
    r1.groups.push_back(leaves_group(family.tree(k - 1), {ln[0]}));
    plan.removals.push_back(std::move(rk));
    plan.removals.push_back(std::move(r1));
    plan.deferred_stars = {k - 2, k - 4};
    plan.recursion_depth_drop = 2;
    return plan;
  }

  // expected == 2: T_{k-2} is the extra non-star.
  if (!classify(family.tree(k)).is_spider) {
    plan.case_tag = CaseTag::CASE2_1;
    const PendingStar* r1p = pick_pending_star(psk, [](const PendingStar&) { return true; });
    const PendingStar* r2p = nullptr;
    for (const PendingStar& p : psk)
      if (p.neighbor != r1p->neighbor) {
        r2p = &p;
        break;
      }
    if (!r2p)
      throw std::logic_error(dispatch_dump(family, "non-spider lacks pending stars with distinct neighbors"));
    TreeRemoval rk;
    rk.order = k;
    rk.groups.push_back(ps_group(*r1p));
    rk.groups.push_back(ps_group(*r2p));
    auto [x, y] = two_leaf_neighbors(family.tree(k - 1), "the second tree");
    TreeRemoval r1;
    r1.order = k - 1;
    r1.groups.push_back(leaves_group(family.tree(k - 1), {x, y}));
    plan.removals.push_back(std::move(rk));
    plan.removals.push_back(std::move(r1));
    plan.deferred_stars = {k - 3, k - 4};
    plan.recursion_depth_drop = 2;
    return plan;
  }

  // T_k is a spider: three leaf-carrying vertices exist since k > 6.
  std::vector<int> us = leaf_neighbor_vertices(family.tree(k));
  if (us.size() < 3) throw std::logic_error(dispatch_dump(family, "spider with fewer than 3 leaf spots"));
  TreeRemoval rk;
  rk.order = k;
  rk.groups.push_back(leaves_group(family.tree(k), {us[0], us[1], us[2]}));

  std::vector<PendingStar> ps1 = find_pending_stars(family.tree(k - 1));
  const PendingStar* big =
      pick_pending_star(ps1, [](const PendingStar& p) { return p.order() >= 4; });
  if (big) {
    plan.case_tag = CaseTag::CASE2_2_1;
    TreeRemoval r1;
    r1.order = k - 1;
    r1.groups.push_back(ps_group(*big));
    auto [w, z] = two_leaf_neighbors(family.tree(k - 2), "the third tree");
    TreeRemoval r2;
    r2.order = k - 2;
    r2.groups.push_back(leaves_group(family.tree(k - 2), {w, z}));
    plan.removals.push_back(std::move(rk));
    plan.removals.push_back(std::move(r1));
    plan.removals.push_back(std::move(r2));
    plan.deferred_stars = {k - big->order() - 1, k - 3, k - 4};
    plan.recursion_depth_drop = 3;
    return plan;
  }

  const PendingStar* mid =
      pick_pending_star(ps1, [](const PendingStar& p) { return p.order() == 3; });
  if (mid) {
    TreeRemoval r1;
    r1.order = k - 1;
    r1.groups.push_back(ps_group(*mid));
    std::vector<PendingStar> ps2 = find_pending_stars(family.tree(k - 2));
    const PendingStar* rp =
        pick_pending_star(ps2, [](const PendingStar& p) { return p.order() >= 3; });
    if (rp) {
      plan.case_tag = CaseTag::CASE2_2_2_1;
      TreeRemoval r2;
      r2.order = k - 2;
      r2.groups.push_back(ps_group(*rp));
      plan.removals.push_back(std::move(rk));
      plan.removals.push_back(std::move(r1));
      plan.removals.push_back(std::move(r2));
      plan.deferred_stars = {k - rp->order() - 2, k - 4, k - 3};
      plan.recursion_depth_drop = 3;
      return plan;
    }
    plan.case_tag = CaseTag::CASE2_2_2_2;
    const PendingStar* small =
        pick_pending_star(ps2, [](const PendingStar& p) { return p.order() == 2; });
    if (!small) throw std::logic_error(dispatch_dump(family, "third tree lost its pending stars"));
    std::set<int> in_r{small->center};
    for (int leaf : small->leaves) in_r.insert(leaf);
    int z = -1;
    for (int cand : leaf_neighbor_vertices(family.tree(k - 2)))
      if (cand != small->neighbor && !in_r.count(cand)) {
        z = cand;
        break;
      }
    if (z < 0) throw std::logic_error(dispatch_dump(family, "no spare leaf beside the third tree's pending star"));
    TreeRemoval r2;
    r2.order = k - 2;
    r2.groups.push_back(ps_group(*small));
    r2.groups.push_back(leaves_group(family.tree(k - 2), {z}));
    plan.removals.push_back(std::move(rk));
    plan.removals.push_back(std::move(r1));
    plan.removals.push_back(std::move(r2));
    plan.deferred_stars = {k - 5, k - 4, k - 3};
    plan.recursion_depth_drop = 3;
    return plan;
  }

  // Every pending star in T_{k-1} has order 2.
  if (!classify(family.tree(k - 1)).is_spider) {
    plan.case_tag = CaseTag::CASE2_3_1;
    const PendingStar* p1 = pick_pending_star(ps1, [](const PendingStar&) { return true; });
    const PendingStar* p2 = nullptr;
    for (const PendingStar& p : ps1)
      if (p.neighbor != p1->neighbor) {
        p2 = &p;
        break;
      }
    if (!p2)
      throw std::logic_error(dispatch_dump(family, "second tree lacks pending stars with distinct neighbors"));
    TreeRemoval r1;
    r1.order = k - 1;
    r1.groups.push_back(ps_group(*p1));
    r1.groups.push_back(ps_group(*p2));
    auto [w, z] = two_leaf_neighbors(family.tree(k - 2), "the third tree");
    TreeRemoval r2;
    r2.order = k - 2;
    r2.groups.push_back(leaves_group(family.tree(k - 2), {w, z}));
    plan.removals.push_back(std::move(rk));
    plan.removals.push_back(std::move(r1));
    plan.removals.push_back(std::move(r2));
    plan.deferred_stars = {k - 5, k - 4, k - 3};
    plan.recursion_depth_drop = 3;
    return plan;
  }

  std::vector<int> xs = leaf_neighbor_vertices(family.tree(k - 1));
  if (xs.size() < 3)
    throw std::logic_error(dispatch_dump(family, "second-tree spider with fewer than 3 leaf spots"));
  TreeRemoval r1;
  r1.order = k - 1;
  r1.groups.push_back(leaves_group(family.tree(k - 1), {xs[0], xs[1], xs[2]}));

  std::vector<PendingStar> ps2 = find_pending_stars(family.tree(k - 2));
  const PendingStar* rp =
      pick_pending_star(ps2, [](const PendingStar& p) { return p.order() >= 3; });
  if (rp) {
    plan.case_tag = CaseTag::CASE2_3_2_1;
    TreeRemoval r2;
    r2.order = k - 2;
    r2.groups.push_back(ps_group(*rp));
    plan.removals.push_back(std::move(rk));
    plan.removals.push_back(std::move(r1));
    plan.removals.push_back(std::move(r2));
    plan.deferred_stars = {k - rp->order() - 2, k - 4, k - 3};
    plan.recursion_depth_drop = 3;
    return plan;
  }

  plan.case_tag = CaseTag::CASE2_3_2_2;
  const PendingStar* small =
      pick_pending_star(ps2, [](const PendingStar& p) { return p.order() == 2; });
  if (!small) throw std::logic_error(dispatch_dump(family, "third tree lost its pending stars"));
  std::set<int> in_r{small->center};
  for (int leaf : small->leaves) in_r.insert(leaf);
  int z = -1;
  for (int cand : leaf_neighbor_vertices(family.tree(k - 2)))
    if (cand != small->neighbor && !in_r.count(cand)) {
      z = cand;
      break;
    }
  if (z < 0) throw std::logic_error(dispatch_dump(family, "no spare leaf beside the third tree's pending star"));
  TreeRemoval r2;
  r2.order = k - 2;
  r2.groups.push_back(ps_group(*small));
  r2.groups.push_back(leaves_group(family.tree(k - 2), {z}));
  plan.removals.push_back(std::move(rk));
  plan.removals.push_back(std::move(r1));
  plan.removals.push_back(std::move(r2));
  plan.deferred_stars = {k - 5, k - 4, k - 3};
  plan.recursion_depth_drop = 3;
  return plan;
}

AppliedReduction apply_reduction_detailed(const TreeFamily& family, const ReductionPlan& plan) {
  int k = family.k();
  int t = plan.recursion_depth_drop;
  if (static_cast<int>(plan.deferred_stars.size()) != t)
    throw std::invalid_argument("deferred star count does not match the depth drop");

  AppliedReduction out;
  out.fates.resize(k - 1);
  std::set<int> deferred(plan.deferred_stars.begin(), plan.deferred_stars.end());
  std::set<int> removed_orders;
  for (const TreeRemoval& r : plan.removals) {
    if (r.order < 2 || r.order > k || !removed_orders.insert(r.order).second)
      throw std::invalid_argument("bad removal order " + std::to_string(r.order));
    if (deferred.count(r.order))
      throw std::invalid_argument("tree is both removed-from and deferred");
  }

  for (int o : plan.deferred_stars)
    if (!classify(family.tree(o)).is_star)
      throw std::logic_error(dispatch_dump(family, "deferred order " + std::to_string(o) + " is not a star"));

  std::vector<std::pair<int, Tree>> slots;  // (new order, tree)
  for (int o = 2; o <= k; ++o) {
    AppliedReduction::Fate& fate = out.fates[o - 2];
    fate.original_order = o;
    if (deferred.count(o)) {
      fate.new_order = -1;
      continue;
    }
    const TreeRemoval* rem = nullptr;
    for (const TreeRemoval& r : plan.removals)
      if (r.order == o) rem = &r;
    if (!rem) {
      fate.new_order = o;
      fate.old_to_new.resize(family.tree(o).n());
      std::iota(fate.old_to_new.begin(), fate.old_to_new.end(), 0);
      slots.emplace_back(o, family.tree(o));
      continue;
    }
    Tree cur = family.tree(o);
    std::vector<int> comp(cur.n());
    std::iota(comp.begin(), comp.end(), 0);
    for (const TreeRemoval::Group& gr : rem->groups) {
      std::vector<int> mapped;
      for (int victim : gr.victims) {
        if (victim < 0 || victim >= static_cast<int>(comp.size()) || comp[victim] < 0)
          throw std::logic_error("removal victim already gone in " + to_string(plan.case_tag));
        mapped.push_back(comp[victim]);
      }
      LeafRemoval lr = remove_leaves(cur, mapped);
      for (int& c : comp)
        if (c >= 0) c = lr.old_to_new[c];
      cur = lr.tree;
    }
    fate.new_order = cur.n();
    fate.old_to_new = std::move(comp);
    slots.emplace_back(cur.n(), cur);
  }

  std::vector<Tree> trees(k - t - 1);
  std::vector<char> filled(k - t - 1, 0);
  for (auto& [no, tree] : slots) {
    if (no < 2 || no > k - t || filled[no - 2])
      throw std::runtime_error("slot collision at order " + std::to_string(no) + " in " +
                               to_string(plan.case_tag));
    filled[no - 2] = 1;
    trees[no - 2] = std::move(tree);
  }
  for (int i = 0; i < k - t - 1; ++i)
    if (!filled[i])
      throw std::runtime_error("slot " + std::to_string(i + 2) + " empty in " +
                               to_string(plan.case_tag));
  out.reduced = TreeFamily(std::move(trees));
  if (non_star_count(out.reduced) > 3)
    throw std::logic_error(dispatch_dump(family, "reduction increased the non-star count"));
  return out;
}

TreeFamily apply_reduction(const TreeFamily& family, const ReductionPlan& plan) {
  return apply_reduction_detailed(family, plan).reduced;
}

std::vector<int> realize_wlog(const Graph& g, const std::set<Edge>& colored,
                              const std::vector<WlogDemand>& demands) {
  std::vector<int> out(demands.size(), -1);
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == demands.size()) return true;
    const WlogDemand& d = demands[i];
    for (int v : d.candidates) {
      if (std::find(d.avoid.begin(), d.avoid.end(), v) != d.avoid.end()) continue;
      bool dup = false;
      for (int j : d.distinct_from)
        if (j >= 0 && j < static_cast<int>(i) && out[j] == v) dup = true;
      if (dup) continue;
      if (d.adjacent_to >= 0 &&
          (!g.has_edge(d.adjacent_to, v) || colored.count(make_edge(d.adjacent_to, v))))
        continue;
      out[i] = v;
      if (rec(i + 1)) return true;
      out[i] = -1;
    }
    return false;
  };
  if (!rec(0)) throw std::runtime_error("vertex-choice demands are unsatisfiable");
  return out;
}

Packing complete_embedding(const Graph& g, const OrderedColoring& classes,
                           const TreeFamily& family, const ReductionPlan& plan, const Packing& sub,
                           const EmbeddingSet& images) {
  AppliedReduction applied = apply_reduction_detailed(family, plan);
  unsigned long long nodes = 0;
  if (plan.case_tag == CaseTag::BASE_K_LE_3) return sub;
  CompletionResult comp =
      complete_case(g, classes, family, plan, applied, sub, images, &nodes, 2'000'000ULL);
  return comp.packing;
}

ConstructiveResult pack_constructive(const Graph& g, const TreeFamily& family,
                                     const PackOptions& opt) {
  int k = family.k();
  if (non_star_count(family) > 3)
    throw std::invalid_argument("constructive packing needs at most 3 non-stars, family has " +
                                std::to_string(non_star_count(family)));

  ConstructiveResult res;
  res.packing.k = k;

  auto attempt = [&]() -> Packing {
    Graph work;
    OrderedColoring col;
    std::vector<int> n2o;
    bool prepped = false;

    if (opt.prefer_witness_pipeline && static_cast<int>(opt.witness.size()) == g.n() &&
        g.n() > 0) {
      bool proper = true;
      std::set<int> seen;
      for (int cv : opt.witness) {
        if (cv < 0) proper = false;
        seen.insert(cv);
      }
      if (proper)
        for (const Edge& e : g.edges())
          if (opt.witness[e.u] == opt.witness[e.v]) proper = false;
      if (proper && static_cast<int>(seen.size()) == k) {
        std::optional<Level> lvl = prepare_level(g, opt.witness, k);
        if (lvl) {
          work = std::move(lvl->graph);
          col = std::move(lvl->coloring);
          n2o = std::move(lvl->new_to_old);
          prepped = true;
        }
      }
    }
    if (!prepped) {
      CriticalSubgraph crit = critical_subgraph(g, k, opt.chi_budget);
      std::optional<Level> lvl = prepare_level(crit.graph, crit.witness, k);
      if (!lvl) throw std::logic_error("critical subgraph lost classes under refinement");
      work = std::move(lvl->graph);
      col = std::move(lvl->coloring);
      n2o.resize(work.n());
      for (int v = 0; v < work.n(); ++v) n2o[v] = crit.new_to_old[lvl->new_to_old[v]];
    }

    unsigned long long nodes = 0;
    LevelResult lr = pack_rec(work, col, family, &nodes, opt.wlog_budget);

    Packing out;
    out.k = k;
    for (const auto& [o, es] : lr.packing.colors) {
      std::vector<Edge> up;
      up.reserve(es.size());
      for (const Edge& e : es) up.push_back(make_edge(n2o[e.u], n2o[e.v]));
      std::sort(up.begin(), up.end());
      out.colors[o] = std::move(up);
    }
    VerifyReport vr = verify_packing(g, family, out);
    if (!vr.ok) {
      std::string why = vr.violations.empty() ? "unknown" : vr.violations[0].detail;
      throw FalsifyError(CaseTag::BASE_K_LE_3, k, "completed packing failed verification: " + why);
    }
    return out;
  };

  try {
    res.packing = attempt();
    res.ok = true;
    return res;
  } catch (const FalsifyError& fe) {
    res.falsifications.push_back({fe.tag, fe.level, fe.what()});
  }

  if (opt.fallback_search) {
    SearchResult sr = pack_exhaustive(g, family, opt.fallback);
    if (sr.outcome == SearchOutcome::SAT) {
      res.packing = sr.packing;
      res.ok = true;
      res.used_fallback = true;
    }
  }
  return res;
}

}  // namespace treepack
