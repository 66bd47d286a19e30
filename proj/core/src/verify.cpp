#include "treepack/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace treepack {

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::MISSING_EDGE: return "MISSING_EDGE";
    case ViolationKind::DOUBLE_COLOR: return "DOUBLE_COLOR";
    case ViolationKind::SHAPE_MISMATCH: return "SHAPE_MISMATCH";
    case ViolationKind::BAD_COLOR_INDEX: return "BAD_COLOR_INDEX";
  }
  return "?";
}

VerifyReport verify_packing(const Graph& g, const TreeFamily& family, const Packing& p) {
  VerifyReport rep;
  int k = family.k();

  std::map<Edge, std::vector<int>> uses;
  for (const auto& [color, edges] : p.colors) {
    if (color < 2 || color > k) {
      rep.violations.push_back({ViolationKind::BAD_COLOR_INDEX, color, {},
                                "color outside 2.." + std::to_string(k)});
      continue;
    }
    for (const Edge& e : edges) {
      if (!g.has_edge(e.u, e.v))
        rep.violations.push_back(
            {ViolationKind::MISSING_EDGE, color, e, "edge not present in host"});
      uses[e].push_back(color);
    }
  }
  for (const auto& [e, colors] : uses)
    if (colors.size() > 1) {
      std::string what = "colors";
      for (int c : colors) what += " " + std::to_string(c);
      rep.violations.push_back({ViolationKind::DOUBLE_COLOR, colors[1], e, what});
    }

  for (int order = 2; order <= k; ++order) {
    auto it = p.colors.find(order);
    if (it == p.colors.end() || it->second.empty()) {
      rep.violations.push_back(
          {ViolationKind::SHAPE_MISMATCH, order, {}, "color class absent"});
      continue;
    }
    std::set<Edge> dedup(it->second.begin(), it->second.end());
    std::set<int> support;
    for (const Edge& e : dedup) {
      support.insert(e.u);
      support.insert(e.v);
    }
    std::map<int, int> idx;
    for (int v : support) idx.emplace(v, static_cast<int>(idx.size()));
    std::vector<std::pair<int, int>> pairs;
    for (const Edge& e : dedup) pairs.emplace_back(idx[e.u], idx[e.v]);

    Graph span;
    try {
      span = Graph::from_edge_list(static_cast<int>(support.size()), pairs);
    } catch (const std::exception&) {
      rep.violations.push_back(
          {ViolationKind::SHAPE_MISMATCH, order, {}, "malformed color class"});
      continue;
    }
    if (!is_tree(span) || span.n() != order) {
      rep.violations.push_back({ViolationKind::SHAPE_MISMATCH, order, {},
                                "class spans " + std::to_string(span.n()) + " vertices, " +
                                    std::to_string(span.m()) + " edges"});
      continue;
    }
    if (canonical_form(Tree{span}) != canonical_form(family.tree(order)))
      rep.violations.push_back(
          {ViolationKind::SHAPE_MISMATCH, order, {}, "not isomorphic to target tree"});
  }

  rep.ok = rep.violations.empty();
  return rep;
}

std::string report_to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["ok"] = r.ok;
  j["violations"] = nlohmann::json::array();
  for (const Violation& v : r.violations) {
    nlohmann::json item;
    item["kind"] = to_string(v.kind);
    item["color"] = v.color;
    item["edge"] = {v.edge.u, v.edge.v};
    item["detail"] = v.detail;
    j["violations"].push_back(item);
  }
  return j.dump();
}

}  // namespace treepack
