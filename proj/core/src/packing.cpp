#include "treepack/packing.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace treepack {

namespace {

// Stable palette; colors cycle past the end.
const char* kPalette[] = {"firebrick",  "royalblue", "forestgreen", "darkorange",
                          "purple",     "goldenrod", "deeppink",    "teal",
                          "saddlebrown", "navy",      "crimson",     "darkcyan"};

}  // namespace

std::string packing_to_json(const Packing& p) {
  nlohmann::json j;
  j["k"] = p.k;
  j["colors"] = nlohmann::json::object();
  for (const auto& [color, edges] : p.colors) {
    nlohmann::json list = nlohmann::json::array();
    for (const Edge& e : edges) list.push_back({e.u, e.v});
    j["colors"][std::to_string(color)] = list;
  }
  return j.dump();
}

Packing packing_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Packing p;
  p.k = j.at("k").get<int>();
  for (const auto& [key, list] : j.at("colors").items()) {
    std::vector<Edge> edges;
    for (const auto& e : list) edges.push_back(make_edge(e.at(0).get<int>(), e.at(1).get<int>()));
    std::sort(edges.begin(), edges.end());
    p.colors[std::stoi(key)] = std::move(edges);
  }
  return p;
}

std::string packing_to_dot(const Graph& g, const Packing& p) {
  std::map<Edge, int> color_of;
  for (const auto& [color, edges] : p.colors)
    for (const Edge& e : edges) color_of.emplace(e, color);

  std::ostringstream os;
  os << "graph packing {\n";
  for (int v = 0; v < g.n(); ++v) os << "  " << v << ";\n";
  for (const Edge& e : g.edges()) {
    os << "  " << e.u << " -- " << e.v;
    auto it = color_of.find(e);
    if (it != color_of.end()) {
      int idx = (it->second - 2) % static_cast<int>(std::size(kPalette));
      os << " [color=" << kPalette[idx] << ", label=" << it->second << "]";
    } else {
      os << " [color=gray80]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace treepack
