#pragma once

#include <map>
#include <string>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

// Partial edge coloring: color i in 2..k should span a copy of T_i. Plain
// data holder; validity is the verifier's business (the JSON format can
// express double-colored edges, so this type must too).
struct Packing {
  int k = 0;
  std::map<int, std::vector<Edge>> colors;

  int colored_edge_count() const {
    int total = 0;
    for (const auto& [color, edges] : colors) total += static_cast<int>(edges.size());
    return total;
  }
};

// {"k": k, "colors": {"2": [[u,v]], ...}} over host vertex ids.
std::string packing_to_json(const Packing& p);
Packing packing_from_json(const std::string& text);

// DOT export with a color attribute per edge; uncolored host edges drawn
// gray.
std::string packing_to_dot(const Graph& g, const Packing& p);

}  // namespace treepack
