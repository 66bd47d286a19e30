#pragma once

#include <string>
#include <vector>

#include "treepack/graph.hpp"
#include "treepack/packing.hpp"
#include "treepack/trees.hpp"

namespace treepack {

enum class ViolationKind { MISSING_EDGE, DOUBLE_COLOR, SHAPE_MISMATCH, BAD_COLOR_INDEX };

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  int color = 0;
  Edge edge{};
  std::string detail;
};

struct VerifyReport {
  bool ok = false;
  std::vector<Violation> violations;
};

// Total over arbitrary input: ok iff every colored edge exists in g, no edge
// carries two colors, and each color class i spans a subgraph isomorphic to
// family[i] (canonical-form equality; independent of any packer's internals).
VerifyReport verify_packing(const Graph& g, const TreeFamily& family, const Packing& p);

std::string report_to_json(const VerifyReport& r);

}  // namespace treepack
