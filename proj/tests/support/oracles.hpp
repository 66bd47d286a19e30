#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treepack/graph.hpp"
#include "treepack/trees.hpp"

// Independent reference implementations used only to cross-check the library.
// They share no code with core/ beyond the public data types.
namespace oracle {

// Number of non-isomorphic trees on n labeled-to-unlabeled vertices, computed
// by enumerating all n^(n-2) Prufer sequences and deduplicating with a
// locally implemented rooted canonical form.
int prufer_free_tree_count(int n);

// The deduplicated canonical strings themselves (for set comparison).
std::set<std::string> prufer_free_tree_canon(int n);

// Canonical form of a tree given as an edge list, implemented independently.
std::string canon_tree(int n, const std::vector<std::pair<int, int>>& edges);

// Plain backtracking packer: vertices of each tree are embedded in index
// order, every host vertex is tried for every slot, no pruning beyond edge
// availability. Exponential; for tiny hosts only.
bool naive_pack(const treepack::Graph& host, const treepack::TreeFamily& family);

// Smallest c such that the graph admits a proper c-coloring, by plain
// backtracking over vertices in index order.
int brute_chromatic(const treepack::Graph& g);

}  // namespace oracle
