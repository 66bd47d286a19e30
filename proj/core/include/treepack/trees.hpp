#pragma once

#include <string>
#include <vector>

#include "treepack/graph.hpp"

namespace treepack {

// Connected graph with n-1 edges. Validated on construction.
struct Tree {
  Graph g;

  int n() const { return g.n(); }
};

bool is_tree(const Graph& g);
Tree tree_from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs);

// The sequence T_2..T_k, one tree per order.
class TreeFamily {
 public:
  TreeFamily() = default;
  // trees[i] must have i+2 vertices.
  explicit TreeFamily(std::vector<Tree> trees);

  int k() const { return static_cast<int>(trees_.size()) + 1; }
  const Tree& tree(int order) const;  // order in 2..k
  const std::vector<Tree>& trees() const { return trees_; }

 private:
  std::vector<Tree> trees_;
};

// Substar spanned by `center` (the unique vertex with exactly one neighbor of
// degree > 1) and its degree-1 neighbors; `neighbor` is that higher-degree
// vertex.
struct PendingStar {
  int center = 0;
  std::vector<int> leaves;  // sorted
  int neighbor = 0;

  int order() const { return 1 + static_cast<int>(leaves.size()); }
};

// One representative per isomorphism class, sorted by canonical form.
// Supported range: 1 <= n <= 12.
std::vector<Tree> enumerate_free_trees(int n);

// Center-rooted canonical encoding: equal strings iff isomorphic.
std::string canonical_form(const Tree& t);

struct TreeClass {
  bool is_star = false;
  bool is_path = false;
  bool is_spider = false;  // some vertex's removal leaves max degree <= 1
};
TreeClass classify(const Tree& t);

// All pending stars, sorted by center id. Rejects stars (no center with a
// degree->1 neighbor exists).
std::vector<PendingStar> find_pending_stars(const Tree& t);

struct LeafRemoval {
  Tree tree;                    // T'
  std::vector<int> old_to_new;  // -1 for removed vertices
  std::vector<int> new_to_old;
  // Surviving neighbors of removed vertices (old ids, sorted, deduplicated):
  // the re-attachment points.
  std::vector<int> attachments;
};

// victims must all have degree 1, or form one whole pending star
// (center + its leaves). Anything that would disconnect the tree is rejected.
LeafRemoval remove_leaves(const Tree& t, const std::vector<int>& victims);

// {"k": k, "trees": {"2": [[u,v]], ...}}, vertex ids 0-based per tree.
std::string family_to_json(const TreeFamily& f);
TreeFamily family_from_json(const std::string& text);

}  // namespace treepack
