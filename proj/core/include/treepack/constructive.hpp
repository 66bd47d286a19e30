#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "treepack/coloring.hpp"
#include "treepack/graph.hpp"
#include "treepack/packing.hpp"
#include "treepack/search.hpp"
#include "treepack/trees.hpp"

namespace treepack {

enum class CaseTag {
  BASE_K_LE_3,
  CLAIM1,
  CLAIM2,
  CLAIM3,
  CLAIM4,
  CLAIM5,
  CASE1,
  CASE2_1,
  CASE2_2_1,
  CASE2_2_2_1,
  CASE2_2_2_2,
  CASE2_3_1,
  CASE2_3_2_1,
  CASE2_3_2_2,
};
std::string to_string(CaseTag tag);

// Removals for one tree: victim groups applied in sequence, all ids relative
// to the original tree.
struct TreeRemoval {
  struct Group {
    enum class Kind { LEAVES, PENDING_STAR };
    Kind kind = Kind::LEAVES;
    std::vector<int> victims;      // leaves, or pending-star center followed by its leaves
    std::vector<int> attachments;  // surviving neighbor per leaf, or the star's neighbor
  };

  int order = 0;  // which family tree
  std::vector<Group> groups;

  int new_order() const;
};

struct ReductionPlan {
  CaseTag case_tag = CaseTag::BASE_K_LE_3;
  std::vector<TreeRemoval> removals;
  std::vector<int> deferred_stars;  // star orders realized with new colors, in coloring order
  int recursion_depth_drop = 0;     // t, equals deferred_stars.size()
};

// Picks the applicable reduction for the family by fixed precedence. Ties
// break by smallest pending-star order, then smallest center or leaf id.
// Requires at most 3 non-stars; families outside the dispatch raise
// std::logic_error carrying the family structure.
ReductionPlan select_reduction(const TreeFamily& family, int k);

// Executes the plan: modified trees drop to their new orders, deferred stars
// leave, and everything re-slots to orders 2..k-t. Colliding slots raise
// std::runtime_error naming the case.
TreeFamily apply_reduction(const TreeFamily& family, const ReductionPlan& plan);

struct AppliedReduction {
  TreeFamily reduced;

  struct Fate {
    int original_order = 0;
    int new_order = 0;            // -1 for deferred stars
    std::vector<int> old_to_new;  // identity for untouched trees, -1 for victims
  };
  std::vector<Fate> fates;  // indexed original order - 2
};
AppliedReduction apply_reduction_detailed(const TreeFamily& family, const ReductionPlan& plan);

// order -> image list (tree vertex -> host vertex).
using EmbeddingSet = std::map<int, std::vector<int>>;

// One vertex pick per demand, satisfying adjacency / distinctness / avoidance,
// found by backtracking in candidate order. Throws std::runtime_error when
// unsatisfiable.
struct WlogDemand {
  std::vector<int> candidates;     // preference-ordered host vertices
  int adjacent_to = -1;            // when >= 0: needs an uncolored g-edge to this vertex
  std::vector<int> distinct_from;  // indices of earlier demands
  std::vector<int> avoid;          // forbidden vertices
};
std::vector<int> realize_wlog(const Graph& g, const std::set<Edge>& colored,
                              const std::vector<WlogDemand>& demands);

// Extends a packing of the reduced family into the top k-t classes with the
// case's re-attachment edges plus the deferred stars. `sub` and `images` use
// g's vertex ids; `classes` must carry the Grundy property on g. Failure to
// place an edge where the construction expects one raises std::runtime_error
// with a state dump.
Packing complete_embedding(const Graph& g, const OrderedColoring& classes,
                           const TreeFamily& family, const ReductionPlan& plan, const Packing& sub,
                           const EmbeddingSet& images);

struct FalsificationRecord {
  CaseTag case_tag = CaseTag::BASE_K_LE_3;
  int level_k = 0;
  std::string detail;
};

struct PackOptions {
  unsigned long long chi_budget = 50'000'000ULL;
  unsigned long long wlog_budget = 2'000'000ULL;
  SearchOptions fallback;              // exhaustive-search budget on case failure
  std::vector<int> witness;            // optional proper coloring of g with k classes
  bool prefer_witness_pipeline = false;
  bool fallback_search = true;
};

struct ConstructiveResult {
  Packing packing;
  bool ok = false;
  bool used_fallback = false;
  std::vector<FalsificationRecord> falsifications;
};

int non_star_count(const TreeFamily& family);

// Recursive packer for families with at most 3 non-stars. Each level picks a
// reduction, recurses on the top k-t color classes (re-peeled to min degree
// k-t-1 and Grundy-refined), then re-attaches the removed parts and colors
// the deferred stars. Case failures are recorded and, when enabled, the
// exhaustive search packer takes over.
ConstructiveResult pack_constructive(const Graph& g, const TreeFamily& family,
                                     const PackOptions& opt = {});

}  // namespace treepack
