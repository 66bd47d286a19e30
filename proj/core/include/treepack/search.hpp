#pragma once

#include <functional>
#include <string>
#include <vector>

#include "treepack/graph.hpp"
#include "treepack/hosts.hpp"
#include "treepack/packing.hpp"
#include "treepack/trees.hpp"

namespace treepack {

enum class SearchOutcome { SAT, UNSAT, TIMEOUT };
const char* to_string(SearchOutcome o);

struct SearchOptions {
  unsigned long long node_budget = 10'000'000ULL;
  // Root-orbit pruning for the first tree via host automorphisms (n <= 10).
  // Off by default for auditability.
  bool orbit_pruning = false;
};

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::UNSAT;
  Packing packing;  // valid iff SAT
  unsigned long long nodes = 0;
};

// Exhaustive backtracking: largest tree first, tree vertices in BFS order,
// sibling symmetry broken on equal rooted subtrees. UNSAT only after the
// whole space is exhausted; TIMEOUT is never conflated with UNSAT.
// Deterministic for fixed inputs and options.
SearchResult pack_exhaustive(const Graph& g, const TreeFamily& family,
                             const SearchOptions& opt = {});

struct SweepRecord {
  std::string host;
  std::string family_id;
  SearchOutcome outcome = SearchOutcome::UNSAT;
  unsigned long long nodes = 0;
  double elapsed_s = 0.0;
  std::string note;
};

struct SweepReport {
  int families_total = 0;
  int packed = 0;
  std::vector<SweepRecord> records;            // every instance, stable order
  std::vector<SweepRecord> failures;           // UNSAT entries
  std::vector<SweepRecord> timeouts;           // TIMEOUT entries
  std::vector<std::string> skipped_hosts;      // host certification failures
};

// All tree families T_2..T_n against K_n. 2 <= n <= 8.
SweepReport sweep_tpc(int n, const SearchOptions& opt = {}, int jobs = 1);

using FamilyFilter = std::function<bool(const TreeFamily&)>;

struct ChromaticSweepOptions {
  SearchOptions search;
  int jobs = 1;
  // For families with <= 3 non-stars also run the constructive packer and
  // demand agreement with the oracle.
  bool cross_check_constructive = true;
  unsigned long long chi_budget = 50'000'000ULL;
};

// Oracle sweep over k-chromatic hosts. Hosts failing certification are
// skipped with a reason. Family ids use per-order indices into
// enumerate_free_trees.
SweepReport sweep_chromatic(int k, const std::vector<Host>& hosts, const FamilyFilter& filter,
                            const ChromaticSweepOptions& opt = {});

// One JSON object per line. elapsed is emitted only when include_elapsed is
// set (wall time breaks byte-identical reruns).
std::string records_to_jsonl(const std::vector<SweepRecord>& records, bool include_elapsed);

// Odometer over enumerate_free_trees(2..k): family for a flat index, and the
// total count. Shared by sweeps, tools and tests.
long long family_space_size(int k);
TreeFamily family_at(int k, long long index);
std::string family_id(int k, long long index);

}  // namespace treepack
