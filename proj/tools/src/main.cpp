#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "treepack/coloring.hpp"
#include "treepack/constructive.hpp"
#include "treepack/degree.hpp"
#include "treepack/hosts.hpp"
#include "treepack/search.hpp"
#include "treepack/verify.hpp"

using namespace treepack;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument(path + ": cannot open for writing");
  out << text;
}

unsigned long long env_budget() {
  const char* env = std::getenv("TREEPACK_BUDGET_NODES");
  if (!env || !*env) return SearchOptions{}.node_budget;
  return std::strtoull(env, nullptr, 10);
}

int run_trees(int n, const std::string& format) {
  std::vector<Tree> trees = enumerate_free_trees(n);
  for (const Tree& t : trees) {
    if (format == "canon") {
      std::cout << canonical_form(t) << '\n';
      continue;
    }
    std::ostringstream line;
    line << t.n() << ':';
    for (const Edge& e : t.g.edges()) line << ' ' << e.u << '-' << e.v;
    std::cout << line.str() << '\n';
  }
  return 0;
}

struct PackArgs {
  std::string mode;
  std::string graph_path;
  std::string family_path;
  std::string out_path;
  std::string witness_path;
  int k = 0;  // avgdeg host parameter
  bool timing = false;
};

int run_pack(const PackArgs& a) {
  auto t0 = std::chrono::steady_clock::now();
  Graph g = from_text(slurp(a.graph_path));
  TreeFamily family = family_from_json(slurp(a.family_path));

  Packing packing;
  int rc = 0;
  if (a.mode == "search") {
    SearchOptions opt;
    opt.node_budget = env_budget();
    SearchResult r = pack_exhaustive(g, family, opt);
    if (r.outcome == SearchOutcome::TIMEOUT) {
      std::cerr << "search exhausted " << r.nodes << " nodes without a verdict\n";
      return 3;
    }
    if (r.outcome == SearchOutcome::UNSAT) {
      std::cerr << "no packing exists\n";
      return 2;
    }
    packing = r.packing;
  } else if (a.mode == "constructive") {
    if (non_star_count(family) > 3) {
      std::cerr << "constructive mode needs at most 3 non-stars, family has "
                << non_star_count(family) << '\n';
      return 1;
    }
    PackOptions opt;
    opt.fallback.node_budget = env_budget();
    if (!a.witness_path.empty()) {
      opt.witness = nlohmann::json::parse(slurp(a.witness_path)).get<std::vector<int>>();
      opt.prefer_witness_pipeline = true;
    }
    ConstructiveResult r = pack_constructive(g, family, opt);
    for (const FalsificationRecord& f : r.falsifications)
      std::cerr << "falsification candidate at k=" << f.level_k << " (" << to_string(f.case_tag)
                << "): " << f.detail << '\n';
    if (!r.ok) return 2;
    if (r.used_fallback) std::cerr << "search fallback produced the packing\n";
    packing = r.packing;
  } else if (a.mode == "mindeg") {
    DegreePackResult r = pack_min_degree(g, family);
    if (!r.ok) {
      std::cerr << r.failure << '\n';
      return 2;
    }
    packing = r.packing;
  } else {  // avgdeg
    if (a.k < 4) {
      std::cerr << "avgdeg mode needs --k at least 4\n";
      return 1;
    }
    AvgDegreeResult r = pack_avg_degree(g, family, a.k);
    if (!r.ok) {
      std::cerr << r.failure << '\n';
      return 2;
    }
    packing = r.packing;
  }

  VerifyReport rep = verify_packing(g, family, packing);
  if (!rep.ok) {
    std::cerr << "packing failed verification:\n" << report_to_json(rep) << '\n';
    return 2;
  }
  emit(a.out_path, packing_to_json(packing) + "\n");
  if (a.timing) {
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    std::cerr << "elapsed " << dt.count() << "s\n";
  }
  return rc;
}

int report_sweep(const std::vector<SweepRecord>& records, const std::string& path, bool timing,
                 long long packed, long long total, const std::string& what) {
  emit(path, records_to_jsonl(records, timing));
  long long bad = 0, timeouts = 0;
  for (const SweepRecord& r : records) {
    if (r.outcome == SearchOutcome::TIMEOUT) ++timeouts;
    else if (r.outcome != SearchOutcome::SAT || !r.note.empty()) ++bad;
  }
  std::cerr << what << ": " << packed << '/' << total << " packed, " << bad << " failures, "
            << timeouts << " timeouts\n";
  return bad == 0 && timeouts == 0 ? 0 : 2;
}

struct SweepArgs {
  int max_n = 7;
  int k = 4;
  int jobs = 1;
  int trials = 20;
  int n = 0;
  int s = 0;
  unsigned long long seed = 1;
  std::string suite = "both";
  std::string report;
  bool timing = false;
};

int run_tpc(const SweepArgs& a) {
  if (a.max_n < 2 || a.max_n > 8) {
    std::cerr << "--max-n must lie in 2..8\n";
    return 1;
  }
  SearchOptions opt;
  opt.node_budget = env_budget();
  std::vector<SweepRecord> records;
  long long packed = 0, total = 0;
  for (int n = 2; n <= a.max_n; ++n) {
    SweepReport rep = sweep_tpc(n, opt, a.jobs);
    packed += rep.packed;
    total += rep.families_total;
    records.insert(records.end(), rep.records.begin(), rep.records.end());
  }
  return report_sweep(records, a.report, a.timing, packed, total, "tpc");
}

int run_chromatic(const SweepArgs& a) {
  std::vector<Host> hosts;
  if (a.suite == "complete" || a.suite == "both") hosts.push_back(complete_host(a.k));
  if (a.suite == "mycielski" || a.suite == "both") hosts.push_back(mycielski_host(a.k));
  ChromaticSweepOptions opt;
  opt.search.node_budget = env_budget();
  opt.jobs = a.jobs;
  SweepReport rep = sweep_chromatic(a.k, hosts, nullptr, opt);
  for (const std::string& s : rep.skipped_hosts) std::cerr << "skipped " << s << '\n';
  return report_sweep(rep.records, a.report, a.timing, rep.packed, rep.families_total,
                      "chromatic k=" + std::to_string(a.k));
}

int run_degree_sweep(const SweepArgs& a, bool avg) {
  if (a.k < (avg ? 4 : 2) || a.k > (avg ? 10 : 8)) {
    std::cerr << "--k out of the supported sweep range\n";
    return 1;
  }
  std::vector<SweepRecord> records;
  long long packed = 0;
  for (int t = 0; t < a.trials; ++t) {
    int fam_k = avg ? (a.s > 0 ? a.s : std::max(2, a.k / 2)) : a.k;
    if (avg && 2 * fam_k > a.k) {
      std::cerr << "--s must satisfy 2s <= k\n";
      return 1;
    }
    int n = a.n > 0 ? a.n : (avg ? a.k + 10 + t % 15 : 3 * a.k + 10);
    std::uint64_t seed = a.seed + 7919ULL * static_cast<std::uint64_t>(t);
    Graph g = random_min_degree(n, a.k - 1, seed);
    TreeFamily family = family_at(fam_k, t % family_space_size(fam_k));

    SweepRecord rec;
    rec.host = (avg ? "avgdeg_n" : "mindeg_n") + std::to_string(n) + "_seed" + std::to_string(seed);
    rec.family_id = family_id(fam_k, t % family_space_size(fam_k));
    rec.outcome = SearchOutcome::UNSAT;
    if (avg) {
      AvgDegreeResult r = pack_avg_degree(g, family, a.k);
      if (r.ok && verify_packing(g, family, r.packing).ok) rec.outcome = SearchOutcome::SAT;
      else rec.note = r.failure.empty() ? "verification failed" : r.failure;
    } else {
      DegreePackResult r = pack_min_degree(g, family);
      if (r.ok && verify_packing(g, family, r.packing).ok) rec.outcome = SearchOutcome::SAT;
      else rec.note = r.failure.empty() ? "verification failed" : r.failure;
    }
    if (rec.outcome == SearchOutcome::SAT) ++packed;
    records.push_back(std::move(rec));
  }
  return report_sweep(records, a.report, a.timing, packed, a.trials,
                      avg ? "avgdeg" : "mindeg");
}

int run_family(int k, long long index, const std::string& out, bool count_only) {
  if (count_only) {
    std::cout << family_space_size(k) << '\n';
    return 0;
  }
  emit(out, family_to_json(family_at(k, index)) + "\n");
  return 0;
}

struct GenArgs {
  std::string host = "complete";
  int n = 5;
  int k = 4;
  long long m = 10;
  int dmin = 3;
  unsigned long long seed = 1;
  std::string out;
  std::string witness_out;
};

int run_gen(const GenArgs& a) {
  Graph g;
  std::vector<int> witness;
  if (a.host == "complete") {
    Host h = complete_host(a.n);
    g = h.graph;
    witness = h.witness;
  } else if (a.host == "mycielski") {
    Host h = mycielski_host(a.k);
    g = h.graph;
    witness = h.witness;
  } else if (a.host == "gnm") {
    g = random_gnm(a.n, a.m, a.seed);
  } else {
    g = random_min_degree(a.n, a.dmin, a.seed);
  }
  if (!a.witness_out.empty()) {
    if (witness.empty()) {
      std::cerr << "host kind '" << a.host << "' carries no coloring witness\n";
      return 1;
    }
    emit(a.witness_out, nlohmann::json(witness).dump() + "\n");
  }
  emit(a.out, to_text(g));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge-disjoint tree packing toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  int trees_n = 4;
  std::string trees_format = "edges";
  CLI::App* trees = app.add_subcommand("trees", "enumerate free trees of a given order");
  trees->add_option("--n", trees_n, "tree order")->required();
  trees->add_option("--format", trees_format, "edges or canon")
      ->check(CLI::IsMember({"edges", "canon"}));
  trees->callback([&] { rc = run_trees(trees_n, trees_format); });

  PackArgs pack_args;
  CLI::App* pack = app.add_subcommand("pack", "pack a tree family into a host graph");
  pack->add_option("--mode", pack_args.mode, "packing engine")
      ->required()
      ->check(CLI::IsMember({"constructive", "search", "mindeg", "avgdeg"}));
  pack->add_option("--graph", pack_args.graph_path, "host graph text file")->required();
  pack->add_option("--family", pack_args.family_path, "tree family json file")->required();
  pack->add_option("--out", pack_args.out_path, "packing json destination (default stdout)");
  pack->add_option("--witness", pack_args.witness_path, "proper coloring json array");
  pack->add_option("--k", pack_args.k, "host degree parameter for avgdeg mode");
  pack->add_flag("--timing", pack_args.timing, "report wall time on stderr");
  pack->callback([&] { rc = run_pack(pack_args); });

  SweepArgs sweep_args;
  CLI::App* conjecture = app.add_subcommand("conjecture", "run a sweep and emit a jsonl report");
  conjecture->require_subcommand(1);
  auto add_report_flags = [&](CLI::App* cmd) {
    cmd->add_option("--report", sweep_args.report, "jsonl destination (default stdout)");
    cmd->add_option("--jobs", sweep_args.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--timing", sweep_args.timing, "include wall times in the report");
  };

  CLI::App* tpc = conjecture->add_subcommand("tpc", "all families into complete hosts");
  tpc->add_option("--max-n", sweep_args.max_n, "largest host order");
  add_report_flags(tpc);
  tpc->callback([&] { rc = run_tpc(sweep_args); });

  CLI::App* chromatic = conjecture->add_subcommand("chromatic", "families into k-chromatic hosts");
  chromatic->add_option("--k", sweep_args.k, "chromatic number")->required();
  chromatic->add_option("--suite", sweep_args.suite, "complete, mycielski, or both")
      ->check(CLI::IsMember({"complete", "mycielski", "both"}));
  add_report_flags(chromatic);
  chromatic->callback([&] { rc = run_chromatic(sweep_args); });

  CLI::App* mindeg = conjecture->add_subcommand("mindeg", "min-degree packer on seeded hosts");
  mindeg->add_option("--k", sweep_args.k, "family size parameter")->required();
  mindeg->add_option("--trials", sweep_args.trials, "instance count");
  mindeg->add_option("--seed", sweep_args.seed, "base seed");
  mindeg->add_option("--n", sweep_args.n, "host order override");
  add_report_flags(mindeg);
  mindeg->callback([&] { rc = run_degree_sweep(sweep_args, false); });

  CLI::App* avgdeg = conjecture->add_subcommand("avgdeg", "average-degree packer on seeded hosts");
  avgdeg->add_option("--k", sweep_args.k, "density parameter")->required();
  avgdeg->add_option("--trials", sweep_args.trials, "instance count");
  avgdeg->add_option("--seed", sweep_args.seed, "base seed");
  avgdeg->add_option("--n", sweep_args.n, "host order override");
  avgdeg->add_option("--s", sweep_args.s, "family size (default k/2)");
  add_report_flags(avgdeg);
  avgdeg->callback([&] { rc = run_degree_sweep(sweep_args, true); });

  int family_k = 4;
  long long family_index = 0;
  std::string family_out;
  bool family_count = false;
  CLI::App* family = app.add_subcommand("family", "write one tree family as json");
  family->add_option("--k", family_k, "largest tree order")->required();
  family->add_option("--index", family_index, "position in the enumeration odometer");
  family->add_option("--out", family_out, "json destination (default stdout)");
  family->add_flag("--count", family_count, "print the number of families instead");
  family->callback([&] { rc = run_family(family_k, family_index, family_out, family_count); });

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "write a host graph to a text file");
  gen->add_option("--host", gen_args.host, "generator kind")
      ->check(CLI::IsMember({"complete", "mycielski", "gnm", "mindeg"}));
  gen->add_option("--n", gen_args.n, "vertex count");
  gen->add_option("--k", gen_args.k, "tower index for mycielski");
  gen->add_option("--m", gen_args.m, "edge count for gnm");
  gen->add_option("--dmin", gen_args.dmin, "degree floor for mindeg");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--out", gen_args.out, "graph destination (default stdout)");
  gen->add_option("--witness-out", gen_args.witness_out, "coloring witness destination");
  gen->callback([&] { rc = run_gen(gen_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}
