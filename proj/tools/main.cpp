#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpsp/io.hpp"
#include "rpsp/kernelization.hpp"
#include "rpsp/rejection.hpp"
#include "rpsp/rng.hpp"
#include "rpsp/solvers.hpp"

namespace {

using namespace rpsp;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

RejectionBudget parse_budget(const std::string& text) {
  if (text == "inf") return RejectionBudget::unbounded();
  try {
    size_t pos = 0;
    int c = std::stoi(text, &pos);
    if (pos != text.size() || c < 0) throw std::invalid_argument(text);
    return RejectionBudget::limit(c);
  } catch (const std::exception&) {
    throw InvalidParameterError("budget must be 'inf' or a non-negative integer, got '" +
                                text + "'");
  }
}

Algo parse_algo(const std::string& text) {
  if (text == "auto") return Algo::automatic;
  if (text == "fpt") return Algo::fpt;
  if (text == "one-rej") return Algo::one_rejection;
  if (text == "brute") return Algo::brute;
  if (text == "ke") return Algo::ke;
  throw InvalidParameterError("unknown algorithm '" + text + "'");
}

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::automatic: return "auto";
    case Algo::fpt: return "fpt";
    case Algo::one_rejection: return "one-rej";
    case Algo::brute: return "brute";
    case Algo::ke: return "ke";
  }
  return "?";
}

void print_stats(const SolveStats& stats, Algo algo) {
  std::cout << "algo=" << algo_name(algo) << '\n'
            << "subsets_examined=" << stats.subsets_examined << '\n'
            << "dp_cells=" << stats.dp_cells << '\n'
            << "rejections_checked=" << stats.rejections_checked << '\n'
            << "wall_ms=" << stats.wall_ms << '\n';
}

void emit(const std::optional<std::string>& out_path, const std::string& text) {
  if (out_path)
    write_file(*out_path, text);
  else
    std::cout << text;
}

int cmd_solve(const std::string& file, const std::string& budget_text,
              const std::string& algo_text, bool witness, bool stats,
              bool emit_rpsp, int threads, bool unguarded) {
  RejectionBudget budget = parse_budget(budget_text);
  Algo algo = parse_algo(algo_text);
  auto loaded = load_instance_text(read_file(file));
  const Instance& inst = loaded.instance;
  if (emit_rpsp) std::cout << serialize_instance(inst);

  SolveOptions options;
  options.threads = threads;
  options.unguarded = unguarded;
  SolveResult res = solve(inst, budget, algo, options);

  std::cout << (res.yes ? "YES" : "NO") << '\n';
  if (witness && res.yes && res.witness) {
    std::cout << serialize_packing(*res.witness);
    if (loaded.kep) {
      for (int idx : *res.witness) {
        auto cycle = find_cycle_orientation(loaded.kep->g, inst.sets[idx]);
        if (!cycle)
          throw InternalError("packed set has no cycle orientation");
        std::cout << "cycle";
        for (int v : *cycle) std::cout << ' ' << v;
        std::cout << '\n';
      }
    }
  }
  if (stats) print_stats(res.stats, algo);
  return res.yes ? kExitYes : kExitNo;
}

int cmd_kernelize(const std::string& file,
                  const std::optional<std::string>& out_path,
                  const std::optional<std::string>& trace_path) {
  auto loaded = load_instance_text(read_file(file));
  KernelOutcome outcome = kernelize(loaded.instance);
  if (trace_path) {
    std::ostringstream trace;
    for (const auto& rec : outcome.trace)
      trace << format_rule_record(rec) << '\n';
    write_file(*trace_path, trace.str());
  }
  if (outcome.verdict == KernelOutcome::Verdict::decided_yes) {
    std::cout << "DECIDED YES\n";
    return kExitYes;
  }
  emit(out_path, serialize_instance(*outcome.instance));
  return kExitYes;
}

int cmd_verify(const std::string& instance_file, const std::string& packing_file,
               const std::string& budget_text) {
  RejectionBudget budget = parse_budget(budget_text);
  auto loaded = load_instance_text(read_file(instance_file));
  const Instance& inst = loaded.instance;
  Packing x = parse_packing(read_file(packing_file));
  std::sort(x.begin(), x.end());

  if (!packing_valid(inst, x)) {
    std::cout << "INVALID packing: sets overlap or indices are out of range\n";
    return kExitNo;
  }
  int cov = popcount(covered(inst, x));
  if (cov < inst.k) {
    std::cout << "NOT A CANDIDATE covered=" << cov << " k=" << inst.k << '\n';
    return kExitNo;
  }
  for (int a = 0; a < inst.p; ++a) {
    auto w = find_rejection(inst, x, a, budget);
    if (w) {
      std::cout << format_witness(*w) << '\n';
      return kExitNo;
    }
  }
  std::cout << "VERIFIED covered=" << cov << " k=" << inst.k << '\n';
  return kExitYes;
}

UndirectedGraph random_graph(int n, double edge_prob, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.chance(edge_prob)) edges.emplace_back(u, v);
  return make_undirected_graph(n, std::move(edges));
}

int cmd_generate(const std::string& kind, std::uint64_t seed,
                 const std::optional<std::string>& out_path, int n, int m,
                 int p, int d, int k, double edge_prob,
                 const std::optional<std::string>& g_file,
                 const std::optional<std::string>& h_file) {
  if (kind == "random-rpsp") {
    emit(out_path, serialize_instance(random_instance(n, m, p, d, k, seed)));
    return kExitYes;
  }
  if (kind == "random-kep") {
    emit(out_path, serialize_kep(random_kep(n, edge_prob, p, d, k, seed)));
    return kExitYes;
  }
  if (kind == "sgi-reduction") {
    if (!g_file || !h_file)
      throw InvalidParameterError(
          "sgi-reduction needs --host and --pattern graph files");
    UndirectedGraph g = parse_graph(read_file(*g_file));
    UndirectedGraph h = parse_graph(read_file(*h_file));
    ReductionArtifact art = reduce_subgraph_iso(g, h);
    KepInput kep{art.gprime, art.agent_of, 2, 3, art.k};
    emit(out_path, serialize_kep(kep));
    return kExitYes;
  }
  throw InvalidParameterError("unknown generator kind '" + kind + "'");
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  auto range = text.find("..");
  if (range != std::string::npos) {
    int lo = std::stoi(text.substr(0, range));
    int hi = std::stoi(text.substr(range + 2));
    for (int s = lo; s <= hi; ++s) sizes.push_back(s);
  } else {
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) sizes.push_back(std::stoi(tok));
  }
  if (sizes.empty()) throw InvalidParameterError("no sizes given");
  return sizes;
}

void bench_row(const Instance& inst, const char* algo, const char* c,
               RejectionBudget budget, Algo which, const SolveOptions& options) {
  SolveResult res = solve(inst, budget, which, options);
  std::cout << algo << ',' << inst.n << ',' << inst.num_sets() << ','
            << inst.k << ',' << c << ',' << (res.yes ? "yes" : "no") << ','
            << res.stats.wall_ms << '\n';
}

int cmd_bench(const std::string& suite, const std::string& sizes_text,
              std::uint64_t seed, int repeat, int threads) {
  auto sizes = parse_sizes(sizes_text);
  SolveOptions options;
  options.threads = threads;
  std::cout << "algo,n,m,k,c,answer,time_ms\n";
  for (int size : sizes) {
    Instance inst = [&] {
      if (suite == "random") {
        int p = std::min(3, std::max(1, size));
        int k = std::max(0, size / 3);
        return random_instance(size, 2 * size, p, std::min(3, std::max(1, size)),
                               k, seed + static_cast<std::uint64_t>(size));
      }
      if (suite == "sgi") {
        Rng rng(seed + static_cast<std::uint64_t>(size));
        UndirectedGraph g = random_graph(size, 0.5, rng);
        UndirectedGraph h = random_graph(std::max(1, size - 1), 0.5, rng);
        return artifact_instance(reduce_subgraph_iso(g, h));
      }
      throw InvalidParameterError("unknown suite '" + suite + "'");
    }();
    for (int r = 0; r < repeat; ++r) {
      bench_row(inst, "ke", "0", RejectionBudget::limit(0), Algo::ke, options);
      bench_row(inst, "one-rej", "1", RejectionBudget::limit(1),
                Algo::one_rejection, options);
      if (inst.n <= 12 && inst.num_sets() <= 16) {
        // the exhaustive oracle stays guarded off beyond desk scale
        bench_row(inst, "brute", "2", RejectionBudget::limit(2), Algo::brute,
                  options);
        bench_row(inst, "brute", "inf", RejectionBudget::unbounded(),
                  Algo::brute, options);
        bench_row(inst, "fpt", "inf", RejectionBudget::unbounded(), Algo::fpt,
                  options);
      }
    }
  }
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solvers for rejection-proof d-set packing and kidney exchange"};
  app.require_subcommand(1);

  std::string file, packing_file, budget = "inf", algo = "auto";
  bool witness = false, stats = false, emit_rpsp = false, unguarded = false;
  int threads = 1;
  std::optional<std::string> out_path, trace_path, g_file, h_file;
  std::string kind, suite = "random", sizes = "6..10";
  std::uint64_t seed = 1;
  int gen_n = 8, gen_m = 12, gen_p = 2, gen_d = 3, gen_k = 3, repeat = 1;
  double edge_prob = 0.3;

  auto* solve_cmd = app.add_subcommand("solve", "decide an instance file");
  solve_cmd->add_option("file", file, "rpsp or kep instance")->required();
  solve_cmd->add_option("--c", budget, "rejection budget: inf or an integer");
  solve_cmd->add_option("--algo", algo, "auto|fpt|one-rej|brute|ke");
  solve_cmd->add_flag("--witness", witness, "print a packing on YES");
  solve_cmd->add_flag("--stats", stats, "print solver counters");
  solve_cmd->add_flag("--emit-rpsp", emit_rpsp,
                      "print the translated set-packing instance first");
  solve_cmd->add_option("--threads", threads, "worker threads")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--unguarded", unguarded,
                      "lift the brute-force size guard");

  auto* kern_cmd = app.add_subcommand("kernelize", "preprocess an instance");
  kern_cmd->add_option("file", file, "rpsp or kep instance")->required();
  kern_cmd->add_option("--out", out_path, "write the reduced instance here");
  kern_cmd->add_option("--trace", trace_path, "write rule applications here");

  auto* verify_cmd =
      app.add_subcommand("verify", "check a packing against an instance");
  verify_cmd->add_option("instance", file, "rpsp or kep instance")->required();
  verify_cmd->add_option("packing", packing_file, "packing file")->required();
  verify_cmd->add_option("--c", budget, "rejection budget: inf or an integer");

  auto* gen_cmd = app.add_subcommand("generate", "emit instances");
  gen_cmd->add_option("--kind", kind, "random-rpsp|random-kep|sgi-reduction")
      ->required();
  gen_cmd->add_option("--seed", seed, "generator seed");
  gen_cmd->add_option("--out", out_path, "output path (default stdout)");
  gen_cmd->add_option("--n", gen_n, "elements or vertices");
  gen_cmd->add_option("--m", gen_m, "set count (random-rpsp)");
  gen_cmd->add_option("--p", gen_p, "agent count");
  gen_cmd->add_option("--d", gen_d, "maximum set or cycle size");
  gen_cmd->add_option("--k", gen_k, "coverage target");
  gen_cmd->add_option("--edge-prob", edge_prob, "arc probability (random-kep)");
  gen_cmd->add_option("--host", g_file, "host graph file (sgi-reduction)");
  gen_cmd->add_option("--pattern", h_file,
                      "pattern graph file (sgi-reduction)");

  auto* bench_cmd = app.add_subcommand("bench", "time the solvers, CSV output");
  bench_cmd->add_option("--suite", suite, "random|sgi");
  bench_cmd->add_option("--sizes", sizes, "range a..b or comma list");
  bench_cmd->add_option("--seed", seed, "stream seed");
  bench_cmd->add_option("--repeat", repeat, "repetitions per instance")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--threads", threads, "worker threads")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed())
      return cmd_solve(file, budget, algo, witness, stats, emit_rpsp, threads,
                       unguarded);
    if (kern_cmd->parsed()) return cmd_kernelize(file, out_path, trace_path);
    if (verify_cmd->parsed()) return cmd_verify(file, packing_file, budget);
    if (gen_cmd->parsed())
      return cmd_generate(kind, seed, out_path, gen_n, gen_m, gen_p, gen_d,
                          gen_k, edge_prob, g_file, h_file);
    if (bench_cmd->parsed())
      return cmd_bench(suite, sizes, seed, repeat, threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
