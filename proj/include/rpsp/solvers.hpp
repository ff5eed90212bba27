#pragma once

#include <cstdint>
#include <optional>

#include "rpsp/instance.hpp"
#include "rpsp/rejection.hpp"

namespace rpsp {

struct SolveStats {
  std::uint64_t subsets_examined = 0;
  std::uint64_t dp_cells = 0;
  std::uint64_t rejections_checked = 0;
  double wall_ms = 0.0;
};

struct SolveResult {
  bool yes = false;
  std::optional<Packing> witness;  // valid candidate, rejection-proof at the
                                   // queried budget, when yes
  SolveStats stats;
};

struct SolveOptions {
  int threads = 1;
  bool unguarded = false;  // lifts the brute-force size guard
};

// Exact set cover by the layered recurrence
//   T[U', i] = T[U', i-1] or (S_i ⊆ U' and T[U' \ S_i, i-1])
// over subsets of `universe`. Exactly 2^|universe| * (m+1) cells are
// evaluated; the count lands in stats->dp_cells. Witness reconstruction
// walks the layers backwards.
struct ExactCoverResult {
  bool coverable = false;
  std::optional<std::vector<int>> witness;
};

ExactCoverResult exact_cover_dp(Mask universe, const std::vector<Mask>& sets,
                                bool want_witness = false,
                                SolveStats* stats = nullptr);

// Exhaustive oracle: every disjoint subfamily is enumerated and candidates
// are checked with the oracle-mode rejection search. Guarded to n <= 12,
// m <= 16 unless options.unguarded.
SolveResult solve_brute_force(const Instance& inst, RejectionBudget budget,
                              const SolveOptions& options = {});

// Kernelize, then enumerate packings of at most k*d sets on the reduced
// instance. Unbounded budget only. A decided-yes kernel outcome produces a
// witness from per-agent maximum internal packings extended greedily to an
// inclusion-maximal packing.
SolveResult solve_fpt(const Instance& inst, const SolveOptions& options = {});

// Budget c = 1. Scans candidate covered-element sets U' in decreasing size,
// keeps the sets that cannot trigger a single-set rejection inside U', and
// asks exact cover whether the survivors tile U'.
SolveResult solve_one_rejection(const Instance& inst,
                                const SolveOptions& options = {});

// Budget c = 0 reduces to plain maximum coverage: subset DP over the
// universe, agents ignored.
struct KeResult {
  int max_coverage = 0;
  Packing witness;
  SolveStats stats;
};

KeResult solve_ke(const Instance& inst, const SolveOptions& options = {});

enum class Algo { automatic, fpt, one_rejection, brute, ke };

// Dispatch. automatic picks ke for c=0, one_rejection for c=1, fpt for
// unbounded and brute force otherwise; explicit algos are validated against
// the budget (fpt needs unbounded, one_rejection needs c=1, ke needs c=0).
SolveResult solve(const Instance& inst, RejectionBudget budget,
                  Algo algo = Algo::automatic,
                  const SolveOptions& options = {});

}  // namespace rpsp
