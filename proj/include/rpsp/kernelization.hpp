#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rpsp/instance.hpp"

namespace rpsp {

// f_d(k) = d * d! * (d(kd-1)+1)^d  -- the per-agent internal-family size
// above which the first reduction rule is guaranteed to apply.
// Throws OverflowError instead of wrapping when the value exceeds 64 bits.
std::uint64_t f_bound(int d, int k);

// g_d(k) = d * d! * (d^(d-1) (d(kd-1)+1) + d k f_d(k))^d  -- the kernel
// size bound. Same overflow behavior as f_bound.
std::uint64_t g_bound(int d, int k);

// m < g_d(k), evaluated with saturating arithmetic so the comparison stays
// meaningful when the bound leaves the 64-bit range.
bool below_g_bound(std::uint64_t m, int d, int k);

// A family of sets whose pairwise intersections all equal `core`, each with
// a non-empty petal (set minus core). members are positions in the queried
// set list.
struct Sunflower {
  std::vector<int> core;
  std::vector<int> members;
};

// Searches for a sunflower with at least z petals via the recursive
// construction: take a greedy maximal disjoint subfamily; if it has z
// members it is a sunflower with empty core, otherwise recurse on the most
// frequent element. Above the |sets| > d*d!*(z-1)^d threshold a sunflower
// is guaranteed; below it the search is opportunistic. Deterministic given
// input order. z < 2 is an error; sets must be non-empty with size <= d.
std::optional<Sunflower> find_sunflower(
    const std::vector<std::vector<int>>& sets, std::uint64_t z);

bool sunflower_valid(const std::vector<std::vector<int>>& sets,
                     const Sunflower& sf);

// Inclusion-maximal disjoint family built by scanning sets in index order.
// When its size is <= k, the union of its sets is a hitting set of size
// <= k*d.
Packing greedy_maximal_packing(const Instance& inst);

// One reduction-rule application. `removed` and `members` are indices into
// the instance the rule was applied to; replaying a trace therefore removes
// recorded indices sequentially.
struct RuleRecord {
  int rule = 0;  // 1 = internal-family rule, 2 = external-family rule
  int removed = 0;
  std::vector<int> core;
  std::vector<int> members;
};

std::string format_rule_record(const RuleRecord& r);

struct RuleApplication {
  Instance instance;
  RuleRecord record;
};

// Rule 1: some agent's internal family contains a sunflower of size
// d(kd-1)+2; remove its minimum-size member (lowest index on ties).
// Safe only when the instance has a hitting set of size <= k*d, which the
// kernel driver establishes before applying it.
std::optional<RuleApplication> apply_rr_internal(const Instance& inst);

// Rule 2: a sunflower of size d(kd-1)+2 whose petals avoid all internal
// sets and whose members agree on |S ∩ U_a| for every agent a owning an
// internal set that meets the core; remove its minimum-size member. The
// guaranteed search asks for d^(d-1)(d(kd-1)+1) + d k f_d(k) + 1 petals and
// extracts a qualifying sub-sunflower; when that fails, a direct search for
// the smaller sunflower runs opportunistically (safety does not depend on
// the larger threshold).
std::optional<RuleApplication> apply_rr_external(const Instance& inst);

struct KernelOutcome {
  enum class Verdict { decided_yes, reduced };

  Verdict verdict = Verdict::reduced;
  std::optional<Instance> instance;  // present when reduced
  std::vector<RuleRecord> trace;
  std::vector<int> kept;  // reduced set index -> input set index
};

// Kernel driver. Loops: (a) if the greedy maximal packing exceeds k sets,
// the instance is a YES; (b) if at least k agents own an internal set, the
// instance is a YES; (c) if fewer than g_d(k) sets remain, stop with the
// reduced instance; (d) otherwise one of the rules applies (a
// contradiction here raises InternalError). Each application removes one
// set, so the loop terminates.
KernelOutcome kernelize(const Instance& inst);

// Applies the recorded removals to the input; reproduces the reduced
// instance exactly.
Instance replay_trace(const Instance& inst,
                      const std::vector<RuleRecord>& trace);

}  // namespace rpsp
