#include "rpsp/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "rpsp/kernelization.hpp"

namespace rpsp {

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// word-packed boolean table over 2^u masks
class BitTable {
 public:
  explicit BitTable(std::uint64_t size)
      : words_((size + 63) / 64, 0), size_(size) {}
  bool get(std::uint64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  void set(std::uint64_t i, bool v) {
    if (v)
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  std::uint64_t size() const { return size_; }

 private:
  std::vector<std::uint64_t> words_;
  std::uint64_t size_;
};

// compress a mask onto the bit positions of `universe`
struct Compactor {
  explicit Compactor(Mask universe) : universe_(universe) {
    int local = 0;
    for (int e = 0; e < 64; ++e)
      if (universe & bit(e)) local_of_[e] = local++;
    bits_ = local;
  }
  Mask compress(Mask m) const {
    Mask out = 0;
    Mask rest = m;
    while (rest) {
      int e = lowest_bit(rest);
      out |= bit(local_of_[e]);
      rest &= rest - 1;
    }
    return out;
  }
  int bits() const { return bits_; }

 private:
  Mask universe_;
  int local_of_[64] = {};
  int bits_ = 0;
};

}  // namespace

ExactCoverResult exact_cover_dp(Mask universe, const std::vector<Mask>& sets,
                                bool want_witness, SolveStats* stats) {
  int u = popcount(universe);
  if (u > kMaxElements)
    throw SizeLimitError("universe has " + std::to_string(u) +
                         " elements, limit is " +
                         std::to_string(kMaxElements));
  for (size_t i = 0; i < sets.size(); ++i)
    if (sets[i] & ~universe)
      throw InvalidParameterError("set " + std::to_string(i) +
                                  " leaves the universe");

  Compactor compact(universe);
  const std::uint64_t space = std::uint64_t{1} << u;
  const size_t m = sets.size();
  std::vector<Mask> local(m);
  for (size_t i = 0; i < m; ++i) local[i] = compact.compress(sets[i]);

  // T[U', i] over layers i = 0..m; every layer evaluates 2^u cells
  auto run_layer = [&](const BitTable& prev, BitTable& cur, Mask set) {
    for (std::uint64_t mask = 0; mask < space; ++mask) {
      bool v = prev.get(mask) ||
               ((set & ~mask) == 0 && prev.get(mask & ~set));
      cur.set(mask, v);
    }
  };
  if (stats) stats->dp_cells += space * (m + 1);

  ExactCoverResult res;
  if (!want_witness) {
    BitTable prev(space), cur(space);
    prev.set(0, true);
    for (size_t i = 0; i < m; ++i) {
      run_layer(prev, cur, local[i]);
      std::swap(prev, cur);
    }
    res.coverable = prev.get(space - 1);
    return res;
  }

  std::vector<BitTable> layers;
  layers.reserve(m + 1);
  layers.emplace_back(space);
  layers[0].set(0, true);
  for (size_t i = 0; i < m; ++i) {
    layers.emplace_back(space);
    run_layer(layers[i], layers[i + 1], local[i]);
  }
  res.coverable = layers[m].get(space - 1);
  if (!res.coverable) return res;

  std::vector<int> picked;
  std::uint64_t mask = space - 1;
  for (size_t i = m; i > 0; --i) {
    if (layers[i - 1].get(mask)) continue;  // set i-1 unused
    picked.push_back(static_cast<int>(i - 1));
    mask &= ~local[i - 1];
  }
  std::reverse(picked.begin(), picked.end());
  res.witness = std::move(picked);
  return res;
}

namespace {

// maximum coverage of `universe` by pairwise disjoint sets; returns
// (coverage, indices into `sets`)
std::pair<int, std::vector<int>> max_cover_dp(Mask universe,
                                              const std::vector<Mask>& sets,
                                              SolveStats* stats) {
  Compactor compact(universe);
  int u = compact.bits();
  const std::uint64_t space = std::uint64_t{1} << u;
  std::vector<Mask> local;
  std::vector<int> ids;
  for (size_t i = 0; i < sets.size(); ++i) {
    if (sets[i] & ~universe) continue;
    local.push_back(compact.compress(sets[i]));
    ids.push_back(static_cast<int>(i));
  }
  std::vector<std::vector<int>> by_element(u);
  for (size_t i = 0; i < local.size(); ++i)
    for (Mask m = local[i]; m; m &= m - 1)
      by_element[lowest_bit(m)].push_back(static_cast<int>(i));

  std::vector<std::uint8_t> best(space, 0);
  for (std::uint64_t mask = 1; mask < space; ++mask) {
    int low = lowest_bit(mask);
    std::uint8_t v = best[mask & ~bit(low)];
    for (int i : by_element[low]) {
      if (local[i] & ~mask) continue;
      std::uint8_t c =
          static_cast<std::uint8_t>(popcount(local[i]) + best[mask & ~local[i]]);
      if (c > v) v = c;
    }
    best[mask] = v;
  }
  if (stats) stats->dp_cells += space;

  std::vector<int> witness;
  std::uint64_t mask = space - 1;
  while (mask) {
    int low = lowest_bit(mask);
    if (best[mask] == best[mask & ~bit(low)]) {
      mask &= ~bit(low);
      continue;
    }
    for (int i : by_element[low]) {
      if (local[i] & ~mask) continue;
      if (popcount(local[i]) + best[mask & ~local[i]] == best[mask]) {
        witness.push_back(ids[i]);
        mask &= ~local[i];
        break;
      }
    }
  }
  std::sort(witness.begin(), witness.end());
  return {best[space - 1], std::move(witness)};
}

}  // namespace

KeResult solve_ke(const Instance& inst, const SolveOptions&) {
  Timer timer;
  KeResult res;
  auto masks = set_masks(inst);
  Mask touched = 0;
  for (Mask m : masks) touched |= m;
  auto [cov, witness] = max_cover_dp(touched, masks, &res.stats);
  res.max_coverage = cov;
  res.witness = std::move(witness);
  res.stats.wall_ms = timer.ms();
  return res;
}

namespace {

struct BruteSearch {
  const Instance& inst;
  RejectionBudget budget;
  SolveStats& stats;
  std::vector<Mask> masks;
  std::vector<Mask> suffix_or;
  Packing found;

  BruteSearch(const Instance& i, RejectionBudget b, SolveStats& s)
      : inst(i), budget(b), stats(s), masks(set_masks(i)) {
    suffix_or.assign(masks.size() + 1, 0);
    for (size_t j = masks.size(); j > 0; --j)
      suffix_or[j - 1] = masks[j - 1] | suffix_or[j];
  }

  bool dfs(size_t start, Packing& family, Mask cov) {
    ++stats.subsets_examined;
    if (popcount(cov) >= inst.k) {
      ++stats.rejections_checked;
      if (is_rejection_proof(inst, family, budget, /*oracle=*/true)) {
        found = family;
        return true;
      }
    }
    for (size_t j = start; j < masks.size(); ++j) {
      if (popcount(cov | suffix_or[j]) < inst.k) break;  // cannot reach k
      if (masks[j] & cov) continue;
      family.push_back(static_cast<int>(j));
      if (dfs(j + 1, family, cov | masks[j])) return true;
      family.pop_back();
    }
    return false;
  }
};

}  // namespace

SolveResult solve_brute_force(const Instance& inst, RejectionBudget budget,
                              const SolveOptions& options) {
  if (!options.unguarded && (inst.n > 12 || inst.num_sets() > 16))
    throw SizeLimitError(
        "brute force is guarded to n <= 12 and m <= 16 (n = " +
        std::to_string(inst.n) + ", m = " + std::to_string(inst.num_sets()) +
        "); lift with the unguarded option");
  Timer timer;
  SolveResult res;
  BruteSearch search(inst, budget, res.stats);
  Packing family;
  res.yes = search.dfs(0, family, 0);
  if (res.yes) res.witness = std::move(search.found);
  res.stats.wall_ms = timer.ms();
  return res;
}

namespace {

// union of per-agent maximum internal packings, extended greedily with
// disjoint sets until k elements are covered; every prefix of the extension
// is rejection-proof, and inclusion-maximality guarantees the target is
// reached, so stopping early keeps the witness small
Packing maximal_rejection_proof_packing(const Instance& inst,
                                        SolveStats* stats) {
  auto masks = set_masks(inst);
  auto agents = agent_masks(inst);
  Packing packing;
  Mask cov = 0;
  for (int a = 0; a < inst.p; ++a) {
    auto internal = internal_sets(inst, a);
    if (internal.empty()) continue;
    std::vector<Mask> internal_masks;
    internal_masks.reserve(internal.size());
    Mask touched = 0;
    for (int idx : internal) {
      internal_masks.push_back(masks[idx]);
      touched |= masks[idx];
    }
    auto [best, local] = max_cover_dp(touched, internal_masks, stats);
    (void)best;
    for (int pos : local) {
      packing.push_back(internal[pos]);
      cov |= masks[internal[pos]];
    }
  }
  for (int j = 0; j < inst.num_sets() && popcount(cov) < inst.k; ++j) {
    if (masks[j] & cov) continue;
    packing.push_back(j);
    cov |= masks[j];
  }
  std::sort(packing.begin(), packing.end());
  return packing;
}

struct FptSearch {
  const Instance& inst;
  SolveStats& stats;
  std::vector<Mask> masks;
  std::vector<Mask> suffix_or;
  size_t max_sets;
  Packing found;

  FptSearch(const Instance& i, size_t cap, SolveStats& s)
      : inst(i), stats(s), masks(set_masks(i)), max_sets(cap) {
    suffix_or.assign(masks.size() + 1, 0);
    for (size_t j = masks.size(); j > 0; --j)
      suffix_or[j - 1] = masks[j - 1] | suffix_or[j];
  }

  bool dfs(size_t start, Packing& family, Mask cov) {
    ++stats.subsets_examined;
    if (popcount(cov) >= inst.k) {
      ++stats.rejections_checked;
      if (is_rejection_proof(inst, family, RejectionBudget::unbounded())) {
        found = family;
        return true;
      }
    }
    if (family.size() == max_sets) return false;
    for (size_t j = start; j < masks.size(); ++j) {
      if (popcount(cov | suffix_or[j]) < inst.k) break;
      if (masks[j] & cov) continue;
      family.push_back(static_cast<int>(j));
      if (dfs(j + 1, family, cov | masks[j])) return true;
      family.pop_back();
    }
    return false;
  }
};

}  // namespace

SolveResult solve_fpt(const Instance& inst, const SolveOptions&) {
  Timer timer;
  SolveResult res;
  auto outcome = kernelize(inst);
  if (outcome.verdict == KernelOutcome::Verdict::decided_yes) {
    res.yes = true;
    res.witness = maximal_rejection_proof_packing(inst, &res.stats);
    res.stats.wall_ms = timer.ms();
    return res;
  }

  // packings on the kernel have at most k*d sets (its hitting set has size
  // <= k*d); elements outside every set are dropped before enumerating
  auto compact = compact_elements(*outcome.instance);
  std::uint64_t cap = static_cast<std::uint64_t>(compact.instance.k) *
                      compact.instance.d;
  cap = std::min<std::uint64_t>(cap, compact.instance.sets.size());
  FptSearch search(compact.instance, static_cast<size_t>(cap), res.stats);
  Packing family;
  if (search.dfs(0, family, 0)) {
    res.yes = true;
    Packing original;
    original.reserve(search.found.size());
    for (int j : search.found) original.push_back(outcome.kept[j]);
    std::sort(original.begin(), original.end());
    res.witness = std::move(original);
  }
  res.stats.wall_ms = timer.ms();
  return res;
}

namespace {

struct OneRejectionContext {
  const Instance& inst;
  std::vector<Mask> masks;
  std::vector<Mask> agents;
  std::vector<std::pair<int, Mask>> internal;  // (agent, mask)
  std::vector<std::vector<Mask>> internal_of;  // per agent
  BitTable coverable;

  OneRejectionContext(const Instance& i, SolveStats& stats)
      : inst(i),
        masks(set_masks(i)),
        agents(agent_masks(i)),
        internal_of(i.p),
        coverable(std::uint64_t{1} << i.n) {
    for (int a = 0; a < inst.p; ++a)
      for (int idx : internal_sets(inst, a)) {
        internal.emplace_back(a, masks[idx]);
        internal_of[a].push_back(masks[idx]);
      }

    // exact coverability of every subset, one table for all candidates
    std::vector<std::vector<int>> by_element(std::max(inst.n, 1));
    for (size_t i2 = 0; i2 < masks.size(); ++i2)
      for (Mask m = masks[i2]; m; m &= m - 1)
        by_element[lowest_bit(m)].push_back(static_cast<int>(i2));
    coverable.set(0, true);
    const std::uint64_t space = std::uint64_t{1} << inst.n;
    for (std::uint64_t mask = 1; mask < space; ++mask) {
      int low = lowest_bit(mask);
      bool v = false;
      for (int idx : by_element[low]) {
        if (masks[idx] & ~mask) continue;
        if (coverable.get(mask & ~masks[idx])) {
          v = true;
          break;
        }
      }
      coverable.set(mask, v);
    }
    stats.dp_cells += space;
  }

  // would packing set A inside cover U' let some agent improve by dropping
  // only A?
  bool set_rejectable(Mask a_mask, Mask cover,
                      std::uint64_t& rejections_checked) const {
    for (int ag = 0; ag < inst.p; ++ag) {
      if (!(a_mask & agents[ag])) continue;
      ++rejections_checked;
      Mask region = agents[ag] & ~(cover & ~a_mask);
      int target = popcount(a_mask & agents[ag]);
      std::vector<Mask> candidates;
      for (Mask im : internal_of[ag])
        if ((im & ~region) == 0) candidates.push_back(im);
      if (disjoint_family_beats(candidates, 0, 0, 0, target)) return true;
    }
    return false;
  }

  static bool disjoint_family_beats(const std::vector<Mask>& candidates,
                                    size_t start, Mask used, int cov,
                                    int target) {
    if (cov > target) return true;
    for (size_t i = start; i < candidates.size(); ++i) {
      if (candidates[i] & used) continue;
      if (disjoint_family_beats(candidates, i + 1, used | candidates[i],
                                cov + popcount(candidates[i]), target))
        return true;
    }
    return false;
  }

  // nothing: not a solution cover; keep_all: exact cover exists untouched;
  // filtered: some sets dropped, exact cover of the survivors re-checked
  enum class Verdict { no, yes };

  Verdict evaluate(Mask cover, SolveStats& stats) const {
    if (!coverable.get(cover)) return Verdict::no;
    for (const auto& [ag, im] : internal)
      if ((im & cover) == 0) return Verdict::no;  // agent adds it for free
    bool dropped = false;
    std::vector<Mask> kept;
    Mask kept_union = 0;
    for (const Mask& m : masks) {
      if (m & ~cover) continue;
      if (set_rejectable(m, cover, stats.rejections_checked)) {
        dropped = true;
      } else {
        kept.push_back(m);
        kept_union |= m;
      }
    }
    if (!dropped) return Verdict::yes;
    if (kept_union != cover) return Verdict::no;
    auto res = exact_cover_dp(cover, kept, false, &stats);
    return res.coverable ? Verdict::yes : Verdict::no;
  }

  Packing witness_for(Mask cover, SolveStats& stats) const {
    std::vector<Mask> kept;
    std::vector<int> ids;
    for (size_t i = 0; i < masks.size(); ++i) {
      if (masks[i] & ~cover) continue;
      if (set_rejectable(masks[i], cover, stats.rejections_checked)) continue;
      kept.push_back(masks[i]);
      ids.push_back(static_cast<int>(i));
    }
    auto res = exact_cover_dp(cover, kept, true, &stats);
    if (!res.coverable || !res.witness)
      throw InternalError("witness re-derivation failed");
    Packing x;
    for (int pos : *res.witness) x.push_back(ids[pos]);
    std::sort(x.begin(), x.end());
    return x;
  }
};

std::uint64_t next_same_popcount(std::uint64_t v) {
  std::uint64_t c = v & (~v + 1);
  std::uint64_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

}  // namespace

SolveResult solve_one_rejection(const Instance& inst,
                                const SolveOptions& options) {
  if (inst.n > kMaxElements)
    throw SizeLimitError("universe has " + std::to_string(inst.n) +
                         " elements, limit is " +
                         std::to_string(kMaxElements));
  Timer timer;
  SolveResult res;
  OneRejectionContext ctx(inst, res.stats);
  const Mask full = inst.n == 0 ? 0 : bit(inst.n) - 1;

  int threads = std::max(1, options.threads);
  // batches are a fixed size so the examined set of masks (and therefore
  // all counters) never depends on the thread count
  constexpr size_t kBatch = 4096;
  std::vector<Mask> batch;
  batch.reserve(kBatch);

  auto flush = [&](std::optional<Mask>& winner) {
    if (batch.empty()) return;
    std::vector<char> verdicts(batch.size(), 0);
    if (threads == 1 || batch.size() < 128) {
      for (size_t i = 0; i < batch.size(); ++i)
        verdicts[i] =
            ctx.evaluate(batch[i], res.stats) == OneRejectionContext::Verdict::yes;
    } else {
      std::atomic<size_t> cursor{0};
      std::atomic<std::uint64_t> cells{0}, checks{0};
      auto worker = [&] {
        SolveStats local;
        for (;;) {
          size_t i = cursor.fetch_add(1);
          if (i >= batch.size()) break;
          verdicts[i] = ctx.evaluate(batch[i], local) ==
                        OneRejectionContext::Verdict::yes;
        }
        cells.fetch_add(local.dp_cells);
        checks.fetch_add(local.rejections_checked);
      };
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      res.stats.dp_cells += cells.load();
      res.stats.rejections_checked += checks.load();
    }
    res.stats.subsets_examined += batch.size();
    for (size_t i = 0; i < batch.size(); ++i)
      if (verdicts[i]) {
        winner = batch[i];
        break;
      }
    batch.clear();
  };

  std::optional<Mask> winner;
  for (int size = inst.n; size >= inst.k && !winner; --size) {
    if (size == 0) {
      batch.push_back(0);
      flush(winner);
      break;
    }
    std::uint64_t mask = (std::uint64_t{1} << size) - 1;
    for (;;) {
      batch.push_back(mask);
      if (batch.size() == kBatch) {
        flush(winner);
        if (winner) break;
      }
      std::uint64_t nxt = next_same_popcount(mask);
      if (nxt > full || nxt < mask) break;
      mask = nxt;
    }
    if (!winner) flush(winner);
  }

  if (winner) {
    res.yes = true;
    res.witness = ctx.witness_for(*winner, res.stats);
  }
  res.stats.wall_ms = timer.ms();
  return res;
}

SolveResult solve(const Instance& inst, RejectionBudget budget, Algo algo,
                  const SolveOptions& options) {
  if (algo == Algo::automatic) {
    if (budget.is_unbounded())
      algo = Algo::fpt;
    else if (*budget.c == 0)
      algo = Algo::ke;
    else if (*budget.c == 1)
      algo = Algo::one_rejection;
    else
      algo = Algo::brute;
  }
  switch (algo) {
    case Algo::fpt:
      if (!budget.is_unbounded())
        throw InvalidParameterError(
            "the fpt solver handles only the unbounded budget");
      return solve_fpt(inst, options);
    case Algo::one_rejection:
      if (budget.is_unbounded() || *budget.c != 1)
        throw InvalidParameterError(
            "the one-rejection solver requires budget c = 1");
      return solve_one_rejection(inst, options);
    case Algo::ke: {
      if (budget.is_unbounded() || *budget.c != 0)
        throw InvalidParameterError("the ke solver requires budget c = 0");
      KeResult ke = solve_ke(inst, options);
      SolveResult res;
      res.yes = ke.max_coverage >= inst.k;
      if (res.yes) res.witness = std::move(ke.witness);
      res.stats = ke.stats;
      return res;
    }
    case Algo::brute:
      return solve_brute_force(inst, budget, options);
    case Algo::automatic:
      break;
  }
  throw InternalError("unhandled solver dispatch");
}

}  // namespace rpsp
