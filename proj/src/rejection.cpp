#include "rpsp/rejection.hpp"

#include <algorithm>
#include <sstream>

namespace rpsp {

RejectionBudget RejectionBudget::limit(int c) {
  if (c < 0)
    throw InvalidParameterError("rejection budget " + std::to_string(c) +
                                " is negative");
  return RejectionBudget{c};
}

namespace {

void append_indices(std::ostringstream& out, const std::vector<int>& idx) {
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i) out << ',';
    out << idx[i];
  }
}

}  // namespace

std::string format_witness(const RejectionWitness& w) {
  std::ostringstream out;
  out << "reject agent=" << w.agent << " rej=";
  append_indices(out, w.rejected);
  out << " int=";
  append_indices(out, w.added);
  return out.str();
}

bool witness_valid(const Instance& inst, const Packing& x,
                   const RejectionWitness& w, RejectionBudget budget) {
  if (w.agent < 0 || w.agent >= inst.p) return false;
  if (!budget.allows(static_cast<int>(w.rejected.size()))) return false;
  // rejected must come from the packing
  for (int idx : w.rejected)
    if (!std::binary_search(x.begin(), x.end(), idx)) return false;
  auto masks = set_masks(inst);
  Mask agent_mask = agent_masks(inst)[w.agent];
  // added sets are agent-internal
  for (int idx : w.added) {
    if (idx < 0 || idx >= inst.num_sets()) return false;
    if (masks[idx] & ~agent_mask) return false;
  }
  // the alternative packing must stay pairwise disjoint; treat it as a set
  // family (re-added members of the packing are not double-counted)
  std::vector<int> alt;
  for (int idx : x)
    if (!std::binary_search(w.rejected.begin(), w.rejected.end(), idx))
      alt.push_back(idx);
  for (int idx : w.added)
    if (std::find(alt.begin(), alt.end(), idx) == alt.end()) alt.push_back(idx);
  Mask alt_cov = 0;
  for (int idx : alt) {
    if (alt_cov & masks[idx]) return false;
    alt_cov |= masks[idx];
  }
  Mask cov = covered(inst, x);
  return popcount(alt_cov & agent_mask) > popcount(cov & agent_mask);
}

namespace {

struct RejectionSearch {
  const Instance& inst;
  const Packing& x;
  int agent;
  RejectionBudget budget;
  std::vector<Mask> masks;
  Mask agent_mask;
  Mask x_cov;
  int base_agent_cov;
  std::vector<int> internal;  // candidate added sets, ascending

  RejectionSearch(const Instance& inst_, const Packing& x_, int agent_,
                  RejectionBudget budget_)
      : inst(inst_), x(x_), agent(agent_), budget(budget_) {
    if (agent < 0 || agent >= inst.p)
      throw InvalidParameterError("agent " + std::to_string(agent) +
                                  " outside [0, " + std::to_string(inst.p) +
                                  ")");
    masks = set_masks(inst);
    agent_mask = agent_masks(inst)[agent];
    x_cov = covered(inst, x);  // also validates the packing
    base_agent_cov = popcount(x_cov & agent_mask);
  }

  // The rejected side is forced: exactly the packed sets hit by the added
  // family. Dropping anything else cannot help the agent, and anything hit
  // must go to keep the family disjoint.
  std::vector<int> forced_rejected(Mask added_union) const {
    std::vector<int> rej;
    for (int idx : x)
      if (masks[idx] & added_union) rej.push_back(idx);
    return rej;
  }

  bool improves(Mask added_union, const std::vector<int>& rej) const {
    Mask kept = x_cov;
    for (int idx : rej) kept &= ~masks[idx];
    return popcount((kept | added_union) & agent_mask) > base_agent_cov;
  }

  // DFS over added families of exactly `want` more sets, indices ascending,
  // so witnesses come out ordered by (family size, lexicographic indices).
  std::optional<RejectionWitness> dfs(size_t start, int want,
                                      std::vector<int>& chosen,
                                      Mask chosen_union, int forced_count,
                                      bool& size_reachable) {
    if (want == 0) {
      size_reachable = true;
      auto rej = forced_rejected(chosen_union);
      if (budget.allows(static_cast<int>(rej.size())) &&
          improves(chosen_union, rej))
        return RejectionWitness{agent, std::move(rej), chosen};
      return std::nullopt;
    }
    for (size_t pos = start; pos < internal.size(); ++pos) {
      int idx = internal[pos];
      if (masks[idx] & chosen_union) continue;
      int forced = forced_count;
      if (!budget.is_unbounded()) {
        forced = static_cast<int>(forced_rejected(chosen_union | masks[idx]).size());
        if (forced > *budget.c) continue;  // forced side only grows
      }
      chosen.push_back(idx);
      auto found = dfs(pos + 1, want - 1, chosen, chosen_union | masks[idx],
                       forced, size_reachable);
      chosen.pop_back();
      if (found) return found;
    }
    return std::nullopt;
  }

  std::optional<RejectionWitness> run() {
    internal = internal_sets(inst, agent);
    if (internal.empty()) return std::nullopt;
    // no alternative reaches beyond the packing plus the internal sets
    Mask internal_union = 0;
    for (int idx : internal) internal_union |= masks[idx];
    if (popcount((x_cov | internal_union) & agent_mask) <= base_agent_cov)
      return std::nullopt;
    // iterative deepening: all size-s families precede size-(s+1) ones
    for (int s = 1; s <= static_cast<int>(internal.size()); ++s) {
      bool size_reachable = false;
      std::vector<int> chosen;
      auto found = dfs(0, s, chosen, 0, 0, size_reachable);
      if (found) return found;
      if (!size_reachable) break;  // no disjoint family of size s exists
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<RejectionWitness> find_rejection(const Instance& inst,
                                               const Packing& x, int agent,
                                               RejectionBudget budget) {
  RejectionSearch search(inst, x, agent, budget);
  return search.run();
}

namespace {

struct AvailableSet {
  int idx;
  Mask mask;
};

// All disjoint families drawn from `avail`, reporting each node of the
// enumeration tree. suffix_or[pos] bounds what positions >= pos can still
// cover, which lets hopeless branches stop early without affecting what is
// reachable.
bool oracle_added_dfs(const std::vector<AvailableSet>& avail,
                      const std::vector<Mask>& suffix_or, size_t pos,
                      Mask added_union, std::vector<int>& chosen,
                      Mask agent_mask, Mask kept_cov, int base_agent_cov,
                      RejectionWitness& out) {
  if (!chosen.empty() &&
      popcount((kept_cov | added_union) & agent_mask) > base_agent_cov) {
    out.added = chosen;
    return true;
  }
  if (popcount((kept_cov | added_union | suffix_or[pos]) & agent_mask) <=
      base_agent_cov)
    return false;
  for (size_t i = pos; i < avail.size(); ++i) {
    if (avail[i].mask & added_union) continue;
    chosen.push_back(avail[i].idx);
    if (oracle_added_dfs(avail, suffix_or, i + 1, added_union | avail[i].mask,
                         chosen, agent_mask, kept_cov, base_agent_cov, out))
      return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<RejectionWitness> find_rejection_oracle(const Instance& inst,
                                                      const Packing& x,
                                                      int agent,
                                                      RejectionBudget budget) {
  if (agent < 0 || agent >= inst.p)
    throw InvalidParameterError("agent " + std::to_string(agent) +
                                " outside [0, " + std::to_string(inst.p) + ")");
  auto masks = set_masks(inst);
  Mask agent_mask = agent_masks(inst)[agent];
  Mask x_cov = covered(inst, x);
  int base = popcount(x_cov & agent_mask);
  auto internal = internal_sets(inst, agent);
  if (internal.empty()) return std::nullopt;

  // no alternative reaches beyond the packing plus the internal sets
  Mask internal_union = 0;
  for (int idx : internal) internal_union |= masks[idx];
  if (popcount((x_cov | internal_union) & agent_mask) <= base)
    return std::nullopt;

  size_t t = x.size();
  for (Mask rej_bits = 0; rej_bits < (Mask{1} << t); ++rej_bits) {
    int rej_count = popcount(rej_bits);
    if (!budget.allows(rej_count)) continue;
    std::vector<int> rejected;
    Mask kept_cov = 0;
    for (size_t i = 0; i < t; ++i) {
      if (rej_bits & bit(static_cast<int>(i)))
        rejected.push_back(x[i]);
      else
        kept_cov |= masks[x[i]];
    }
    std::vector<AvailableSet> avail;
    for (int idx : internal)
      if ((masks[idx] & kept_cov) == 0) avail.push_back({idx, masks[idx]});
    std::vector<Mask> suffix_or(avail.size() + 1, 0);
    for (size_t i = avail.size(); i > 0; --i)
      suffix_or[i - 1] = avail[i - 1].mask | suffix_or[i];

    RejectionWitness w;
    w.agent = agent;
    w.rejected = rejected;
    std::vector<int> chosen;
    if (oracle_added_dfs(avail, suffix_or, 0, 0, chosen, agent_mask, kept_cov,
                         base, w))
      return w;
  }
  return std::nullopt;
}

bool is_rejection_proof(const Instance& inst, const Packing& x,
                        RejectionBudget budget, bool oracle) {
  for (int a = 0; a < inst.p; ++a) {
    auto w = oracle ? find_rejection_oracle(inst, x, a, budget)
                    : find_rejection(inst, x, a, budget);
    if (w) return false;
  }
  return true;
}

bool is_candidate_solution(const Instance& inst, const Packing& x) {
  if (!packing_valid(inst, x)) return false;
  return popcount(covered(inst, x)) >= inst.k;
}

}  // namespace rpsp
