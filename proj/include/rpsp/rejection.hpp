#pragma once

#include <optional>
#include <string>

#include "rpsp/instance.hpp"

namespace rpsp {

// How many packed sets an agent may discard in a rejection; no value means
// unbounded.
struct RejectionBudget {
  std::optional<int> c;

  static RejectionBudget unbounded() { return {}; }
  static RejectionBudget limit(int c);

  bool is_unbounded() const { return !c.has_value(); }
  bool allows(int rejected) const { return is_unbounded() || rejected <= *c; }
};

// An agent's rejection of a packing: drop `rejected` from the packing and
// add the agent-internal sets `added`; the result stays pairwise disjoint
// and covers strictly more of the agent's elements.
struct RejectionWitness {
  int agent = 0;
  std::vector<int> rejected;
  std::vector<int> added;
};

// One-line record used by the CLI: reject agent=<a> rej=<i,...> int=<i,...>
std::string format_witness(const RejectionWitness& w);

// Re-checks a witness against the rejection definition, independently of
// how it was found.
bool witness_valid(const Instance& inst, const Packing& x,
                   const RejectionWitness& w, RejectionBudget budget);

// Decides whether `agent` (budget-)rejects x. Candidate added-families are
// enumerated by increasing size, then lexicographically by set index; the
// rejected side is always forced to exactly the packed sets hit by the
// added family, which is the minimal choice and loses no witnesses. The
// first witness in that order is returned.
std::optional<RejectionWitness> find_rejection(const Instance& inst,
                                               const Packing& x, int agent,
                                               RejectionBudget budget);

// Exhaustive search over all (rejected, added) pairs, with no forced
// minimality and no pruning. Slow, but independent of the canonical search
// path; the brute-force solver and the cross-checks build on it.
std::optional<RejectionWitness> find_rejection_oracle(const Instance& inst,
                                                      const Packing& x,
                                                      int agent,
                                                      RejectionBudget budget);

// True iff no agent (budget-)rejects x.
bool is_rejection_proof(const Instance& inst, const Packing& x,
                        RejectionBudget budget, bool oracle = false);

// True iff x is a valid packing covering at least k elements. Invalid
// packings yield false, not an error.
bool is_candidate_solution(const Instance& inst, const Packing& x);

}  // namespace rpsp
