#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rpsp/common.hpp"

namespace rpsp {

// A universe of n elements partitioned over p agents plus a family of sets
// of size at most d. Every solver consumes this shape; kidney-exchange
// graphs are translated into it up front by kep_to_set_packing.
//
// Invariants (see validate_instance):
//   - 0 <= n <= 63, p >= 1, d >= 1, k >= 0
//   - agent_of has one entry per element, each in [0, p)
//   - every set is sorted, duplicate-free, with size in [1, d]
//   - no two sets have the same element content
//
// Instances are immutable after construction by convention; all operations
// are pure functions of their inputs.
struct Instance {
  enum class Origin { raw, from_kep, kernelized };

  int n = 0;
  int p = 1;
  int d = 1;
  int k = 0;
  std::vector<int> agent_of;           // element -> agent
  std::vector<std::vector<int>> sets;  // each sorted ascending
  Origin origin = Origin::raw;

  int num_sets() const { return static_cast<int>(sets.size()); }
};

// Sorts each set and validates all invariants; throws InvalidParameterError
// listing every violation found.
Instance make_instance(int n, int p, std::vector<int> agent_of,
                       std::vector<std::vector<int>> sets, int d, int k,
                       Instance::Origin origin = Instance::Origin::raw);

// Checks every instance invariant and reports all violations, not just the
// first. Empty result means well-formed. Violations are data, not errors.
std::vector<std::string> validate_instance(const Instance& inst);

std::vector<Mask> set_masks(const Instance& inst);
std::vector<Mask> agent_masks(const Instance& inst);

// A packing is a sorted list of set indices whose sets are pairwise
// disjoint.
using Packing = std::vector<int>;

bool packing_valid(const Instance& inst, const Packing& x);

// Union of the referenced sets. Throws InvalidPackingError when indices are
// out of range, repeated, or the sets overlap.
Mask covered(const Instance& inst, const Packing& x);

// Indices of the sets contained in agent a's elements (the a-internal sets).
std::vector<int> internal_sets(const Instance& inst, int a);

// Generalized restriction: indices of the sets contained in the given
// element set.
std::vector<int> restrict_sets(const Instance& inst, Mask allowed);

// Drops elements that appear in no set and renumbers the rest; set order,
// agent ids, d and k are unchanged. old_element maps new ids back.
struct CompactResult {
  Instance instance;
  std::vector<int> old_element;
};
CompactResult compact_elements(const Instance& inst);

struct Digraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // ordered pairs, u != v
};

// Validates vertex ids, rejects self-loops and duplicate edges, and stores
// the edge list sorted.
Digraph make_digraph(int n, std::vector<std::pair<int, int>> edges);

bool has_edge(const Digraph& g, int u, int v);

// A directed cycle in canonical rotation: the minimum vertex comes first.
using Cycle = std::vector<int>;

// Every simple directed cycle of length 2..d, each orientation reported
// exactly once, sorted lexicographically. d < 2 is an error.
std::vector<Cycle> enumerate_d_cycles(const Digraph& g, int d);

// Set-system view of a kidney exchange graph: one element per vertex and
// one set per distinct vertex set of a d-cycle (two orientations of the
// same vertex set collapse into one set).
Instance kep_to_set_packing(const Digraph& g, const std::vector<int>& agent_of,
                            int p, int d, int k);

// Recovers a directed cycle on exactly the given vertex set, if one exists.
std::optional<Cycle> find_cycle_orientation(const Digraph& g,
                                            const std::vector<int>& vertices);

// Raw kidney-exchange input before translation.
struct KepInput {
  Digraph g;
  std::vector<int> agent_of;
  int p = 1;
  int d = 3;
  int k = 0;
};

}  // namespace rpsp
