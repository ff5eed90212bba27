#pragma once

#include <cstdint>
#include <optional>

#include "rpsp/instance.hpp"

namespace rpsp {

struct UndirectedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // stored with u < v, sorted
};

UndirectedGraph make_undirected_graph(int n,
                                      std::vector<std::pair<int, int>> edges);

bool has_undirected_edge(const UndirectedGraph& g, int u, int v);

// Zones of the hard-instance construction. The first agent owns
// W1 ∪ W3 ∪ W5 ∪ {z}, the second owns W2 ∪ W4.
enum class Zone { W1, W2, W3, W4, W5, Z };

// Every 3-cycle of the constructed graph falls in exactly one class:
//   A: 2-cycle inside W1            T: 3-cycle inside W1
//   I: (W1, W2, W3) triple          F: (W3, W4, W5) triple
//   N: (W3, W3, z) triple           R: (W3, z) 2-cycle
enum class CycleClass { A, T, I, F, N, R };

const char* zone_name(Zone z);
const char* cycle_class_name(CycleClass c);

// Output of the subgraph-isomorphism reduction: a directed graph on
// 3*n_G + 1 vertices over two agents with coverage target k = 3*n_G, plus
// the zone labeling needed to classify its cycles. The vertex order fixed
// for the non-adjacency edges is ascending vertex index.
struct ReductionArtifact {
  Digraph gprime;
  std::vector<Zone> zone_of;
  std::vector<int> agent_of;
  int k = 0;
  int n_g = 0;
  int n_h = 0;

  int w1(int u) const { return u; }
  int w2(int u) const { return n_h + u; }
  int w3(int x) const { return 2 * n_h + x; }
  int w4(int i) const { return 2 * n_h + n_g + i; }
  int w5(int i) const { return 2 * n_h + n_g + (n_g - n_h) + i; }
  int z() const { return 3 * n_g; }
};

// Builds the instance that is hard exactly when h maps into g. Requires
// n_H <= n_G (the caller handles the trivial no) and 3*n_G + 1 <= 63.
ReductionArtifact reduce_subgraph_iso(const UndirectedGraph& g,
                                      const UndirectedGraph& h);

// Classifies a cycle of length <= 3 in the constructed graph; anything
// unclassifiable raises InternalError, which would falsify the
// completeness of the six classes.
CycleClass classify_cycle(const ReductionArtifact& art, const Cycle& c);

// The artifact translated through kep_to_set_packing (d = 3, k = 3*n_G).
Instance artifact_instance(const ReductionArtifact& art);

// Lexicographically first injective edge-preserving map from h into g, or
// nothing. Factorial search; fine for n_H <= 8.
std::optional<std::vector<int>> brute_subgraph_iso(const UndirectedGraph& g,
                                                   const UndirectedGraph& h);

bool is_subgraph_iso(const UndirectedGraph& g, const UndirectedGraph& h,
                     const std::vector<int>& mapping);

// Encodes a subgraph isomorphism as a packing over artifact_instance(art):
// one I-set per mapped vertex plus filler F-sets, covering everything but
// z. Invalid mappings are an error.
Packing witness_from_iso(const ReductionArtifact& art,
                         const std::vector<int>& mapping);

// Seeded generators; identical seeds give identical outputs.
Instance random_instance(int n, int m, int p, int d, int k,
                         std::uint64_t seed);
KepInput random_kep(int n_vertices, double edge_prob, int p, int d, int k,
                    std::uint64_t seed);

}  // namespace rpsp
