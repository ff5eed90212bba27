#include "rpsp/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rpsp/rng.hpp"

namespace rpsp {

UndirectedGraph make_undirected_graph(int n,
                                      std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw InvalidParameterError("vertex count is negative");
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InvalidParameterError("edge {" + std::to_string(u) + ", " +
                                  std::to_string(v) + "} outside [0, " +
                                  std::to_string(n) + ")");
    if (u == v)
      throw InvalidParameterError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  for (size_t i = 1; i < edges.size(); ++i)
    if (edges[i] == edges[i - 1])
      throw InvalidParameterError("duplicate edge {" +
                                  std::to_string(edges[i].first) + ", " +
                                  std::to_string(edges[i].second) + "}");
  return UndirectedGraph{n, std::move(edges)};
}

bool has_undirected_edge(const UndirectedGraph& g, int u, int v) {
  if (u > v) std::swap(u, v);
  return std::binary_search(g.edges.begin(), g.edges.end(),
                            std::make_pair(u, v));
}

const char* zone_name(Zone z) {
  switch (z) {
    case Zone::W1: return "W1";
    case Zone::W2: return "W2";
    case Zone::W3: return "W3";
    case Zone::W4: return "W4";
    case Zone::W5: return "W5";
    case Zone::Z: return "Z";
  }
  return "?";
}

const char* cycle_class_name(CycleClass c) {
  switch (c) {
    case CycleClass::A: return "A";
    case CycleClass::T: return "T";
    case CycleClass::I: return "I";
    case CycleClass::F: return "F";
    case CycleClass::N: return "N";
    case CycleClass::R: return "R";
  }
  return "?";
}

ReductionArtifact reduce_subgraph_iso(const UndirectedGraph& g,
                                      const UndirectedGraph& h) {
  const int n_g = g.n;
  const int n_h = h.n;
  if (n_h > n_g)
    throw InvalidParameterError(
        "the pattern graph has more vertices than the host graph");
  const int total = 3 * n_g + 1;
  if (total > kMaxElements)
    throw SizeLimitError("construction needs " + std::to_string(total) +
                         " vertices, limit is " + std::to_string(kMaxElements));

  ReductionArtifact art;
  art.n_g = n_g;
  art.n_h = n_h;
  art.k = 3 * n_g;

  art.zone_of.assign(total, Zone::Z);
  for (int u = 0; u < n_h; ++u) art.zone_of[art.w1(u)] = Zone::W1;
  for (int u = 0; u < n_h; ++u) art.zone_of[art.w2(u)] = Zone::W2;
  for (int x = 0; x < n_g; ++x) art.zone_of[art.w3(x)] = Zone::W3;
  for (int i = 0; i < n_g - n_h; ++i) art.zone_of[art.w4(i)] = Zone::W4;
  for (int i = 0; i < n_g - n_h; ++i) art.zone_of[art.w5(i)] = Zone::W5;

  art.agent_of.assign(total, 0);
  for (int v = 0; v < total; ++v) {
    Zone zn = art.zone_of[v];
    art.agent_of[v] = (zn == Zone::W2 || zn == Zone::W4) ? 1 : 0;
  }

  std::vector<std::pair<int, int>> edges;
  // 1. adjacencies of the pattern, both directions inside W1
  for (auto [u, v] : h.edges) {
    edges.emplace_back(art.w1(u), art.w1(v));
    edges.emplace_back(art.w1(v), art.w1(u));
  }
  // 2. pattern vertex to its W2 twin
  for (int u = 0; u < n_h; ++u) edges.emplace_back(art.w1(u), art.w2(u));
  // 3. W2 fans out to all of W3, W3 fans back to all of W1
  for (int u = 0; u < n_h; ++u)
    for (int x = 0; x < n_g; ++x) {
      edges.emplace_back(art.w2(u), art.w3(x));
      edges.emplace_back(art.w3(x), art.w1(u));
    }
  // 4. filler pair spokes
  for (int i = 0; i < n_g - n_h; ++i) edges.emplace_back(art.w4(i), art.w5(i));
  // 5. W3 fans out to all of W4, W5 fans back to all of W3
  for (int x = 0; x < n_g; ++x)
    for (int i = 0; i < n_g - n_h; ++i) {
      edges.emplace_back(art.w3(x), art.w4(i));
      edges.emplace_back(art.w5(i), art.w3(x));
    }
  // 6. every W3 vertex pairs with z
  for (int x = 0; x < n_g; ++x) {
    edges.emplace_back(art.w3(x), art.z());
    edges.emplace_back(art.z(), art.w3(x));
  }
  // 7. one arc per host non-edge, oriented along ascending vertex index,
  //    which keeps W3 acyclic
  int non_edges = 0;
  for (int x = 0; x < n_g; ++x)
    for (int y = x + 1; y < n_g; ++y)
      if (!has_undirected_edge(g, x, y)) {
        edges.emplace_back(art.w3(x), art.w3(y));
        ++non_edges;
      }

  const size_t expected =
      2 * h.edges.size() + static_cast<size_t>(n_h) +
      2 * static_cast<size_t>(n_h) * n_g + static_cast<size_t>(n_g - n_h) +
      2 * static_cast<size_t>(n_g) * (n_g - n_h) +
      2 * static_cast<size_t>(n_g) + static_cast<size_t>(non_edges);
  if (edges.size() != expected)
    throw InternalError("construction produced " +
                        std::to_string(edges.size()) + " arcs, expected " +
                        std::to_string(expected));

  art.gprime = make_digraph(total, std::move(edges));
  return art;
}

CycleClass classify_cycle(const ReductionArtifact& art, const Cycle& c) {
  if (c.size() < 2 || c.size() > 3)
    throw InvalidParameterError("cycle length " + std::to_string(c.size()) +
                                " is outside [2, 3]");
  for (int v : c)
    if (v < 0 || v >= art.gprime.n)
      throw InvalidParameterError("vertex " + std::to_string(v) +
                                  " outside the constructed graph");
  for (size_t i = 0; i < c.size(); ++i)
    if (!has_edge(art.gprime, c[i], c[(i + 1) % c.size()]))
      throw InvalidParameterError("not a cycle of the constructed graph");

  std::vector<Zone> zones;
  for (int v : c) zones.push_back(art.zone_of[v]);
  std::sort(zones.begin(), zones.end());

  if (c.size() == 2) {
    if (zones == std::vector<Zone>{Zone::W1, Zone::W1}) return CycleClass::A;
    if (zones == std::vector<Zone>{Zone::W3, Zone::Z}) return CycleClass::R;
  } else {
    if (zones == std::vector<Zone>{Zone::W1, Zone::W1, Zone::W1})
      return CycleClass::T;
    if (zones == std::vector<Zone>{Zone::W1, Zone::W2, Zone::W3})
      return CycleClass::I;
    if (zones == std::vector<Zone>{Zone::W3, Zone::W4, Zone::W5})
      return CycleClass::F;
    if (zones == std::vector<Zone>{Zone::W3, Zone::W3, Zone::Z})
      return CycleClass::N;
  }
  throw InternalError("cycle falls outside the six classes");
}

Instance artifact_instance(const ReductionArtifact& art) {
  return kep_to_set_packing(art.gprime, art.agent_of, 2, 3, art.k);
}

namespace {

bool iso_dfs(const std::vector<std::vector<bool>>& gadj,
             const std::vector<std::vector<bool>>& hadj, int next,
             std::vector<int>& mapping, std::vector<bool>& used) {
  int n_h = static_cast<int>(hadj.size());
  int n_g = static_cast<int>(gadj.size());
  if (next == n_h) return true;
  for (int x = 0; x < n_g; ++x) {
    if (used[x]) continue;
    bool ok = true;
    for (int v = 0; v < next && ok; ++v)
      if (hadj[next][v] && !gadj[x][mapping[v]]) ok = false;
    if (!ok) continue;
    mapping[next] = x;
    used[x] = true;
    if (iso_dfs(gadj, hadj, next + 1, mapping, used)) return true;
    used[x] = false;
  }
  return false;
}

std::vector<std::vector<bool>> adjacency(const UndirectedGraph& g) {
  std::vector<std::vector<bool>> adj(g.n, std::vector<bool>(g.n, false));
  for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = true;
  return adj;
}

}  // namespace

std::optional<std::vector<int>> brute_subgraph_iso(const UndirectedGraph& g,
                                                   const UndirectedGraph& h) {
  if (h.n > g.n) return std::nullopt;
  auto gadj = adjacency(g);
  auto hadj = adjacency(h);
  std::vector<int> mapping(h.n, -1);
  std::vector<bool> used(g.n, false);
  if (iso_dfs(gadj, hadj, 0, mapping, used)) return mapping;
  return std::nullopt;
}

bool is_subgraph_iso(const UndirectedGraph& g, const UndirectedGraph& h,
                     const std::vector<int>& mapping) {
  if (static_cast<int>(mapping.size()) != h.n) return false;
  std::set<int> image;
  for (int x : mapping) {
    if (x < 0 || x >= g.n) return false;
    if (!image.insert(x).second) return false;
  }
  for (auto [u, v] : h.edges)
    if (!has_undirected_edge(g, mapping[u], mapping[v])) return false;
  return true;
}

Packing witness_from_iso(const ReductionArtifact& art,
                         const std::vector<int>& mapping) {
  // rebuild the pattern/host pair only as far as validation needs; the
  // artifact carries everything else
  Instance inst = artifact_instance(art);
  std::map<std::vector<int>, int> index_of;
  for (int i = 0; i < inst.num_sets(); ++i) index_of[inst.sets[i]] = i;

  if (static_cast<int>(mapping.size()) != art.n_h)
    throw InvalidParameterError("mapping covers " +
                                std::to_string(mapping.size()) +
                                " pattern vertices of " +
                                std::to_string(art.n_h));
  std::set<int> image;
  for (int x : mapping) {
    if (x < 0 || x >= art.n_g)
      throw InvalidParameterError("mapping leaves the host graph");
    if (!image.insert(x).second)
      throw InvalidParameterError("mapping is not injective");
  }

  // pattern and host edges are recoverable from the construction: a pattern
  // edge {u, v} left an arc w1(u) -> w1(v), and a host NON-edge {x, y} left
  // an arc w3(min) -> w3(max)
  for (int u = 0; u < art.n_h; ++u)
    for (int v = u + 1; v < art.n_h; ++v) {
      if (!has_edge(art.gprime, art.w1(u), art.w1(v))) continue;
      int x = std::min(mapping[u], mapping[v]);
      int y = std::max(mapping[u], mapping[v]);
      if (has_edge(art.gprime, art.w3(x), art.w3(y)))
        throw InvalidParameterError("mapping is not edge-preserving");
    }

  Packing packing;
  auto lookup = [&](std::vector<int> key) {
    std::sort(key.begin(), key.end());
    auto it = index_of.find(key);
    if (it == index_of.end())
      throw InternalError("a construction cycle is missing from the instance");
    return it->second;
  };
  for (int u = 0; u < art.n_h; ++u)
    packing.push_back(lookup({art.w1(u), art.w2(u), art.w3(mapping[u])}));
  // fill the host vertices outside the image with the next free pair each
  int filler = 0;
  for (int x = 0; x < art.n_g; ++x) {
    if (image.count(x)) continue;
    packing.push_back(lookup({art.w3(x), art.w4(filler), art.w5(filler)}));
    ++filler;
  }
  std::sort(packing.begin(), packing.end());
  return packing;
}

Instance random_instance(int n, int m, int p, int d, int k,
                         std::uint64_t seed) {
  if (n < 0 || n > kMaxElements)
    throw InvalidParameterError("element count outside [0, " +
                                std::to_string(kMaxElements) + "]");
  if (p < 1 || p > std::max(n, 1))
    throw InvalidParameterError("agent count outside [1, max(n, 1)]");
  if (d < 1) throw InvalidParameterError("d must be at least 1");
  if (k < 0) throw InvalidParameterError("k is negative");
  if (m < 0) throw InvalidParameterError("set count is negative");

  const int max_size = std::min(d, n);
  double distinct = 0;  // sum of C(n, j) for j = 1..max_size
  {
    double binom = 1;
    for (int j = 1; j <= max_size; ++j) {
      binom = binom * (n - j + 1) / j;
      distinct += binom;
      if (distinct > 4e18) break;
    }
  }
  if (static_cast<double>(m) > distinct)
    throw InvalidParameterError(
        "only " + std::to_string(static_cast<long long>(distinct)) +
        " distinct sets exist, cannot sample " + std::to_string(m));

  Rng rng(seed);
  std::vector<int> agent_of(n);
  for (int e = 0; e < n; ++e) agent_of[e] = static_cast<int>(rng.below(p));

  std::set<std::vector<int>> chosen;
  std::vector<int> pool(n);
  for (int e = 0; e < n; ++e) pool[e] = e;
  std::uint64_t attempts = 0;
  const std::uint64_t attempt_cap = 200 + 50ull * static_cast<std::uint64_t>(m);
  while (static_cast<int>(chosen.size()) < m && attempts < attempt_cap) {
    ++attempts;
    int j = rng.range(1, max_size);
    // partial Fisher-Yates for a uniform j-subset
    for (int t = 0; t < j; ++t)
      std::swap(pool[t], pool[t + static_cast<int>(rng.below(n - t))]);
    std::vector<int> s(pool.begin(), pool.begin() + j);
    std::sort(s.begin(), s.end());
    chosen.insert(std::move(s));
  }
  if (static_cast<int>(chosen.size()) < m) {
    // sampling saturated; enumerate everything and draw without replacement
    std::vector<std::vector<int>> all;
    std::vector<int> comb;
    auto emit = [&](auto&& self, int start, int remaining) -> void {
      if (remaining == 0) {
        all.push_back(comb);
        return;
      }
      for (int e = start; e <= n - remaining; ++e) {
        comb.push_back(e);
        self(self, e + 1, remaining - 1);
        comb.pop_back();
      }
    };
    for (int j = 1; j <= max_size; ++j) emit(emit, 0, j);
    for (size_t i = all.size(); i > 1; --i)
      std::swap(all[i - 1], all[rng.below(i)]);
    chosen.clear();
    for (int i = 0; i < m; ++i) chosen.insert(all[i]);
  }

  std::vector<std::vector<int>> sets(chosen.begin(), chosen.end());
  return make_instance(n, p, std::move(agent_of), std::move(sets), d, k);
}

KepInput random_kep(int n_vertices, double edge_prob, int p, int d, int k,
                    std::uint64_t seed) {
  if (n_vertices < 0 || n_vertices > kMaxElements)
    throw InvalidParameterError("vertex count outside [0, " +
                                std::to_string(kMaxElements) + "]");
  if (p < 1 || p > std::max(n_vertices, 1))
    throw InvalidParameterError("agent count outside [1, max(n, 1)]");
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw InvalidParameterError("edge probability outside [0, 1]");
  if (d < 2) throw InvalidParameterError("d must be at least 2");
  if (k < 0) throw InvalidParameterError("k is negative");

  Rng rng(seed);
  KepInput kep;
  kep.p = p;
  kep.d = d;
  kep.k = k;
  kep.agent_of.resize(n_vertices);
  for (int v = 0; v < n_vertices; ++v)
    kep.agent_of[v] = static_cast<int>(rng.below(p));
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n_vertices; ++u)
    for (int v = 0; v < n_vertices; ++v)
      if (u != v && rng.chance(edge_prob)) edges.emplace_back(u, v);
  kep.g = make_digraph(n_vertices, std::move(edges));
  return kep;
}

}  // namespace rpsp
