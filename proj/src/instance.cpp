#include "rpsp/instance.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace rpsp {

std::vector<int> mask_to_elements(Mask m) {
  std::vector<int> out;
  while (m) {
    int e = lowest_bit(m);
    out.push_back(e);
    m &= m - 1;
  }
  return out;
}

Mask elements_to_mask(const std::vector<int>& elems) {
  Mask m = 0;
  for (int e : elems) m |= bit(e);
  return m;
}

Instance make_instance(int n, int p, std::vector<int> agent_of,
                       std::vector<std::vector<int>> sets, int d, int k,
                       Instance::Origin origin) {
  for (auto& s : sets) std::sort(s.begin(), s.end());
  Instance inst;
  inst.n = n;
  inst.p = p;
  inst.d = d;
  inst.k = k;
  inst.agent_of = std::move(agent_of);
  inst.sets = std::move(sets);
  inst.origin = origin;
  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "invalid instance:";
    for (const auto& v : violations) msg << " [" << v << "]";
    throw InvalidParameterError(msg.str());
  }
  return inst;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  auto report = [&out](const std::string& s) { out.push_back(s); };

  if (inst.n < 0) report("element count is negative");
  if (inst.n > kMaxElements)
    report("element count " + std::to_string(inst.n) + " exceeds the limit of " +
           std::to_string(kMaxElements));
  if (inst.p < 1) report("agent count must be at least 1");
  if (inst.d < 1) report("d must be at least 1");
  if (inst.k < 0) report("k is negative");
  if (static_cast<int>(inst.agent_of.size()) != inst.n)
    report("agent map has " + std::to_string(inst.agent_of.size()) +
           " entries for " + std::to_string(inst.n) + " elements");
  for (size_t i = 0; i < inst.agent_of.size(); ++i) {
    if (inst.agent_of[i] < 0 || inst.agent_of[i] >= inst.p)
      report("element " + std::to_string(i) + " has agent " +
             std::to_string(inst.agent_of[i]) + " outside [0, " +
             std::to_string(inst.p) + ")");
  }
  for (int i = 0; i < inst.num_sets(); ++i) {
    const auto& s = inst.sets[i];
    if (s.empty()) {
      report("set " + std::to_string(i) + " is empty");
      continue;
    }
    if (static_cast<int>(s.size()) > inst.d)
      report("set " + std::to_string(i) + " exceeds d");
    bool in_range = true;
    for (int e : s)
      if (e < 0 || e >= inst.n) {
        report("set " + std::to_string(i) + " references element " +
               std::to_string(e) + " outside [0, " + std::to_string(inst.n) +
               ")");
        in_range = false;
      }
    if (in_range && !std::is_sorted(s.begin(), s.end()))
      report("set " + std::to_string(i) + " is not sorted");
    if (in_range && std::adjacent_find(s.begin(), s.end()) != s.end())
      report("set " + std::to_string(i) + " repeats an element");
  }
  std::map<std::vector<int>, int> seen;
  for (int i = 0; i < inst.num_sets(); ++i) {
    auto [it, fresh] = seen.emplace(inst.sets[i], i);
    if (!fresh)
      report("sets " + std::to_string(it->second) + " and " +
             std::to_string(i) + " identical");
  }
  return out;
}

std::vector<Mask> set_masks(const Instance& inst) {
  std::vector<Mask> out(inst.sets.size());
  for (size_t i = 0; i < inst.sets.size(); ++i)
    out[i] = elements_to_mask(inst.sets[i]);
  return out;
}

std::vector<Mask> agent_masks(const Instance& inst) {
  std::vector<Mask> out(inst.p, 0);
  for (int e = 0; e < inst.n; ++e) out[inst.agent_of[e]] |= bit(e);
  return out;
}

bool packing_valid(const Instance& inst, const Packing& x) {
  Mask cov = 0;
  for (int idx : x) {
    if (idx < 0 || idx >= inst.num_sets()) return false;
    Mask m = elements_to_mask(inst.sets[idx]);
    if (cov & m) return false;
    cov |= m;
  }
  // repeated indices would have tripped the overlap check (sets are
  // non-empty), so only ordering remains
  return std::is_sorted(x.begin(), x.end());
}

Mask covered(const Instance& inst, const Packing& x) {
  Mask cov = 0;
  for (int idx : x) {
    if (idx < 0 || idx >= inst.num_sets())
      throw InvalidPackingError("packing references set " +
                                std::to_string(idx) + " outside [0, " +
                                std::to_string(inst.num_sets()) + ")");
    Mask m = elements_to_mask(inst.sets[idx]);
    if (cov & m)
      throw InvalidPackingError("packing sets overlap at element " +
                                std::to_string(lowest_bit(cov & m)));
    cov |= m;
  }
  return cov;
}

std::vector<int> internal_sets(const Instance& inst, int a) {
  if (a < 0 || a >= inst.p)
    throw InvalidParameterError("agent " + std::to_string(a) +
                                " outside [0, " + std::to_string(inst.p) + ")");
  return restrict_sets(inst, agent_masks(inst)[a]);
}

std::vector<int> restrict_sets(const Instance& inst, Mask allowed) {
  std::vector<int> out;
  for (int i = 0; i < inst.num_sets(); ++i)
    if ((elements_to_mask(inst.sets[i]) & ~allowed) == 0) out.push_back(i);
  return out;
}

CompactResult compact_elements(const Instance& inst) {
  Mask touched = 0;
  for (const auto& s : inst.sets) touched |= elements_to_mask(s);
  CompactResult res;
  res.old_element = mask_to_elements(touched);
  std::vector<int> new_id(inst.n, -1);
  for (size_t i = 0; i < res.old_element.size(); ++i)
    new_id[res.old_element[i]] = static_cast<int>(i);

  std::vector<int> agent_of(res.old_element.size());
  for (size_t i = 0; i < res.old_element.size(); ++i)
    agent_of[i] = inst.agent_of[res.old_element[i]];
  std::vector<std::vector<int>> sets(inst.sets.size());
  for (size_t i = 0; i < inst.sets.size(); ++i) {
    sets[i].reserve(inst.sets[i].size());
    for (int e : inst.sets[i]) sets[i].push_back(new_id[e]);
  }
  res.instance =
      make_instance(static_cast<int>(res.old_element.size()), inst.p,
                    std::move(agent_of), std::move(sets), inst.d, inst.k,
                    inst.origin);
  return res;
}

Digraph make_digraph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw InvalidParameterError("vertex count is negative");
  std::sort(edges.begin(), edges.end());
  for (size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InvalidParameterError("arc (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ") outside [0, " +
                                  std::to_string(n) + ")^2");
    if (u == v)
      throw InvalidParameterError("self-loop at vertex " + std::to_string(u));
    if (i > 0 && edges[i] == edges[i - 1])
      throw InvalidParameterError("duplicate arc (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ")");
  }
  return Digraph{n, std::move(edges)};
}

bool has_edge(const Digraph& g, int u, int v) {
  return std::binary_search(g.edges.begin(), g.edges.end(),
                            std::make_pair(u, v));
}

namespace {

void cycle_dfs(const std::vector<std::vector<int>>& adj,
               const std::vector<Mask>& back_to, int start, int d,
               std::vector<int>& path, Mask visited,
               std::vector<Cycle>& out) {
  int u = path.back();
  if (path.size() >= 2 && (back_to[u] & bit(start))) out.push_back(path);
  if (static_cast<int>(path.size()) == d) return;
  for (int v : adj[u]) {
    if (v <= start || (visited & bit(v))) continue;
    path.push_back(v);
    cycle_dfs(adj, back_to, start, d, path, visited | bit(v), out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Cycle> enumerate_d_cycles(const Digraph& g, int d) {
  if (d < 2)
    throw InvalidParameterError("cycle length bound d = " + std::to_string(d) +
                                " is below 2");
  if (g.n > kMaxElements)
    throw SizeLimitError("graph has " + std::to_string(g.n) +
                         " vertices, limit is " + std::to_string(kMaxElements));
  std::vector<std::vector<int>> adj(g.n);
  std::vector<Mask> back_to(g.n, 0);  // back_to[u] bit v: edge (u, v) exists
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    back_to[u] |= bit(v);
  }
  std::vector<Cycle> out;
  std::vector<int> path;
  for (int s = 0; s < g.n; ++s) {
    path.assign(1, s);
    cycle_dfs(adj, back_to, s, d, path, bit(s), out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Instance kep_to_set_packing(const Digraph& g, const std::vector<int>& agent_of,
                            int p, int d, int k) {
  if (static_cast<int>(agent_of.size()) != g.n)
    throw InvalidParameterError("partition covers " +
                                std::to_string(agent_of.size()) +
                                " vertices of " + std::to_string(g.n));
  auto cycles = enumerate_d_cycles(g, d);
  std::set<std::vector<int>> distinct;
  for (const auto& c : cycles) {
    std::vector<int> s = c;
    std::sort(s.begin(), s.end());
    distinct.insert(std::move(s));
  }
  std::vector<std::vector<int>> sets(distinct.begin(), distinct.end());
  return make_instance(g.n, p, agent_of, std::move(sets), d, k,
                       Instance::Origin::from_kep);
}

std::optional<Cycle> find_cycle_orientation(const Digraph& g,
                                            const std::vector<int>& vertices) {
  if (vertices.empty()) return std::nullopt;
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> rest(sorted.begin() + 1, sorted.end());
  // canonical rotation starts at the minimum vertex, so permuting the rest
  // covers every orientation once
  do {
    Cycle c;
    c.push_back(sorted[0]);
    c.insert(c.end(), rest.begin(), rest.end());
    bool ok = true;
    for (size_t i = 0; i < c.size() && ok; ++i)
      ok = has_edge(g, c[i], c[(i + 1) % c.size()]);
    if (ok && c.size() >= 2) return c;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return std::nullopt;
}

}  // namespace rpsp
