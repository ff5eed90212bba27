#pragma once

// Shared helpers for the test suites. The enumeration oracles here stay
// deliberately naive and independent of the library's solving paths.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "rpsp/instance.hpp"
#include "rpsp/rejection.hpp"
#include "rpsp/rng.hpp"

namespace testsupport {

using rpsp::Instance;
using rpsp::Mask;
using rpsp::Packing;

inline Instance inst(int n, int p, std::vector<int> agents,
                     std::vector<std::vector<int>> sets, int d, int k) {
  return rpsp::make_instance(n, p, std::move(agents), std::move(sets), d, k);
}

// The running two-agent example: blue agent 0 owns {0, 1}, orange agent 1
// owns the rest; a mixed 3-cycle {0,2,3}, a blue 2-cycle {0,1} and an
// orange 3-cycle {4,5,6}.
inline rpsp::KepInput example_kep(int k) {
  rpsp::KepInput kep;
  kep.g = rpsp::make_digraph(
      7, {{0, 1}, {1, 0}, {0, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 4}});
  kep.agent_of = {0, 0, 1, 1, 1, 1, 1};
  kep.p = 2;
  kep.d = 3;
  kep.k = k;
  return kep;
}

inline Instance example_instance(int k) {
  auto kep = example_kep(k);
  return rpsp::kep_to_set_packing(kep.g, kep.agent_of, kep.p, kep.d, kep.k);
}

// every subfamily of pairwise disjoint sets, by index-order DFS
template <typename Visit>
void for_each_disjoint_family(const std::vector<Mask>& masks, Visit&& visit) {
  std::vector<int> family;
  auto rec = [&](auto&& self, size_t start, Mask cov) -> void {
    visit(const_cast<const std::vector<int>&>(family), cov);
    for (size_t j = start; j < masks.size(); ++j) {
      if (masks[j] & cov) continue;
      family.push_back(static_cast<int>(j));
      self(self, j + 1, cov | masks[j]);
      family.pop_back();
    }
  };
  rec(rec, 0, 0);
}

inline bool exact_cover_exhaustive(Mask universe,
                                   const std::vector<Mask>& masks) {
  bool found = false;
  for_each_disjoint_family(masks, [&](const std::vector<int>&, Mask cov) {
    if (cov == universe) found = true;
  });
  return found;
}

inline int max_cover_exhaustive(const std::vector<Mask>& masks) {
  int best = 0;
  for_each_disjoint_family(masks, [&](const std::vector<int>&, Mask cov) {
    best = std::max(best, rpsp::popcount(cov));
  });
  return best;
}

// the packing of maximum agent coverage among an agent's internal sets,
// found by plain enumeration
inline Packing max_internal_packing_exhaustive(const Instance& instance,
                                               int agent) {
  auto internal = rpsp::internal_sets(instance, agent);
  auto masks = rpsp::set_masks(instance);
  std::vector<Mask> internal_masks;
  for (int idx : internal) internal_masks.push_back(masks[idx]);
  Packing best;
  int best_cov = -1;
  for_each_disjoint_family(internal_masks,
                           [&](const std::vector<int>& family, Mask cov) {
                             if (rpsp::popcount(cov) > best_cov) {
                               best_cov = rpsp::popcount(cov);
                               best.clear();
                               for (int pos : family)
                                 best.push_back(internal[pos]);
                             }
                           });
  return best;
}

// directed-cycle enumeration by brute force over all vertex sequences;
// keeps canonical rotations only
inline std::vector<rpsp::Cycle> cycles_by_permutation(const rpsp::Digraph& g,
                                                      int d) {
  std::set<rpsp::Cycle> out;
  std::vector<int> verts(g.n);
  for (int v = 0; v < g.n; ++v) verts[v] = v;
  for (int len = 2; len <= d && len <= g.n; ++len) {
    std::vector<int> pick(len);
    auto rec = [&](auto&& self, int depth, Mask used) -> void {
      if (depth == len) {
        bool ok = true;
        for (int i = 0; i < len && ok; ++i)
          ok = rpsp::has_edge(g, pick[i], pick[(i + 1) % len]);
        if (!ok) return;
        int min_pos = static_cast<int>(
            std::min_element(pick.begin(), pick.end()) - pick.begin());
        rpsp::Cycle canon;
        for (int i = 0; i < len; ++i)
          canon.push_back(pick[(min_pos + i) % len]);
        out.insert(canon);
        return;
      }
      for (int v = 0; v < g.n; ++v) {
        if (used & rpsp::bit(v)) continue;
        pick[depth] = v;
        self(self, depth + 1, used | rpsp::bit(v));
      }
    };
    rec(rec, 0, 0);
  }
  return {out.begin(), out.end()};
}

// a random instance with the requested bounds clamped to feasible values
// (agents never outnumber elements, set count never exceeds the number of
// distinct sets)
inline Instance random_small(rpsp::Rng& rng, int n_lo, int n_hi, int m_hi,
                             int p_hi, int d_lo, int d_hi, int k) {
  int n = rng.range(n_lo, n_hi);
  int d = rng.range(d_lo, d_hi);
  int p = rng.range(1, std::max(1, std::min(p_hi, n)));
  double distinct = 0, binom = 1;
  for (int j = 1; j <= std::min(d, n); ++j) {
    binom = binom * (n - j + 1) / j;
    distinct += binom;
  }
  int m = rng.range(0, static_cast<int>(std::min<double>(m_hi, distinct)));
  return rpsp::random_instance(n, m, p, d, k, rng.next());
}

// blocky agent regions with a planted conflict (an agent-internal pair that
// meets a crossing 3-set in one element, the shape that makes rejections
// matter), padded with a mix of internal and crossing random sets; stays
// within n <= 9, m <= 12, p <= 3, d = 3
inline Instance random_conflict(rpsp::Rng& rng, int k) {
  int n = rng.range(5, 9);
  int p = rng.range(2, 3);
  const int d = 3;
  std::vector<int> agents(n);
  for (int e = 0; e < n; ++e) agents[e] = std::min(p - 1, e * p / n);
  std::set<std::vector<int>> sets;
  if (agents[1] == 0) {
    sets.insert({0, 1});
    std::vector<int> outside;
    for (int e = 0; e < n; ++e)
      if (agents[e] != 0) outside.push_back(e);
    if (outside.size() >= 2) {
      std::set<int> cross{0};
      while (static_cast<int>(cross.size()) < 3)
        cross.insert(outside[rng.below(outside.size())]);
      sets.insert(std::vector<int>(cross.begin(), cross.end()));
    }
  }
  int m_want = rng.range(static_cast<int>(sets.size()), 12);
  int attempts = 0;
  while (static_cast<int>(sets.size()) < m_want && ++attempts < 300) {
    int size = rng.range(2, d);
    std::set<int> pick;
    if (rng.chance(0.4)) {
      int a = rng.range(0, p - 1);
      std::vector<int> block;
      for (int e = 0; e < n; ++e)
        if (agents[e] == a) block.push_back(e);
      if (static_cast<int>(block.size()) < size) continue;
      while (static_cast<int>(pick.size()) < size)
        pick.insert(block[rng.below(block.size())]);
    } else {
      while (static_cast<int>(pick.size()) < size)
        pick.insert(rng.range(0, n - 1));
    }
    sets.insert(std::vector<int>(pick.begin(), pick.end()));
  }
  return rpsp::make_instance(
      n, p, agents, std::vector<std::vector<int>>(sets.begin(), sets.end()),
      d, k);
}

// a random valid packing: draw a random subset of set indices, keep the
// disjoint prefix
inline Packing random_packing(const Instance& instance, rpsp::Rng& rng) {
  auto masks = rpsp::set_masks(instance);
  Packing x;
  Mask cov = 0;
  for (int i = 0; i < instance.num_sets(); ++i) {
    if (!rng.chance(0.5)) continue;
    if (masks[i] & cov) continue;
    x.push_back(i);
    cov |= masks[i];
  }
  return x;
}

}  // namespace testsupport
