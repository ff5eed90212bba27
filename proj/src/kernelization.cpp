#include "rpsp/kernelization.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rpsp {

namespace {

using u128 = unsigned __int128;
constexpr u128 kSaturated = ~u128{0};

u128 sat_mul(u128 a, u128 b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

u128 sat_add(u128 a, u128 b) {
  u128 s = a + b;
  return s < a ? kSaturated : s;
}

u128 sat_pow(u128 base, int exp) {
  u128 r = 1;
  for (int i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

u128 sat_factorial(int d) {
  u128 r = 1;
  for (int i = 2; i <= d; ++i) r = sat_mul(r, static_cast<u128>(i));
  return r;
}

void check_bound_args(int d, int k) {
  if (d < 1) throw InvalidParameterError("d must be at least 1");
  if (k < 0) throw InvalidParameterError("k is negative");
}

// d(kd-1)+1; negative only when k = 0 and d >= 2, which the rules never
// reach (k = 0 instances are decided before any rule runs).
long long inner_base(int d, int k) {
  return static_cast<long long>(d) * (static_cast<long long>(k) * d - 1) + 1;
}

u128 f_bound_sat(int d, int k) {
  long long base = inner_base(d, k);
  if (base < 0)
    throw InvalidParameterError("threshold formula is negative for d = " +
                                std::to_string(d) + ", k = " +
                                std::to_string(k));
  u128 v = sat_mul(static_cast<u128>(d), sat_factorial(d));
  return sat_mul(v, sat_pow(static_cast<u128>(base), d));
}

u128 g_bound_sat(int d, int k) {
  long long base = inner_base(d, k);
  if (base < 0)
    throw InvalidParameterError("threshold formula is negative for d = " +
                                std::to_string(d) + ", k = " +
                                std::to_string(k));
  u128 inner = sat_mul(sat_pow(static_cast<u128>(d), d - 1),
                       static_cast<u128>(base));
  u128 kf = sat_mul(sat_mul(static_cast<u128>(d), static_cast<u128>(k)),
                    f_bound_sat(d, k));
  u128 v = sat_mul(static_cast<u128>(d), sat_factorial(d));
  return sat_mul(v, sat_pow(sat_add(inner, kf), d));
}

std::uint64_t narrow(u128 v, const char* name) {
  if (v > static_cast<u128>(UINT64_MAX))
    throw OverflowError(std::string(name) + " exceeds the 64-bit range");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::uint64_t f_bound(int d, int k) {
  check_bound_args(d, k);
  return narrow(f_bound_sat(d, k), "f_d(k)");
}

std::uint64_t g_bound(int d, int k) {
  check_bound_args(d, k);
  return narrow(g_bound_sat(d, k), "g_d(k)");
}

bool below_g_bound(std::uint64_t m, int d, int k) {
  check_bound_args(d, k);
  return static_cast<u128>(m) < g_bound_sat(d, k);
}

namespace {

struct Entry {
  Mask mask;
  int pos;  // position in the original input list
};

// Recursive construction. Returns (core mask, member positions) or nothing.
std::optional<std::pair<Mask, std::vector<int>>> sunflower_rec(
    const std::vector<Entry>& family, std::uint64_t z) {
  if (family.empty()) return std::nullopt;

  // greedy maximal disjoint subfamily, in input order
  std::vector<int> disjoint;
  Mask taken = 0;
  for (size_t i = 0; i < family.size(); ++i) {
    if (family[i].mask & taken) continue;
    disjoint.push_back(static_cast<int>(i));
    taken |= family[i].mask;
  }
  if (disjoint.size() >= z) {
    std::vector<int> members;
    members.reserve(disjoint.size());
    for (int i : disjoint) members.push_back(family[i].pos);
    return std::make_pair(Mask{0}, std::move(members));
  }

  // recurse on the most frequent element (ties: lowest element id)
  int counts[64] = {};
  for (const auto& e : family) {
    Mask m = e.mask;
    while (m) {
      ++counts[lowest_bit(m)];
      m &= m - 1;
    }
  }
  int best = -1;
  for (int e = 0; e < 64; ++e)
    if (counts[e] > 0 && (best < 0 || counts[e] > counts[best])) best = e;
  if (best < 0) return std::nullopt;

  std::vector<Entry> reduced;
  for (const auto& e : family) {
    if (!(e.mask & bit(best))) continue;
    Mask rest = e.mask & ~bit(best);
    if (rest == 0) continue;  // its petal would be empty after lifting
    reduced.push_back({rest, e.pos});
  }
  auto sub = sunflower_rec(reduced, z);
  if (!sub) return std::nullopt;
  return std::make_pair(sub->first | bit(best), std::move(sub->second));
}

}  // namespace

std::optional<Sunflower> find_sunflower(
    const std::vector<std::vector<int>>& sets, std::uint64_t z) {
  if (z < 2)
    throw InvalidParameterError("a sunflower needs at least 2 petals");
  std::vector<Entry> family;
  family.reserve(sets.size());
  for (size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty())
      throw InvalidParameterError("set " + std::to_string(i) + " is empty");
    for (int e : sets[i])
      if (e < 0 || e > kMaxElements)
        throw InvalidParameterError("element " + std::to_string(e) +
                                    " outside [0, " +
                                    std::to_string(kMaxElements) + "]");
    family.push_back({elements_to_mask(sets[i]), static_cast<int>(i)});
  }
  auto found = sunflower_rec(family, z);
  if (!found) return std::nullopt;
  Sunflower sf;
  sf.core = mask_to_elements(found->first);
  sf.members = std::move(found->second);
  std::sort(sf.members.begin(), sf.members.end());
  return sf;
}

bool sunflower_valid(const std::vector<std::vector<int>>& sets,
                     const Sunflower& sf) {
  if (sf.members.size() < 2) return false;
  Mask core = elements_to_mask(sf.core);
  std::vector<Mask> member_masks;
  for (int pos : sf.members) {
    if (pos < 0 || pos >= static_cast<int>(sets.size())) return false;
    Mask m = elements_to_mask(sets[pos]);
    if ((m & core) != core) return false;  // core not contained
    if ((m & ~core) == 0) return false;    // empty petal
    member_masks.push_back(m);
  }
  for (size_t i = 0; i < member_masks.size(); ++i)
    for (size_t j = i + 1; j < member_masks.size(); ++j)
      if ((member_masks[i] & member_masks[j]) != core) return false;
  return true;
}

Packing greedy_maximal_packing(const Instance& inst) {
  Packing x;
  Mask cov = 0;
  auto masks = set_masks(inst);
  for (int i = 0; i < inst.num_sets(); ++i) {
    if (masks[i] & cov) continue;
    x.push_back(i);
    cov |= masks[i];
  }
  return x;
}

std::string format_rule_record(const RuleRecord& r) {
  std::ostringstream out;
  out << "rule=" << r.rule << " removed=" << r.removed << " core=";
  for (size_t i = 0; i < r.core.size(); ++i) out << (i ? "," : "") << r.core[i];
  out << " members=";
  for (size_t i = 0; i < r.members.size(); ++i)
    out << (i ? "," : "") << r.members[i];
  return out.str();
}

namespace {

// d(kd-1)+2, the sunflower size both rules remove from.
std::int64_t rule_target(int d, int k) {
  return static_cast<std::int64_t>(d) *
             (static_cast<std::int64_t>(k) * d - 1) +
         2;
}

Instance remove_set(const Instance& inst, int idx) {
  std::vector<std::vector<int>> sets = inst.sets;
  sets.erase(sets.begin() + idx);
  return make_instance(inst.n, inst.p, inst.agent_of, std::move(sets), inst.d,
                       inst.k, inst.origin);
}

// minimum-size member, lowest set index on ties
int pick_removal(const Instance& inst, const std::vector<int>& members) {
  int best = members[0];
  for (int idx : members)
    if (inst.sets[idx].size() < inst.sets[best].size() ||
        (inst.sets[idx].size() == inst.sets[best].size() && idx < best))
      best = idx;
  return best;
}

std::vector<std::vector<int>> gather(const Instance& inst,
                                     const std::vector<int>& indices) {
  std::vector<std::vector<int>> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(inst.sets[i]);
  return out;
}

}  // namespace

std::optional<RuleApplication> apply_rr_internal(const Instance& inst) {
  std::int64_t z = rule_target(inst.d, inst.k);
  if (z < 2) return std::nullopt;
  for (int a = 0; a < inst.p; ++a) {
    auto fam = internal_sets(inst, a);
    if (static_cast<std::int64_t>(fam.size()) < z) continue;
    auto sf = find_sunflower(gather(inst, fam), static_cast<std::uint64_t>(z));
    if (!sf) continue;
    std::vector<int> members;
    for (int pos : sf->members) members.push_back(fam[pos]);
    members.resize(static_cast<size_t>(z));  // the rule uses exactly z petals
    int removed = pick_removal(inst, members);
    RuleRecord rec{1, removed, sf->core, members};
    return RuleApplication{remove_set(inst, removed), std::move(rec)};
  }
  return std::nullopt;
}

namespace {

std::optional<RuleApplication> rr_external_from(const Instance& inst,
                                                const Sunflower& sf,
                                                std::int64_t z) {
  auto masks = set_masks(inst);
  auto agents = agent_masks(inst);
  Mask core = elements_to_mask(sf.core);

  std::vector<std::vector<int>> per_agent_internal(inst.p);
  Mask internal_union = 0;
  for (int a = 0; a < inst.p; ++a) {
    per_agent_internal[a] = internal_sets(inst, a);
    for (int idx : per_agent_internal[a]) internal_union |= masks[idx];
  }

  // keep members whose petal avoids every internal set
  std::vector<int> survivors;
  for (int idx : sf.members)
    if (((masks[idx] & ~core) & internal_union) == 0) survivors.push_back(idx);
  if (static_cast<std::int64_t>(survivors.size()) < z) return std::nullopt;

  // agents owning an internal set that meets the core
  std::vector<int> core_agents;
  for (int a = 0; a < inst.p; ++a)
    for (int idx : per_agent_internal[a])
      if (masks[idx] & core) {
        core_agents.push_back(a);
        break;
      }

  // bucket by the per-agent intersection-size vector
  std::map<std::vector<int>, std::vector<int>> classes;
  for (int idx : survivors) {
    std::vector<int> key;
    key.reserve(core_agents.size());
    for (int a : core_agents)
      key.push_back(popcount(masks[idx] & agents[a]));
    classes[key].push_back(idx);
  }

  // first qualifying class by smallest member index
  const std::vector<int>* chosen = nullptr;
  for (const auto& [key, members] : classes) {
    if (static_cast<std::int64_t>(members.size()) < z) continue;
    if (!chosen || members.front() < chosen->front()) chosen = &members;
  }
  if (!chosen) return std::nullopt;

  std::vector<int> members(chosen->begin(), chosen->begin() + z);
  int removed = pick_removal(inst, members);
  RuleRecord rec{2, removed, sf.core, members};
  return RuleApplication{remove_set(inst, removed), std::move(rec)};
}

}  // namespace

std::optional<RuleApplication> apply_rr_external(const Instance& inst) {
  std::int64_t z = rule_target(inst.d, inst.k);
  if (z < 2 || inst.num_sets() == 0) return std::nullopt;

  // guaranteed path: the large sunflower whose filtered classes must
  // contain a qualifying sub-sunflower
  u128 big = sat_add(
      sat_add(sat_mul(sat_pow(static_cast<u128>(inst.d), inst.d - 1),
                      static_cast<u128>(inner_base(inst.d, inst.k))),
              sat_mul(sat_mul(static_cast<u128>(inst.d),
                              static_cast<u128>(inst.k)),
                      f_bound_sat(inst.d, inst.k))),
      1);
  if (big <= static_cast<u128>(inst.num_sets())) {
    auto sf = find_sunflower(inst.sets, static_cast<std::uint64_t>(big));
    if (sf) {
      auto app = rr_external_from(inst, *sf, z);
      if (app) return app;
    }
  }

  // opportunistic path: search for the rule-sized sunflower directly
  auto sf = find_sunflower(inst.sets, static_cast<std::uint64_t>(z));
  if (!sf) return std::nullopt;
  return rr_external_from(inst, *sf, z);
}

KernelOutcome kernelize(const Instance& inst) {
  KernelOutcome out;
  Instance current = inst;
  out.kept.resize(inst.sets.size());
  for (size_t i = 0; i < out.kept.size(); ++i)
    out.kept[i] = static_cast<int>(i);

  for (;;) {
    if (static_cast<int>(greedy_maximal_packing(current).size()) > current.k) {
      out.verdict = KernelOutcome::Verdict::decided_yes;
      out.kept.clear();
      return out;
    }
    int agents_with_internal = 0;
    for (int a = 0; a < current.p; ++a)
      if (!internal_sets(current, a).empty()) ++agents_with_internal;
    if (agents_with_internal >= current.k) {
      out.verdict = KernelOutcome::Verdict::decided_yes;
      out.kept.clear();
      return out;
    }
    if (below_g_bound(static_cast<std::uint64_t>(current.num_sets()),
                      current.d, current.k)) {
      out.verdict = KernelOutcome::Verdict::reduced;
      current.origin = Instance::Origin::kernelized;
      out.instance = std::move(current);
      return out;
    }
    auto app = apply_rr_internal(current);
    if (!app) app = apply_rr_external(current);
    if (!app)
      throw InternalError(
          "no reduction rule applies to an instance of size >= g_d(k)");
    out.trace.push_back(app->record);
    out.kept.erase(out.kept.begin() + app->record.removed);
    current = std::move(app->instance);
  }
}

Instance replay_trace(const Instance& inst,
                      const std::vector<RuleRecord>& trace) {
  Instance current = inst;
  for (const auto& rec : trace) {
    if (rec.removed < 0 || rec.removed >= current.num_sets())
      throw InvalidParameterError("trace removes set " +
                                  std::to_string(rec.removed) +
                                  " outside [0, " +
                                  std::to_string(current.num_sets()) + ")");
    current = remove_set(current, rec.removed);
  }
  current.origin = Instance::Origin::kernelized;
  return current;
}

}  // namespace rpsp
