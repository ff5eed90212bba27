#include "doctest.h"

#include "rpsp/reductions.hpp"
#include "rpsp/rejection.hpp"
#include "rpsp/solvers.hpp"
#include "support.hpp"

using namespace rpsp;

namespace {

UndirectedGraph path3() { return make_undirected_graph(3, {{0, 1}, {1, 2}}); }
UndirectedGraph triangle() {
  return make_undirected_graph(3, {{0, 1}, {1, 2}, {0, 2}});
}
UndirectedGraph single_edge() { return make_undirected_graph(2, {{0, 1}}); }

}  // namespace

TEST_CASE("undirected graph construction rejects malformed input") {
  CHECK_THROWS_AS(make_undirected_graph(2, {{0, 0}}), InvalidParameterError);
  CHECK_THROWS_AS(make_undirected_graph(2, {{0, 1}, {1, 0}}),
                  InvalidParameterError);
  CHECK_THROWS_AS(make_undirected_graph(1, {{0, 1}}), InvalidParameterError);
  CHECK(has_undirected_edge(path3(), 2, 1));
  CHECK(!has_undirected_edge(path3(), 0, 2));
}

TEST_CASE("construction on two single edges") {
  auto art = reduce_subgraph_iso(single_edge(), single_edge());
  CHECK(art.gprime.n == 7);
  CHECK(art.k == 6);
  int counts[6] = {};
  for (Zone z : art.zone_of) ++counts[static_cast<int>(z)];
  CHECK(counts[static_cast<int>(Zone::W1)] == 2);
  CHECK(counts[static_cast<int>(Zone::W2)] == 2);
  CHECK(counts[static_cast<int>(Zone::W3)] == 2);
  CHECK(counts[static_cast<int>(Zone::W4)] == 0);
  CHECK(counts[static_cast<int>(Zone::W5)] == 0);
  CHECK(counts[static_cast<int>(Zone::Z)] == 1);
  // agents: first owns W1, W3, W5 and z; second owns W2 and W4
  for (int v = 0; v < art.gprime.n; ++v) {
    Zone z = art.zone_of[v];
    int expected = (z == Zone::W2 || z == Zone::W4) ? 1 : 0;
    CHECK(art.agent_of[v] == expected);
  }
}

TEST_CASE("matching pattern and host sizes leave no filler structure") {
  auto art = reduce_subgraph_iso(path3(), triangle());
  CHECK(art.n_g == art.n_h);
  for (const auto& c : enumerate_d_cycles(art.gprime, 3))
    CHECK(classify_cycle(art, c) != CycleClass::F);
}

TEST_CASE("fan-out edges cover whole zones") {
  auto art = reduce_subgraph_iso(path3(), single_edge());
  for (int u = 0; u < art.n_h; ++u)
    for (int x = 0; x < art.n_g; ++x) {
      CHECK(has_edge(art.gprime, art.w2(u), art.w3(x)));
      CHECK(has_edge(art.gprime, art.w3(x), art.w1(u)));
    }
  for (int x = 0; x < art.n_g; ++x)
    for (int i = 0; i < art.n_g - art.n_h; ++i) {
      CHECK(has_edge(art.gprime, art.w3(x), art.w4(i)));
      CHECK(has_edge(art.gprime, art.w5(i), art.w3(x)));
    }
  for (int x = 0; x < art.n_g; ++x) {
    CHECK(has_edge(art.gprime, art.w3(x), art.z()));
    CHECK(has_edge(art.gprime, art.z(), art.w3(x)));
  }
}

TEST_CASE("arc count follows the closed form") {
  Rng rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    int n_g = rng.range(1, 6);
    int n_h = rng.range(1, n_g);
    std::vector<std::pair<int, int>> ge, he;
    for (int u = 0; u < n_g; ++u)
      for (int v = u + 1; v < n_g; ++v)
        if (rng.chance(0.5)) ge.emplace_back(u, v);
    for (int u = 0; u < n_h; ++u)
      for (int v = u + 1; v < n_h; ++v)
        if (rng.chance(0.5)) he.emplace_back(u, v);
    auto g = make_undirected_graph(n_g, ge);
    auto h = make_undirected_graph(n_h, he);
    auto art = reduce_subgraph_iso(g, h);
    size_t expected = 2 * h.edges.size() + n_h + 2 * n_h * n_g +
                      (n_g - n_h) + 2 * n_g * (n_g - n_h) + 2 * n_g +
                      (n_g * (n_g - 1) / 2 - g.edges.size());
    CHECK(art.gprime.edges.size() == expected);
  }
}

TEST_CASE("pattern size above host size is refused") {
  CHECK_THROWS_AS(reduce_subgraph_iso(single_edge(), path3()),
                  InvalidParameterError);
}

TEST_CASE("cycle classification") {
  auto art = reduce_subgraph_iso(path3(), single_edge());
  SUBCASE("named classes") {
    CHECK(classify_cycle(art, {art.w1(0), art.w1(1)}) == CycleClass::A);
    CHECK(classify_cycle(art, {art.w3(0), art.z()}) == CycleClass::R);
    CHECK(classify_cycle(art, {art.w1(0), art.w2(0), art.w3(1)}) ==
          CycleClass::I);
    // the host path misses edge {0, 2}, so its N-cycle exists
    CHECK(classify_cycle(art, {art.w3(0), art.w3(2), art.z()}) ==
          CycleClass::N);
    CHECK(classify_cycle(art, {art.w3(0), art.w4(0), art.w5(0)}) ==
          CycleClass::F);
  }
  SUBCASE("triangles in the pattern leave T-cycles") {
    auto tri = reduce_subgraph_iso(triangle(), triangle());
    CHECK(classify_cycle(tri, {tri.w1(0), tri.w1(1), tri.w1(2)}) ==
          CycleClass::T);
  }
  SUBCASE("non-cycles are refused") {
    CHECK_THROWS_AS(classify_cycle(art, {art.w1(0), art.w3(0)}),
                    InvalidParameterError);
    CHECK_THROWS_AS(classify_cycle(art, {art.w1(0)}), InvalidParameterError);
  }
}

TEST_CASE("every short cycle of the construction classifies") {
  Rng rng(321);
  for (int trial = 0; trial < 12; ++trial) {
    int n_g = rng.range(1, 5);
    int n_h = rng.range(1, n_g);
    std::vector<std::pair<int, int>> ge, he;
    for (int u = 0; u < n_g; ++u)
      for (int v = u + 1; v < n_g; ++v)
        if (rng.chance(0.5)) ge.emplace_back(u, v);
    for (int u = 0; u < n_h; ++u)
      for (int v = u + 1; v < n_h; ++v)
        if (rng.chance(0.5)) he.emplace_back(u, v);
    auto art = reduce_subgraph_iso(make_undirected_graph(n_g, ge),
                                   make_undirected_graph(n_h, he));
    for (const auto& c : enumerate_d_cycles(art.gprime, 3))
      CHECK_NOTHROW(classify_cycle(art, c));
  }
}

TEST_CASE("the middle zone stays acyclic") {
  auto art = reduce_subgraph_iso(path3(), single_edge());
  // keep only the W3-internal arcs and look for cycles
  std::vector<std::pair<int, int>> inner;
  for (auto [u, v] : art.gprime.edges)
    if (art.zone_of[u] == Zone::W3 && art.zone_of[v] == Zone::W3)
      inner.emplace_back(u, v);
  Digraph w3 = make_digraph(art.gprime.n, inner);
  CHECK(enumerate_d_cycles(w3, std::max(2, art.n_g)).empty());
}

TEST_CASE("brute-force subgraph isomorphism") {
  CHECK(brute_subgraph_iso(path3(), single_edge()).has_value());
  CHECK(!brute_subgraph_iso(path3(), triangle()).has_value());
  auto identity = brute_subgraph_iso(path3(), path3());
  REQUIRE(identity.has_value());
  CHECK(*identity == std::vector<int>{0, 1, 2});
  CHECK(is_subgraph_iso(path3(), path3(), *identity));
  // lexicographically first mapping
  auto first = brute_subgraph_iso(triangle(), single_edge());
  REQUIRE(first.has_value());
  CHECK(*first == std::vector<int>{0, 1});
}

TEST_CASE("witnesses from isomorphisms") {
  auto art = reduce_subgraph_iso(path3(), single_edge());
  Instance inst = artifact_instance(art);
  auto mapping = brute_subgraph_iso(path3(), single_edge());
  REQUIRE(mapping.has_value());
  Packing x = witness_from_iso(art, *mapping);
  Mask cov = covered(inst, x);
  CHECK(popcount(cov) == 3 * art.n_g);
  CHECK((cov & bit(art.z())) == 0);  // exactly z stays uncovered
  CHECK(is_candidate_solution(inst, x));
  CHECK(is_rejection_proof(inst, x, RejectionBudget::unbounded(),
                           /*oracle=*/true));

  SUBCASE("a broken mapping is refused") {
    CHECK_THROWS_AS(witness_from_iso(art, {0, 0}), InvalidParameterError);
    CHECK_THROWS_AS(witness_from_iso(art, {0}), InvalidParameterError);
    // maps the pattern edge onto the missing host edge {0, 2}
    CHECK_THROWS_AS(witness_from_iso(art, {0, 2}), InvalidParameterError);
  }
}

TEST_CASE("reduction equivalence on small pairs") {
  SolveOptions opts;
  opts.unguarded = true;
  struct Pair {
    UndirectedGraph g, h;
    bool expect;
  };
  std::vector<Pair> pairs = {
      {path3(), single_edge(), true},
      {path3(), triangle(), false},
      {triangle(), triangle(), true},
      {make_undirected_graph(3, {}), single_edge(), false},
  };
  for (const auto& [g, h, expect] : pairs) {
    CHECK(brute_subgraph_iso(g, h).has_value() == expect);
    Instance inst = artifact_instance(reduce_subgraph_iso(g, h));
    CHECK(solve_brute_force(inst, RejectionBudget::unbounded(), opts).yes ==
          expect);
    CHECK(solve_brute_force(inst, RejectionBudget::limit(2), opts).yes ==
          expect);
  }
}

TEST_CASE("generators are reproducible and validated") {
  SUBCASE("identical seeds give identical instances") {
    Instance a = random_instance(10, 14, 3, 3, 4, 99);
    Instance b = random_instance(10, 14, 3, 3, 4, 99);
    CHECK(a.agent_of == b.agent_of);
    CHECK(a.sets == b.sets);
    Instance c = random_instance(10, 14, 3, 3, 4, 100);
    CHECK(a.sets != c.sets);
  }
  SUBCASE("no sets requested, none produced") {
    CHECK(random_instance(5, 0, 2, 2, 0, 1).num_sets() == 0);
  }
  SUBCASE("asking beyond the distinct-set count fails") {
    // n = 3, d = 1 has only three distinct sets
    CHECK_THROWS_AS(random_instance(3, 4, 1, 1, 0, 1), InvalidParameterError);
  }
  SUBCASE("saturated sampling still delivers") {
    Instance inst = random_instance(3, 3, 1, 1, 0, 7);
    CHECK(inst.num_sets() == 3);
  }
  SUBCASE("full edge probability gives the complete digraph") {
    auto kep = random_kep(4, 1.0, 2, 3, 2, 5);
    CHECK(kep.g.edges.size() == 12);
  }
  SUBCASE("identical seeds give identical graphs") {
    auto a = random_kep(6, 0.4, 2, 3, 2, 11);
    auto b = random_kep(6, 0.4, 2, 3, 2, 11);
    CHECK(a.g.edges == b.g.edges);
    CHECK(a.agent_of == b.agent_of);
  }
}
