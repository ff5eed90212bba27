#include "doctest.h"

#include "rpsp/reductions.hpp"
#include "rpsp/rejection.hpp"
#include "support.hpp"

using namespace rpsp;

namespace {

// the socially optimal packing of the running example: mixed 3-set and the
// orange 3-set
const Packing kOptimal{1, 2};
// the packing the first agent prefers: its internal 2-set and the orange set
const Packing kPreferred{0, 2};

}  // namespace

TEST_CASE("the first agent rejects the socially optimal packing") {
  Instance inst = testsupport::example_instance(6);
  auto w = find_rejection(inst, kOptimal, 0, RejectionBudget::unbounded());
  REQUIRE(w.has_value());
  CHECK(w->agent == 0);
  CHECK(w->rejected == std::vector<int>{1});
  CHECK(w->added == std::vector<int>{0});
  CHECK(witness_valid(inst, kOptimal, *w, RejectionBudget::unbounded()));
  CHECK(format_witness(*w) == "reject agent=0 rej=1 int=0");

  // the rejection drops a single set, so it survives a budget of one
  CHECK(find_rejection(inst, kOptimal, 0, RejectionBudget::limit(1)));
  // but not a budget of zero: the internal set overlaps the packing
  CHECK(!find_rejection(inst, kOptimal, 0, RejectionBudget::limit(0)));
}

TEST_CASE("no rejection against a maximum packing of a single agent") {
  Instance inst =
      testsupport::inst(4, 1, {0, 0, 0, 0}, {{0, 1}, {2, 3}, {1, 2}}, 2, 4);
  CHECK(!find_rejection(inst, {0, 1}, 0, RejectionBudget::unbounded()));
}

TEST_CASE("an internal set clear of the packing is a free rejection") {
  Instance inst =
      testsupport::inst(4, 2, {0, 0, 1, 1}, {{0, 1}, {2, 3}}, 2, 2);
  auto w = find_rejection(inst, {1}, 0, RejectionBudget::limit(0));
  REQUIRE(w.has_value());
  CHECK(w->rejected.empty());
  CHECK(w->added == std::vector<int>{0});
  auto oracle = find_rejection_oracle(inst, {1}, 0, RejectionBudget::limit(0));
  REQUIRE(oracle.has_value());
  CHECK(witness_valid(inst, {1}, *oracle, RejectionBudget::limit(0)));
}

TEST_CASE("agent out of range") {
  Instance inst = testsupport::example_instance(6);
  CHECK_THROWS_AS(find_rejection(inst, {}, 2, RejectionBudget::unbounded()),
                  InvalidParameterError);
  CHECK_THROWS_AS(RejectionBudget::limit(-1), InvalidParameterError);
}

TEST_CASE("canonical search agrees with the exhaustive oracle") {
  Rng rng(20240501);
  const RejectionBudget budgets[] = {
      RejectionBudget::limit(0), RejectionBudget::limit(1),
      RejectionBudget::limit(2), RejectionBudget::unbounded()};
  for (int trial = 0; trial < 120; ++trial) {
    Instance inst = trial % 2 == 0
                        ? testsupport::random_small(rng, 2, 10, 12, 3, 1, 3, 0)
                        : testsupport::random_conflict(rng, 0);
    Packing x = testsupport::random_packing(inst, rng);
    for (int a = 0; a < inst.p; ++a) {
      for (const auto& budget : budgets) {
        CAPTURE(trial);
        CAPTURE(a);
        auto canonical = find_rejection(inst, x, a, budget);
        auto oracle = find_rejection_oracle(inst, x, a, budget);
        CHECK(canonical.has_value() == oracle.has_value());
        if (canonical)
          CHECK(witness_valid(inst, x, *canonical, budget));
      }
    }
  }
}

TEST_CASE("witnesses found at a small budget stay valid at larger ones") {
  Rng rng(31337);
  for (int trial = 0; trial < 80; ++trial) {
    Instance inst = testsupport::random_small(rng, 2, 9, 10, 2, 1, 3, 0);
    Packing x = testsupport::random_packing(inst, rng);
    for (int a = 0; a < inst.p; ++a) {
      for (int c = 0; c <= 2; ++c) {
        auto w = find_rejection(inst, x, a, RejectionBudget::limit(c));
        if (!w) continue;
        CHECK(witness_valid(inst, x, *w, RejectionBudget::limit(c + 1)));
        CHECK(witness_valid(inst, x, *w, RejectionBudget::unbounded()));
        // hence a rejection at budget c is one at every larger budget
        CHECK(find_rejection(inst, x, a, RejectionBudget::limit(c + 1)));
        CHECK(find_rejection(inst, x, a, RejectionBudget::unbounded()));
      }
    }
  }
}

TEST_CASE("agents ignore packing changes outside their internal region") {
  // two packings whose sets meeting the agent's internal-set elements
  // coincide draw the same verdict
  Rng rng(777);
  int agreeing_pairs = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst = testsupport::random_small(rng, 3, 10, 12, 3, 1, 3, 0);
    auto masks = set_masks(inst);
    for (int a = 0; a < inst.p; ++a) {
      Mask touched = 0;
      for (int idx : internal_sets(inst, a)) touched |= masks[idx];
      Packing x = testsupport::random_packing(inst, rng);
      Packing y = testsupport::random_packing(inst, rng);
      auto relevant = [&](const Packing& pack) {
        Packing r;
        for (int idx : pack)
          if (masks[idx] & touched) r.push_back(idx);
        return r;
      };
      if (relevant(x) != relevant(y)) continue;
      ++agreeing_pairs;
      CHECK(find_rejection(inst, x, a, RejectionBudget::unbounded())
                .has_value() ==
            find_rejection(inst, y, a, RejectionBudget::unbounded())
                .has_value());
    }
  }
  CHECK(agreeing_pairs > 50);  // the property must actually get exercised
}

TEST_CASE("budget zero means a disjoint internal family exists") {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = testsupport::random_small(rng, 2, 9, 10, 3, 1, 3, 0);
    Packing x = testsupport::random_packing(inst, rng);
    Mask cov = covered(inst, x);
    auto masks = set_masks(inst);
    for (int a = 0; a < inst.p; ++a) {
      bool free_internal_set = false;
      for (int idx : internal_sets(inst, a))
        if ((masks[idx] & cov) == 0) free_internal_set = true;
      CHECK(find_rejection(inst, x, a, RejectionBudget::limit(0)).has_value() ==
            free_internal_set);
    }
  }
}

TEST_CASE("rejection-proofness of whole packings") {
  Instance inst = testsupport::example_instance(6);
  SUBCASE("the socially optimal packing is rejected") {
    CHECK(!is_rejection_proof(inst, kOptimal, RejectionBudget::unbounded()));
    CHECK(!is_rejection_proof(inst, kOptimal, RejectionBudget::unbounded(),
                              /*oracle=*/true));
  }
  SUBCASE("the preferred packing stands") {
    CHECK(is_rejection_proof(inst, kPreferred, RejectionBudget::unbounded()));
  }
  SUBCASE("an empty instance accepts the empty packing") {
    Instance empty = testsupport::inst(0, 1, {}, {}, 1, 0);
    CHECK(is_rejection_proof(empty, {}, RejectionBudget::unbounded()));
  }
}

TEST_CASE("unions of maximum internal packings are rejection-proof") {
  Rng rng(424242);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = testsupport::random_small(rng, 2, 9, 10, 3, 1, 3, 0);
    Packing x;
    for (int a = 0; a < inst.p; ++a)
      for (int idx : testsupport::max_internal_packing_exhaustive(inst, a))
        x.push_back(idx);
    std::sort(x.begin(), x.end());
    CAPTURE(trial);
    REQUIRE(packing_valid(inst, x));
    CHECK(is_rejection_proof(inst, x, RejectionBudget::unbounded(),
                             /*oracle=*/true));
  }
}

TEST_CASE("candidate solutions need validity and coverage") {
  Instance inst = testsupport::example_instance(6);
  SUBCASE("empty packing with k = 0") {
    Instance easy = testsupport::example_instance(0);
    CHECK(is_candidate_solution(easy, {}));
  }
  SUBCASE("too little coverage") {
    Instance strict = testsupport::inst(4, 1, {0, 0, 0, 0}, {{0, 1}}, 2, 3);
    CHECK(!is_candidate_solution(strict, {0}));
  }
  SUBCASE("the preferred packing misses k = 6") {
    CHECK(popcount(covered(inst, kPreferred)) == 5);
    CHECK(!is_candidate_solution(inst, kPreferred));
  }
  SUBCASE("overlap means invalid rather than an error") {
    CHECK(!is_candidate_solution(inst, {0, 1}));
  }
}
