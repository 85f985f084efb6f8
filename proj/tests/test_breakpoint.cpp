#include "doctest.h"

#include "vldl/breakpoint.hpp"
#include "vldl/error.hpp"
#include "vldl/random.hpp"
#include "vldl/stack_tree.hpp"

using namespace vldl;

TEST_SUITE("breakpoint") {

TEST_CASE("state bound") {
  CHECK(breakpoint_state_bound(0) == 3);
  CHECK(breakpoint_state_bound(1) == 21);
  CHECK(breakpoint_state_bound(2) == 16 + 256 + 1);
  CHECK(breakpoint_state_bound(100) == UINT64_MAX);
  auto sigma = default_alphabet();
  Rng rng(61);
  for (int n = 0; n < 50; ++n) {
    auto a = random_aja(sigma, rng, 3);
    CHECK(aja_to_tree(a).size() <= breakpoint_state_bound(a.size()));
  }
}

TEST_CASE("lazy source matches the materialized automaton") {
  auto sigma = default_alphabet();
  Rng rng(62);
  for (int n = 0; n < 30; ++n) {
    auto a = random_aja(sigma, rng, 3);
    auto eager = aja_to_tree(a);
    auto lazy = lazy_aja_to_tree(a);
    auto copy = materialize(*lazy);
    CHECK(copy.size() == eager.size());
    CHECK(copy.transition_count() == eager.transition_count());
    CHECK(lazy->size() == eager.size());
  }
}

TEST_CASE("stack tree membership matches word acceptance") {
  auto sigma = default_alphabet();
  Rng rng(63);
  for (int n = 0; n < 40; ++n) {
    auto a = random_aja(sigma, rng, 3);
    auto t = aja_to_tree(a);
    auto lazy = lazy_aja_to_tree(a);
    for (int k = 0; k < 10; ++k) {
      auto alpha = random_lasso(*sigma, rng, 3, 4);
      auto tree = encode_lasso(*sigma, alpha);
      const bool member = contains(t, tree);
      CHECK_MESSAGE(member == lasso_accepts(a, alpha),
                    a.dump() << format_lasso(*sigma, alpha));
      CHECK(contains(*lazy, tree) == member);
    }
  }
}

TEST_CASE("reachable guesses agree with exhaustive guesses") {
  auto sigma = default_alphabet();
  Rng rng(64);
  BreakpointOptions exhaustive;
  exhaustive.guesses = GuessMode::Exhaustive;
  for (int n = 0; n < 30; ++n) {
    auto a = random_aja(sigma, rng, 2);
    auto reachable = aja_to_stacktree_automaton(a);
    auto full = aja_to_stacktree_automaton(a, exhaustive);
    CHECK(reachable.size() <= full.size());
    CHECK_MESSAGE(is_empty(reachable) == is_empty(full), a.dump());
    for (int k = 0; k < 5; ++k) {
      auto tree = encode_lasso(*sigma, random_lasso(*sigma, rng, 3, 4));
      CHECK(contains(reachable, tree) == contains(full, tree));
    }
  }
}

TEST_CASE("witnesses decode to accepted words") {
  auto sigma = default_alphabet();
  Rng rng(65);
  for (int n = 0; n < 30; ++n) {
    auto a = random_aja(sigma, rng, 3);
    auto t = aja_to_stacktree_automaton(a);
    auto w = witness(t);
    if (!w)
      continue;
    auto alpha = decode(*sigma, *w);
    CHECK_MESSAGE(lasso_accepts(a, alpha), a.dump() << format_lasso(*sigma, alpha));
  }
}

TEST_CASE("state cap") {
  auto sigma = default_alphabet();
  Rng rng(66);
  auto a = random_aja(sigma, rng, 3);
  BreakpointOptions options;
  options.limits.max_states = 1;
  CHECK_THROWS_AS(aja_to_tree(a, options), ResourceError);
}

} // TEST_SUITE
