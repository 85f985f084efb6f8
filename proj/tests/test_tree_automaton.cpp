#include "doctest.h"

#include "support.hpp"
#include "vldl/error.hpp"
#include "vldl/random.hpp"
#include "vldl/stack_tree.hpp"
#include "vldl/tree_automaton.hpp"

using namespace vldl;

namespace {

/// One state looping on every symbol in both directions; bot leads to a
/// state with no transitions when `bot_ok` is false.
BuchiTreeAutomaton universal(const AlphabetRef& sigma, bool accepting) {
  BuchiTreeAutomaton t(sigma);
  State q = t.add_state(accepting, "all");
  for (Symbol a = 0; a < sigma->size(); ++a)
    t.add_transition(q, TreeLabel::of(a), q, q);
  t.add_transition(q, TreeLabel::bot(), q, q);
  return t;
}

/// Trees whose root is labelled `a`; everything below is arbitrary.
BuchiTreeAutomaton root_is(const AlphabetRef& sigma, Symbol a) {
  BuchiTreeAutomaton t(sigma);
  State q0 = t.add_state(false, "root");
  State any = t.add_state(true, "any");
  t.add_transition(q0, TreeLabel::of(a), any, any);
  for (Symbol b = 0; b < sigma->size(); ++b)
    t.add_transition(any, TreeLabel::of(b), any, any);
  t.add_transition(any, TreeLabel::bot(), any, any);
  t.set_initial(q0);
  return t;
}

} // namespace

TEST_SUITE("treeauto") {

TEST_CASE("game solver agrees with strategy enumeration") {
  Rng rng(31);
  for (int n = 0; n < 200; ++n) {
    auto g = random_game(rng, 2 + n % 6);
    auto solution = solve_buchi_game(g);
    auto automaton = testing::brute_force_automaton(g);
    auto pathfinder = testing::brute_force_pathfinder(g);
    for (BuchiGame::Vertex v = 0; v < g.size(); ++v) {
      CHECK(solution.winning[v] == automaton[v]);
      CHECK(solution.winning[v] != pathfinder[v]);
    }
  }
}

TEST_CASE("winning strategies stay in the winning region") {
  Rng rng(32);
  for (int n = 0; n < 200; ++n) {
    auto g = random_game(rng, 7);
    auto solution = solve_buchi_game(g);
    for (BuchiGame::Vertex v = 0; v < g.size(); ++v) {
      if (g.owner(v) != Player::Automaton || !solution.winning[v]) {
        CHECK(solution.strategy[v] == -1);
        continue;
      }
      REQUIRE(solution.strategy[v] >= 0);
      auto w = g.successors(v).at(static_cast<std::size_t>(solution.strategy[v]));
      CHECK(solution.winning[w]);
    }
  }
}

TEST_CASE("dead ends lose for their owner") {
  BuchiGame g;
  auto a = g.add_vertex(Player::Automaton, true);
  auto p = g.add_vertex(Player::Pathfinder, false);
  auto solution = solve_buchi_game(g);
  CHECK_FALSE(solution.winning[a]);
  CHECK(solution.winning[p]);
}

TEST_CASE("emptiness and witnesses") {
  auto sigma = default_alphabet();
  CHECK_FALSE(is_empty(universal(sigma, true)));
  CHECK(is_empty(universal(sigma, false)));
  auto t = stack_tree_recognizer(sigma);
  auto w = witness(t);
  REQUIRE(w.has_value());
  CHECK(contains(t, *w));
  CHECK_NOTHROW(decode(*sigma, *w));
  CHECK_FALSE(witness(universal(sigma, false)).has_value());
}

TEST_CASE("intersection") {
  auto sigma = default_alphabet();
  const Symbol c = sigma->symbol("c"), r = sigma->symbol("r");
  auto t = stack_tree_recognizer(sigma);
  auto calls = intersect(t, root_is(sigma, c));
  CHECK(calls.size() <= 2 * t.size() * 2);
  auto w = witness(calls);
  REQUIRE(w.has_value());
  CHECK(w->at("") == TreeLabel::of(c));
  CHECK(contains(t, *w));
  // A stack tree rooted at a return exists (pending returns are allowed).
  CHECK_FALSE(is_empty(intersect(t, root_is(sigma, r))));
  // No stack tree has bot at the root.
  BuchiTreeAutomaton bot_root(sigma);
  State q = bot_root.add_state(true);
  bot_root.add_transition(q, TreeLabel::bot(), q, q);
  CHECK(is_empty(intersect(t, bot_root)));
}

TEST_CASE("membership against encodings") {
  auto sigma = default_alphabet();
  const Symbol l = sigma->symbol("l");
  auto t = root_is(sigma, l);
  CHECK(contains(t, encode_lasso(*sigma, parse_lasso(*sigma, "l (c r)^w"))));
  CHECK_FALSE(contains(t, encode_lasso(*sigma, parse_lasso(*sigma, "(c r)^w"))));
}

TEST_CASE("state cap") {
  auto sigma = default_alphabet();
  auto t = stack_tree_recognizer(sigma);
  Limits tiny{2, 1000000};
  CHECK_THROWS_AS(intersect(t, t, tiny), ResourceError);
}

} // TEST_SUITE
