#include "doctest.h"

#include "vldl/error.hpp"
#include "vldl/spec_file.hpp"
#include "vldl/vps.hpp"

using namespace vldl;

TEST_SUITE("vps") {

TEST_CASE("successors follow the stack discipline") {
  auto sigma = default_alphabet();
  Vps s = parse_vps("states: q0 q1; initial: q0; "
                    "q0 -c push A-> q1; q0 -r pop bot-> q1; q1 -l-> q0;",
                    sigma);
  const Symbol c = sigma->symbol("c"), r = sigma->symbol("r");
  const StackSymbol a = 1;
  auto pushed = successors(s, {0, {}}, c);
  REQUIRE(pushed.size() == 1);
  CHECK(pushed[0] == Configuration{1, {a}});
  auto popped = successors(s, {0, {}}, r);
  REQUIRE(popped.size() == 1);
  CHECK(popped[0] == Configuration{1, {}});
  CHECK(successors(s, {0, {a}}, r).empty());
}

TEST_CASE("run relation") {
  auto spec = parse_spec(R"(
    automaton D {
      states: q0 q1 q2 q3; initial: q0; final: q3;
      q0 -c push A-> q1; q1 -l-> q2; q2 -r pop A-> q3;
    }
    automaton R { states: q0 q1; initial: q0; final: q1; q0 -r pop bot-> q1; }
  )");
  const auto& sigma = *spec.alphabet;
  const Tvpa& d = *spec.automata.at("D");
  auto empty = run_relation(d, FiniteWord{}, 0);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0] == RunResult{0, {0}});
  auto runs = run_relation(d, parse_word(sigma, "c l r"), 0);
  REQUIRE(runs.size() == 1);
  CHECK(runs[0] == RunResult{3, {0, 1, 2, 3}});
  auto pops = run_relation(*spec.automata.at("R"), parse_word(sigma, "r"), 0);
  REQUIRE(pops.size() == 1);
  CHECK(pops[0] == RunResult{1, {0, 1}});
}

TEST_CASE("system text format") {
  auto sigma = default_alphabet();
  CHECK_THROWS_AS(parse_vps("states: q; initial: q; q -c push bot-> q;", sigma),
                  InputError);
  CHECK_THROWS_AS(parse_vps("states: q; initial: p;", sigma), InputError);
  CHECK_THROWS_AS(parse_vps("states: q; initial: q; q -l push A-> q;", sigma),
                  InputError);
  CHECK_THROWS_AS(parse_vps("states: q; initial: q; final: q;", sigma),
                  InputError);
  Vps s = parse_vps("states: s0 s1; initial: s0; "
                    "s0 -c push A-> s1; s1 -r pop A-> s0; s1 -l-> s1;",
                    sigma);
  Vps again = parse_vps(print_system(s), sigma);
  CHECK(print_system(again) == print_system(s));
  CHECK(s.state_count() == 2);
  CHECK(s.stack_count() == 2);
}

TEST_CASE("bounded unrolling trace check") {
  auto sigma = default_alphabet();
  Vps s = parse_vps("states: s0 s1; initial: s0; "
                    "s0 -c push A-> s1; s1 -r pop A-> s0;",
                    sigma);
  auto good = parse_lasso(*sigma, "(c r)^w");
  auto bad = parse_lasso(*sigma, "c r (l)^w");
  CHECK(has_run_prefix(s, good, trace_check_steps(s, good)));
  CHECK_FALSE(has_run_prefix(s, bad, trace_check_steps(s, bad)));
}

} // TEST_SUITE
