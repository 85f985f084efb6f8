#include "doctest.h"

#include "vldl/compile.hpp"
#include "vldl/error.hpp"
#include "vldl/oracle.hpp"
#include "vldl/random.hpp"
#include "vldl/spec_file.hpp"

using namespace vldl;

namespace {

const char* automata = R"(
  alphabet { calls: c; returns: r; locals: l, m; props l = {p}; props c = {p}; }
  automaton Next { states: s0 s1; initial: s0; final: s1; s0 -l-> s1; s0 -m-> s1; }
  automaton Sum {
    states: s0 s1 s2; initial: s0; final: s2;
    s0 -c push A-> s1; s1 -l-> s1; s1 -m-> s1; s1 -r pop A-> s2;
  }
  automaton Guarded {
    states: s0 s1; initial: s0; final: s1; s0 -l-> s1; s0 -m-> s1;
    test s0: p;
  }
)";

struct Fixture {
  SpecFile spec = parse_spec(automata);
  Formula parse(const std::string& text) const {
    return parse_formula(text, *spec.alphabet, [&](std::string_view name) {
      auto it = spec.automata.find(std::string(name));
      return it == spec.automata.end() ? nullptr : it->second;
    });
  }
  bool accepts(const std::string& f, const std::string& word) const {
    return lasso_accepts(compile(parse(f), spec.alphabet),
                         parse_lasso(*spec.alphabet, word));
  }
};

} // namespace

TEST_SUITE("compile") {

TEST_CASE_FIXTURE(Fixture, "atoms and connectives") {
  CHECK(accepts("p", "l (m)^w"));
  CHECK_FALSE(accepts("p", "m (l)^w"));
  CHECK(accepts("!p", "m (l)^w"));
  CHECK(accepts("p | !p", "r (m)^w"));
  CHECK_FALSE(accepts("p & !p", "l (m)^w"));
}

TEST_CASE_FIXTURE(Fixture, "modal examples") {
  // After one local step, p holds.
  CHECK(accepts("<Next> p", "m l (m)^w"));
  CHECK_FALSE(accepts("<Next> p", "m m (l)^w"));
  CHECK_FALSE(accepts("<Next> p", "c l r (l)^w"));
  CHECK(accepts("[Next] p", "c (m)^w"));
  // A summary over one call/return pair ends at the position after r.
  CHECK(accepts("<Sum> p", "c m r l (m)^w"));
  CHECK_FALSE(accepts("<Sum> p", "c m r m (l)^w"));
  CHECK(accepts("[Sum] !p", "c m r m (l)^w"));
  // The test of s0 must hold where the run starts.
  CHECK(accepts("<Guarded> p", "l l (m)^w"));
  CHECK_FALSE(accepts("<Guarded> p", "m l (m)^w"));
  CHECK(accepts("[Guarded] false", "m l (m)^w"));
}

TEST_CASE_FIXTURE(Fixture, "negation is complement") {
  Rng rng(51);
  for (const char* text : {"<Next> p", "[Sum] p", "<Guarded> !p", "[Next] <Sum> p"})
    for (int n = 0; n < 30; ++n) {
      auto alpha = random_lasso(*spec.alphabet, rng, 3, 4);
      auto f = parse(text);
      CHECK_MESSAGE(lasso_accepts(compile(f, spec.alphabet), alpha) !=
                        lasso_accepts(compile(negate(f), spec.alphabet), alpha),
                    text << " on " << format_lasso(*spec.alphabet, alpha));
    }
}

TEST_CASE_FIXTURE(Fixture, "eager state counts") {
  CompileOptions eager{true};
  const auto& next = *spec.automata.at("Next");
  const auto& sum = *spec.automata.at("Sum");
  const std::size_t literal = 3;
  CHECK(compile(parse("p"), spec.alphabet, eager).size() == literal);
  CHECK(compile(parse("[Next] p"), spec.alphabet, eager).size() ==
        modal_state_bound(next) + 2 + literal);
  CHECK(compile(parse("<Sum> !p"), spec.alphabet, eager).size() ==
        modal_state_bound(sum) + 2 + literal);
  CHECK(compile(parse("<Guarded> p"), spec.alphabet, eager).size() ==
        modal_state_bound(*spec.automata.at("Guarded")) + 2 + literal + literal);
  CHECK(next.system().stack_count() == 1);
  CHECK(modal_state_bound(next) == 16);
  // Lazy construction never creates more states.
  CHECK(compile(parse("[Next] p"), spec.alphabet).size() <=
        compile(parse("[Next] p"), spec.alphabet, eager).size());
}

TEST_CASE("agrees with the oracle on random formulas") {
  auto sigma = sample_alphabet();
  Rng rng(52);
  RandomFormulaOptions options;
  options.max_size = 8;
  options.max_tvpa_states = 2;
  for (int n = 0; n < 20; ++n) {
    auto f = random_formula(sigma, rng, options);
    auto a = compile(f, sigma);
    for (int k = 0; k < 10; ++k) {
      auto alpha = random_restricted_lasso(*sigma, rng, 3, 4);
      CHECK_MESSAGE(lasso_accepts(a, alpha) == eval_lasso(f, sigma, alpha),
                    to_string(f) << " on " << format_lasso(*sigma, alpha));
    }
  }
}

TEST_CASE("foreign automata are rejected") {
  auto sigma = default_alphabet();
  auto other = sample_alphabet();
  Rng rng(53);
  auto a = random_tvpa(other, rng, 2, {}, 0, "X");
  CHECK_THROWS(compile(diamond(a, atom("p")), sigma));
}

} // TEST_SUITE
