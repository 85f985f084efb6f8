#include "doctest.h"

#include "vldl/error.hpp"
#include "vldl/oracle.hpp"
#include "vldl/random.hpp"
#include "vldl/spec_file.hpp"

using namespace vldl;

namespace {

const char* automata = R"(
  alphabet { calls: c; returns: r; locals: l, m; props l = {p}; }
  automaton Next { states: s0 s1; initial: s0; final: s1; s0 -l-> s1; s0 -m-> s1; }
  automaton Any {
    states: s0; initial: s0; final: s0;
    s0 -l-> s0; s0 -m-> s0; s0 -c push A-> s0; s0 -r pop A-> s0; s0 -r pop bot-> s0;
  }
  automaton Sum {
    states: s0 s1 s2; initial: s0; final: s2;
    s0 -c push A-> s1; s1 -l-> s1; s1 -m-> s1; s1 -r pop A-> s2;
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
  bool eval(const std::string& f, const std::string& word) const {
    return eval_lasso(parse(f), spec.alphabet, parse_lasso(*spec.alphabet, word));
  }
};

} // namespace

TEST_SUITE("oracle") {

TEST_CASE_FIXTURE(Fixture, "examples") {
  CHECK(eval("p", "l (m)^w"));
  CHECK_FALSE(eval("p", "m (l)^w"));
  CHECK(eval("<Next> p", "m l (m)^w"));
  CHECK(eval("<Any> p", "m m m (l)^w"));
  CHECK(eval("<Any> p", "l (m)^w"));
  CHECK_FALSE(eval("<Any> !p", "(l)^w"));
  CHECK(eval("[Any] p", "(l)^w"));
  CHECK(eval("<Sum> p", "c m r l (m)^w"));
  CHECK(eval("[Sum] false", "l (c r)^w"));
  CHECK_FALSE(eval("[Sum] false", "c r (l)^w"));
}

TEST_CASE_FIXTURE(Fixture, "reach sets") {
  auto alpha = parse_lasso(*spec.alphabet, "m (c l r)^w");
  Oracle oracle(spec.alphabet, alpha);
  const auto& next = *spec.automata.at("Next");
  CHECK(oracle.reach(next, 0) == std::set<Position>{1});
  CHECK(oracle.reach(*spec.automata.at("Sum"), 1).size() == 1);
  CHECK(oracle.reach(*spec.automata.at("Sum"), 0).empty());
}

TEST_CASE_FIXTURE(Fixture, "rotation and unsupported lassos") {
  const auto& sigma = *spec.alphabet;
  CHECK(oracle_supports(sigma, parse_lasso(sigma, "(r c)^w")));
  CHECK_NOTHROW(Oracle(spec.alphabet, parse_lasso(sigma, "(r c)^w")));
  CHECK_FALSE(oracle_supports(sigma, parse_lasso(sigma, "(c)^w")));
  CHECK_THROWS_AS(Oracle(spec.alphabet, parse_lasso(sigma, "(c)^w")),
                  UnsupportedError);
  CHECK(eval("<Next> p", "(m l)^w"));
}

TEST_CASE("cross check finds no disagreement") {
  auto sigma = sample_alphabet();
  Rng rng(71);
  std::vector<Formula> formulas{conj(atom("p"), neg_atom("p"))};
  RandomFormulaOptions options;
  options.max_size = 6;
  options.max_tvpa_states = 2;
  for (int n = 0; n < 8; ++n)
    formulas.push_back(random_formula(sigma, rng, options));
  std::vector<LassoWord> lassos;
  for (int n = 0; n < 6; ++n)
    lassos.push_back(random_restricted_lasso(*sigma, rng, 2, 4));
  auto report = cross_check(formulas, lassos, sigma);
  CHECK(report.pairs == formulas.size() * lassos.size());
  for (const auto& d : report.disagreements)
    FAIL_CHECK(d.formula << " on " << d.lasso);
}

} // TEST_SUITE
