#include "doctest.h"

#include "vldl/error.hpp"
#include "vldl/random.hpp"
#include "vldl/stack_tree.hpp"

using namespace vldl;

TEST_SUITE("stacktree") {

TEST_CASE("finite encodings") {
  auto sigma = default_alphabet();
  CHECK(encode(*sigma, FiniteWord{}).nodes().empty());
  auto matched = encode(*sigma, parse_word(*sigma, "c l r"));
  FiniteTree expected;
  expected.set("", sigma->symbol("c"));
  expected.set("0", sigma->symbol("r"));
  expected.set("1", sigma->symbol("l"));
  CHECK(matched == expected);
  CHECK(matched.at("00").is_bot());
  auto unmatched = encode(*sigma, parse_word(*sigma, "c l"));
  CHECK(unmatched.at("0").is_bot());
  CHECK(unmatched.at("1") == TreeLabel::of(sigma->symbol("l")));
}

TEST_CASE("lasso encodings") {
  auto sigma = default_alphabet();
  auto locals = encode_lasso(*sigma, parse_lasso(*sigma, "(l)^w"));
  for (std::string b : {"", "0", "00", "000"}) {
    CHECK(locals.at(b) == TreeLabel::of(sigma->symbol("l")));
    CHECK(locals.at(b + "1").is_bot());
  }
  auto cr = encode_lasso(*sigma, parse_lasso(*sigma, "(c r)^w"));
  for (std::string b : {"", "00", "0000"}) {
    CHECK(cr.at(b) == TreeLabel::of(sigma->symbol("c")));
    CHECK(cr.at(b + "0") == TreeLabel::of(sigma->symbol("r")));
    CHECK(cr.at(b + "1").is_bot());
  }
}

TEST_CASE("decode inverts encode") {
  auto sigma = default_alphabet();
  Rng rng(21);
  for (int n = 0; n < 200; ++n) {
    auto alpha = random_lasso(*sigma, rng, 6, 6);
    auto back = decode(*sigma, encode_lasso(*sigma, alpha));
    CHECK_MESSAGE(back == alpha, format_lasso(*sigma, alpha));
  }
}

TEST_CASE("decode rejects malformed trees") {
  auto sigma = default_alphabet();
  FiniteTree bot_root;
  CHECK_THROWS_AS(decode(*sigma, regular_tree(bot_root)),
                  MalformedWitnessError);
}

TEST_CASE("recognizer accepts stack trees and rejects mutants") {
  auto sigma = default_alphabet();
  auto t = stack_tree_recognizer(sigma);
  CHECK(t.size() == 7);
  Rng rng(22);
  for (int n = 0; n < 50; ++n) {
    auto alpha = random_lasso(*sigma, rng, 6, 6);
    CHECK(contains(t, encode_lasso(*sigma, alpha)));
    auto m = mutate_stack_tree(*sigma, alpha, rng);
    CHECK_MESSAGE(!contains(t, m.tree), m.kind);
  }
  auto tree = encode_lasso(*sigma, parse_lasso(*sigma, "(l)^w"));
  CHECK_FALSE(contains(t, tree.relabel("", TreeLabel::bot())));
  CHECK_FALSE(contains(t, tree.relabel("1", TreeLabel::of(sigma->symbol("l")))));
}

TEST_CASE("generator text round trip") {
  auto sigma = default_alphabet();
  auto tree = encode_lasso(*sigma, parse_lasso(*sigma, "l c (c r l)^w"));
  auto text = write_generator(*sigma, tree);
  auto back = read_generator(*sigma, text);
  CHECK(back.truncate(8) == tree.truncate(8));
}

} // TEST_SUITE
