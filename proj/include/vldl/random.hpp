#pragma once

#include "vldl/aja.hpp"
#include "vldl/formula.hpp"
#include "vldl/game.hpp"
#include "vldl/tree.hpp"
#include "vldl/vps.hpp"

#include <random>
#include <string>

namespace vldl {

using Rng = std::mt19937_64;

/// Calls c {p}, returns r, locals a {p} and b {q}.
AlphabetRef sample_alphabet();

FiniteWord random_word(const PushdownAlphabet& sigma, Rng& rng,
                       std::size_t length);
/// Well-matched word of exactly the given length; odd lengths need a local.
FiniteWord random_well_matched(const PushdownAlphabet& sigma, Rng& rng,
                               std::size_t length);

/// |u| <= max_prefix and 1 <= |v| <= max_period.
LassoWord random_lasso(const PushdownAlphabet& sigma, Rng& rng,
                       std::size_t max_prefix, std::size_t max_period);
/// Like random_lasso with a well-matched period.
LassoWord random_restricted_lasso(const PushdownAlphabet& sigma, Rng& rng,
                                  std::size_t max_prefix,
                                  std::size_t max_period);

/// 1-AJA with 1..max_states states and small random transition formulas.
OneAja random_aja(const AlphabetRef& sigma, Rng& rng, std::size_t max_states);

/// TVPA with 1..max_states states over stack symbols A and B.  Each state
/// gets a test with probability test_rate, drawn from `tests`.
TvpaRef random_tvpa(const AlphabetRef& sigma, Rng& rng, std::size_t max_states,
                    const std::vector<Formula>& tests, double test_rate,
                    const std::string& name);

struct RandomFormulaOptions {
  /// Bound on formula_size.
  std::size_t max_size = 10;
  std::size_t max_tvpa_states = 3;
  std::size_t max_test_nesting = 1;
};

/// Random formula in negation normal form over the propositions of sigma.
Formula random_formula(const AlphabetRef& sigma, Rng& rng,
                       const RandomFormulaOptions& options = {});

/// Game with the given number of vertices and out-degree 1..3.
BuchiGame random_game(Rng& rng, std::size_t vertices);

/// Single-label change of the stack tree of alpha that breaks one of the
/// structural conditions of stack trees; `kind` describes the change.
struct Mutation {
  RegularTree tree;
  std::string kind;
};
Mutation mutate_stack_tree(const PushdownAlphabet& sigma,
                           const LassoWord& alpha, Rng& rng);

} // namespace vldl
