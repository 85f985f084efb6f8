#pragma once

#include "vldl/alphabet.hpp"
#include "vldl/tree.hpp"
#include "vldl/tree_automaton.hpp"

namespace vldl {

/// Stack tree of a finite word; ε gives the all-bot tree.
FiniteTree encode(const PushdownAlphabet& sigma, std::span<const Symbol> w);

/// Regular tree whose unfolding is the stack tree of the lasso.  Generator
/// states are suffixes (by position class) and finite nested infixes (by
/// position class and length).
RegularTree encode_lasso(const PushdownAlphabet& sigma, const LassoWord& alpha,
                         std::size_t max_states = 1000000);

/// Büchi tree automaton accepting exactly the stack trees of infinite words
/// over the alphabet.
BuchiTreeAutomaton stack_tree_recognizer(const AlphabetRef& sigma);

/// The lasso whose stack tree is the unfolding of t.  The cardinal branch
/// is followed until a generator state repeats; every matched call splices
/// in the word of its right subtree (right children before left ones).
LassoWord decode(const PushdownAlphabet& sigma, const RegularTree& t,
                 std::size_t max_letters = 1000000);

} // namespace vldl
