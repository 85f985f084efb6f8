#pragma once

#include "vldl/aja.hpp"
#include "vldl/tree_automaton.hpp"

#include <memory>

namespace vldl {

/// How the outcome of a nested infix is guessed at a matched call.
enum class GuessMode : std::uint8_t {
  /// Only pairs reachable from the direct targets over some well-matched
  /// word.
  Reachable,
  /// Every pair of disjoint state sets.
  Exhaustive
};

struct BreakpointOptions {
  GuessMode guesses = GuessMode::Reachable;
  Limits limits = Limits::from_env();
};

/// Büchi tree automaton T' with L(T') ∩ st(Σ^ω) = st(L(a)).  States are
/// spine pairs (A, N), verifier quadruples (A, N, A_G, N_G) and the sink
/// q_bot; only states reachable from the initial one are built.
BuchiTreeAutomaton aja_to_tree(const OneAja& a,
                               const BreakpointOptions& options = {});

/// aja_to_tree as an on-demand source; intersecting it with another
/// automaton only builds the states the product reaches.
std::unique_ptr<TreeAutomatonSource> lazy_aja_to_tree(
    const OneAja& a, const BreakpointOptions& options = {});

/// aja_to_tree(a) intersected with the stack tree recognizer.
BuchiTreeAutomaton aja_to_stacktree_automaton(
    const OneAja& a, const BreakpointOptions& options = {});

/// 4^n + 16^n + 1, saturated at the largest representable value.
std::uint64_t breakpoint_state_bound(std::size_t n);

} // namespace vldl
