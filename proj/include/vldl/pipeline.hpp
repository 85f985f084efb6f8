#pragma once

#include "vldl/breakpoint.hpp"
#include "vldl/compile.hpp"
#include "vldl/formula.hpp"
#include "vldl/tree_automaton.hpp"
#include "vldl/vps.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vldl {

/// Tree automaton accepting the stack trees of the traces of s: all states
/// of the transition families are accepting, and the result is already
/// intersected with the stack tree recognizer.
BuchiTreeAutomaton vps_to_tree(const Vps& s,
                               const Limits& limits = Limits::from_env());

/// |Q| + |Q|^2 + |Q||Gamma| + |Q|^2|Gamma| + 1.
std::size_t vps_tree_state_bound(const Vps& s);

enum class Answer : std::uint8_t { Satisfiable, Unsatisfiable, Holds, Violated };

const char* answer_name(Answer a);

struct StageStats {
  std::string stage;
  std::size_t states = 0;
  std::size_t transitions = 0;
  double seconds = 0;
};

struct Verdict {
  Answer answer = Answer::Unsatisfiable;
  /// Model (Satisfiable) or counterexample (Violated).
  std::optional<LassoWord> word;
  std::size_t formula_size = 0;
  std::size_t system_states = 0;
  std::vector<StageStats> stages;
  double seconds = 0;

  /// Size of the automaton of the named stage, or 0 when absent.
  std::size_t states_of(const std::string& stage) const;
};

struct PipelineOptions {
  Limits limits = Limits::from_env();
  GuessMode guesses = GuessMode::Reachable;
  CompileOptions compile;
  /// Called with (stage, DOT text) for every intermediate tree automaton.
  std::function<void(const std::string&, const std::string&)> dump;
};

/// Satisfiability by emptiness of the tree automaton of compile(f).
Verdict satisfiable(const Formula& f, const AlphabetRef& sigma,
                    const PipelineOptions& options = {});

/// Model checking: every trace of s satisfies f iff the traces of s and the
/// models of !f share no stack tree.  Raises InputError when the automata
/// of f and s use different alphabets.
Verdict model_check(const Vps& s, const Formula& f,
                    const PipelineOptions& options = {});

} // namespace vldl
