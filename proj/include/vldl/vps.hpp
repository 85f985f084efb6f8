#pragma once

#include "vldl/alphabet.hpp"
#include "vldl/formula.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vldl {

using StackSymbol = std::uint32_t;
/// Stack symbol 0 is the bottom marker.
inline constexpr StackSymbol bottom = 0;

/// One transition out of a state on a given symbol.  For calls `stack` is
/// the pushed symbol, for returns the popped one (possibly bottom), for
/// locals it is unused.
struct Move {
  StackSymbol stack;
  State to;
  bool operator==(const Move&) const = default;
};

struct Transition {
  State from;
  Symbol symbol;
  StackSymbol stack;
  State to;
};

/// Visibly pushdown system.
class Vps {
public:
  Vps(AlphabetRef sigma, std::vector<std::string> state_names,
      std::vector<std::string> stack_names, State initial,
      const std::vector<Transition>& transitions);

  const AlphabetRef& alphabet() const { return sigma_; }
  std::size_t state_count() const { return state_names_.size(); }
  /// Stack alphabet size including the bottom marker.
  std::size_t stack_count() const { return stack_names_.size(); }
  State initial() const { return initial_; }
  const std::string& state_name(State q) const { return state_names_.at(q); }
  const std::string& stack_name(StackSymbol g) const {
    return stack_names_.at(g);
  }
  std::optional<State> find_state(std::string_view name) const;

  const std::vector<Move>& moves(State q, Symbol a) const {
    return moves_[q * sigma_->size() + a];
  }
  std::vector<Transition> transitions() const;

private:
  AlphabetRef sigma_;
  std::vector<std::string> state_names_;
  std::vector<std::string> stack_names_;
  State initial_;
  std::vector<std::vector<Move>> moves_;
};

/// Testing visibly pushdown automaton: a system with final states and a
/// test formula per state (no formula means the test `true`).
class Tvpa {
public:
  Tvpa(std::string name, Vps system, std::vector<bool> final_states,
       std::vector<Formula> tests);

  const std::string& name() const { return name_; }
  const Vps& system() const { return system_; }
  std::size_t state_count() const { return system_.state_count(); }
  bool is_final(State q) const { return final_[q]; }
  /// nullptr when the state carries no test.
  const Formula& test(State q) const { return tests_[q]; }
  bool has_tests() const;

private:
  std::string name_;
  Vps system_;
  std::vector<bool> final_;
  std::vector<Formula> tests_;
};

struct Configuration {
  State state;
  std::vector<StackSymbol> stack;  // top at the back; bottom is implicit
  auto operator<=>(const Configuration&) const = default;
};

std::vector<Configuration> successors(const Vps& s, const Configuration& cfg,
                                      Symbol a);

struct RunResult {
  State state;
  std::vector<State> trace;
  auto operator<=>(const RunResult&) const = default;
};

/// Every run of the automaton on w from (q0, bottom), as the reached state
/// and the visited states.  Raises ResourceError beyond max_configurations
/// explored configurations.
std::vector<RunResult> run_relation(const Tvpa& a, std::span<const Symbol> w,
                                    State q0,
                                    std::size_t max_configurations = 100000);

/// True when some run of the system reads `steps` letters of alpha.  With
/// steps = |u| + (|Q| + 2)|v| this is the bounded-unrolling trace check.
bool has_run_prefix(const Vps& s, const LassoWord& alpha, std::size_t steps,
                    std::size_t max_configurations = 1000000);
std::size_t trace_check_steps(const Vps& s, const LassoWord& alpha);

/// Result of reading the system text format.  Tests stay unparsed because
/// they may refer to automata that are declared later.
struct ParsedSystem {
  Vps system;
  bool has_final_clause = false;
  std::vector<bool> final_states;
  std::map<State, std::pair<std::string, std::size_t>> test_texts;
};

ParsedSystem parse_system(std::string_view text, const AlphabetRef& sigma,
                          std::size_t first_line = 1);

/// Plain system parse; rejects final clauses and tests.
Vps parse_vps(std::string_view text, const AlphabetRef& sigma);

std::string print_system(const Vps& s);
std::string print_system(const Tvpa& a);

} // namespace vldl
