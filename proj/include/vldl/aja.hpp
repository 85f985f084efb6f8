#pragma once

#include "vldl/alphabet.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vldl {

enum class Direction : std::uint8_t { Direct, Jump };

/// (direction, direct target, jump target).
struct Command {
  Direction dir;
  State direct;
  State jump;
  auto operator<=>(const Command&) const = default;
};

struct PosBoolNode;
/// Positive Boolean formula over commands; no constants.
using PosBool = std::shared_ptr<const PosBoolNode>;

struct PosBoolNode {
  enum class Kind : std::uint8_t { Leaf, And, Or } kind;
  Command command;            // Leaf
  std::vector<PosBool> kids;  // And, Or (at least two)
};

PosBool leaf(Command c);
/// Conjunction of the parts; a single part is returned as is.  Raises
/// std::invalid_argument for an empty list.
PosBool all_of(std::vector<PosBool> parts);
PosBool any_of(std::vector<PosBool> parts);
/// Adds offset to every target state.
PosBool shift(const PosBool& f, State offset);

/// ⊆-minimal sets of commands satisfying f; each set sorted, the list
/// sorted.
std::vector<std::vector<Command>> minimal_models(const PosBool& f);

/// One-way alternating jump automaton with Büchi acceptance.
class OneAja {
public:
  OneAja(AlphabetRef sigma, std::vector<std::string> names,
         std::vector<PosBool> delta, State initial,
         std::vector<bool> accepting);
  OneAja(const OneAja& other);
  OneAja& operator=(const OneAja&) = delete;

  const AlphabetRef& alphabet() const { return sigma_; }
  std::size_t size() const { return names_.size(); }
  State initial() const { return initial_; }
  bool accepting(State q) const { return accepting_[q]; }
  const std::string& name(State q) const { return names_[q]; }
  const PosBool& delta(State q, Symbol a) const {
    return delta_[q * sigma_->size() + a];
  }
  /// Memoized minimal_models(delta(q, a)).
  const std::vector<std::vector<Command>>& models(State q, Symbol a) const;

  /// Transition table as text.
  std::string dump() const;

private:
  AlphabetRef sigma_;
  std::vector<std::string> names_;
  std::vector<PosBool> delta_;
  State initial_;
  std::vector<bool> accepting_;
  mutable std::mutex models_mutex_;
  mutable std::vector<std::optional<std::vector<std::vector<Command>>>>
      models_;
};

/// Incremental construction of a 1-AJA, with embedding of existing ones.
class AjaBuilder {
public:
  explicit AjaBuilder(AlphabetRef sigma) : sigma_(std::move(sigma)) {}

  State add_state(std::string name, bool accepting);
  void set(State q, Symbol a, PosBool f);
  bool is_set(State q, Symbol a) const;
  std::size_t size() const { return names_.size(); }
  /// Copies all states of a; returns the offset of its states.
  State embed(const OneAja& a, const std::string& prefix);
  OneAja build(State initial) const;

private:
  AlphabetRef sigma_;
  std::vector<std::string> names_;
  std::vector<bool> accepting_;
  std::vector<PosBool> delta_;
};

std::string to_string(const PosBool& f, const OneAja* names = nullptr);

/// (matching return, jump target) for a jump at a matched call, otherwise
/// (i + 1, direct target).
std::pair<Position, State> apply_command(const PushdownAlphabet& sigma,
                                         const LassoWord& alpha, Position i,
                                         const Command& c);

/// Fresh non-accepting initial state whose transitions are the conjunction
/// (disjunction) of both initial transitions; |A1| + |A2| + 1 states.
OneAja conjoin(const OneAja& a1, const OneAja& a2);
OneAja disjoin(const OneAja& a1, const OneAja& a2);

/// Checks whether the first letter carries (or lacks) prop.  Three states:
/// the initial one, an accepting sink and a rejecting sink.
OneAja literal_automaton(const AlphabetRef& sigma, const std::string& prop,
                         bool positive);

/// Acceptance on a lasso, decided by a Büchi game over (position class,
/// state) where the Automaton player resolves disjunctions and the
/// Pathfinder resolves conjunctions.
bool lasso_accepts(const OneAja& a, const LassoWord& alpha);

/// Same decision with the Automaton player choosing a minimal model and the
/// Pathfinder a command of it; exponential in the formula size.
bool lasso_accepts_by_models(const OneAja& a, const LassoWord& alpha);

/// Truncation of an accepting run DAG to the positions below `levels`.
struct RunDag {
  std::vector<std::pair<Position, State>> vertices;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};
std::optional<RunDag> accepting_run(const OneAja& a, const LassoWord& alpha,
                                    Position levels);

} // namespace vldl
