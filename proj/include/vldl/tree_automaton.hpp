#pragma once

#include "vldl/alphabet.hpp"
#include "vldl/game.hpp"
#include "vldl/tree.hpp"

#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace vldl {

/// Caps on constructed state spaces; read from VLDL_MAX_STATES and
/// VLDL_MAX_GAME_VERTICES, default 10^6 each.
struct Limits {
  std::size_t max_states = 1000000;
  std::size_t max_game_vertices = 1000000;
  static Limits from_env();
};

struct TreeTransition {
  TreeLabel label;
  State left;
  State right;
  auto operator<=>(const TreeTransition&) const = default;
};

/// Nondeterministic Büchi automaton over binary trees labelled by symbols
/// of an alphabet or bot.
class BuchiTreeAutomaton {
public:
  explicit BuchiTreeAutomaton(AlphabetRef sigma) : sigma_(std::move(sigma)) {}

  State add_state(bool accepting, std::string name = {});
  void add_transition(State from, TreeLabel label, State left, State right);
  void set_initial(State q) { initial_ = q; }
  void set_name(State q, std::string name) { names_[q] = std::move(name); }

  const AlphabetRef& alphabet() const { return sigma_; }
  std::size_t size() const { return accepting_.size(); }
  State initial() const { return initial_; }
  bool accepting(State q) const { return accepting_[q]; }
  const std::vector<TreeTransition>& transitions(State q) const {
    return trans_[q];
  }
  std::size_t transition_count() const;
  const std::string& name(State q) const { return names_[q]; }

  std::string to_dot() const;

private:
  AlphabetRef sigma_;
  std::vector<bool> accepting_;
  std::vector<std::vector<TreeTransition>> trans_;
  std::vector<std::string> names_;
  State initial_ = 0;
};

/// Forward exploration of a state space keyed by arbitrary values.  New
/// keys become states of the target automaton and are queued.
template <class Key, class Hash = std::hash<Key>>
class LazyStateSpace {
public:
  LazyStateSpace(BuchiTreeAutomaton& out, std::string stage,
                 std::size_t max_states)
      : out_(out), stage_(std::move(stage)), max_states_(max_states) {}

  State get(const Key& key, bool accepting) {
    auto it = ids_.find(key);
    if (it != ids_.end())
      return it->second;
    if (keys_.size() >= max_states_)
      throw_cap();
    State q = out_.add_state(accepting);
    ids_.emplace(key, q);
    keys_.push_back(key);
    queue_.push_back(q);
    return q;
  }

  bool next(State& q) {
    if (queue_.empty())
      return false;
    q = queue_.front();
    queue_.pop_front();
    return true;
  }

  const Key& key(State q) const { return keys_[q]; }
  std::size_t size() const { return keys_.size(); }

private:
  [[noreturn]] void throw_cap() const;

  BuchiTreeAutomaton& out_;
  std::string stage_;
  std::size_t max_states_;
  std::unordered_map<Key, State, Hash> ids_;
  std::vector<Key> keys_;
  std::deque<State> queue_;
};

[[noreturn]] void throw_state_cap(const std::string& stage, std::size_t cap);

template <class Key, class Hash>
void LazyStateSpace<Key, Hash>::throw_cap() const {
  throw_state_cap(stage_, max_states_);
}

/// Tree automaton whose states and transitions may be produced on demand.
/// State 0 is not special; states are numbered as they are created.
class TreeAutomatonSource {
public:
  virtual ~TreeAutomatonSource() = default;
  virtual const AlphabetRef& alphabet() const = 0;
  virtual State initial() = 0;
  virtual bool accepting(State q) = 0;
  /// Transitions of q; may create successor states, which invalidates
  /// references returned earlier.
  virtual const std::vector<TreeTransition>& transitions(State q) = 0;
  virtual std::string name(State q) = 0;
  /// Number of states created so far.
  virtual std::size_t size() const = 0;
  /// Number of transitions computed so far.
  virtual std::size_t transition_count() const = 0;
};

/// Source view of an existing automaton.
class ExplicitSource : public TreeAutomatonSource {
public:
  explicit ExplicitSource(const BuchiTreeAutomaton& t) : t_(t) {}
  const AlphabetRef& alphabet() const override { return t_.alphabet(); }
  State initial() override { return t_.initial(); }
  bool accepting(State q) override { return t_.accepting(q); }
  const std::vector<TreeTransition>& transitions(State q) override {
    return t_.transitions(q);
  }
  std::string name(State q) override { return t_.name(q); }
  std::size_t size() const override { return t_.size(); }
  std::size_t transition_count() const override {
    return t_.transition_count();
  }

private:
  const BuchiTreeAutomaton& t_;
};

/// All states reachable from the initial state of a source.
BuchiTreeAutomaton materialize(TreeAutomatonSource& source,
                               const Limits& limits = Limits::from_env());

/// Product with a two-phase flag; at most 2 |T1| |T2| states.  Only the
/// reachable part of the product is built, so lazy sources are explored
/// only as far as the other operand allows.
BuchiTreeAutomaton intersect(TreeAutomatonSource& t1, TreeAutomatonSource& t2,
                             const Limits& limits = Limits::from_env());
BuchiTreeAutomaton intersect(const BuchiTreeAutomaton& t1,
                             const BuchiTreeAutomaton& t2,
                             const Limits& limits = Limits::from_env());

/// Automaton vertices are states (index = state), Pathfinder vertices are
/// transitions; accepting vertices are the accepting states.
BuchiGame emptiness_game(const BuchiTreeAutomaton& t,
                         const Limits& limits = Limits::from_env());

bool is_empty(const BuchiTreeAutomaton& t,
              const Limits& limits = Limits::from_env());

/// A regular tree accepted by t, read off a memoryless winning strategy.
std::optional<RegularTree> witness(const BuchiTreeAutomaton& t,
                                   const Limits& limits = Limits::from_env());

/// Membership of the unfolding of a regular tree.
bool contains(const BuchiTreeAutomaton& t, const RegularTree& tree,
              const Limits& limits = Limits::from_env());
/// Membership on a source; only the states the tree visits are explored.
bool contains(TreeAutomatonSource& t, const RegularTree& tree,
              const Limits& limits = Limits::from_env());

} // namespace vldl
