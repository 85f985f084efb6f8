#include "vldl/breakpoint.hpp"

#include "vldl/state_set.hpp"
#include "vldl/stack_tree.hpp"

#include <limits>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace vldl {

namespace {

/// Copies that have (a) or have not (n) visited an accepting state since
/// the last breakpoint.
struct Pair {
  StateSet a;
  StateSet n;
  bool operator==(const Pair&) const = default;
  bool operator<(const Pair& o) const {
    return a != o.a ? a < o.a : n < o.n;
  }
};

struct PairHash {
  std::size_t operator()(const Pair& p) const {
    std::size_t h = hash_value(p.a);
    boost::hash_combine(h, hash_value(p.n));
    return h;
  }
};

struct StepHash {
  std::size_t operator()(const std::pair<Pair, Symbol>& k) const {
    std::size_t h = PairHash{}(k.first);
    boost::hash_combine(h, k.second);
    return h;
  }
};

/// A continuation of `source` waiting on the summary of `infix`.
struct Registration {
  Pair infix, source, jump;
  bool operator==(const Registration&) const = default;
};

struct RegistrationHash {
  std::size_t operator()(const Registration& r) const {
    std::size_t h = PairHash{}(r.infix);
    boost::hash_combine(h, PairHash{}(r.source));
    boost::hash_combine(h, PairHash{}(r.jump));
    return h;
  }
};

enum class Kind : std::uint8_t { Spine, Verifier, Sink };

struct Key {
  Kind kind;
  Pair current;
  Pair obligation;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = static_cast<std::size_t>(k.kind);
    boost::hash_combine(h, PairHash{}(k.current));
    boost::hash_combine(h, PairHash{}(k.obligation));
    return h;
  }
};

using Profile = StateSet;
/// Direct and jump targets of one choice at a matched call.
using SplitProfile = std::pair<StateSet, StateSet>;

std::size_t weight(const StateSet& s) { return s.count(); }
/// Pairs are disjoint, so this is |a ∪ n| + |n|.
std::size_t weight(const Pair& p) { return p.a.count() + 2 * p.n.count(); }
template <class A, class B>
std::size_t weight(const std::pair<A, B>& p) {
  return weight(p.first) + weight(p.second);
}

/// Targets collected at a matched call: direct and jump parts of the owing
/// (n) and settled (a) copies.
struct Acc {
  StateSet dn, jn, da, ja;
  bool operator<(const Acc& o) const {
    return std::tie(dn, jn, da, ja) < std::tie(o.dn, o.jn, o.da, o.ja);
  }
  bool operator==(const Acc& o) const = default;
};

std::size_t weight(const Acc& x) {
  return x.dn.count() + x.jn.count() + x.da.count() + x.ja.count();
}

bool acc_leq(const Acc& x, const Acc& y) {
  return x.dn.is_subset_of(y.dn) && x.jn.is_subset_of(y.jn) &&
         x.da.is_subset_of(y.da) && x.ja.is_subset_of(y.ja);
}

/// Removes duplicates and every element that dominates another one.
/// Elements are visited by increasing weight, and leq(y, x) implies
/// weight(y) <= weight(x), so each one only needs checking against the
/// elements kept before it.
template <class T>
void keep_minimal(std::vector<T>& xs, bool (*leq)(const T&, const T&)) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::stable_sort(xs.begin(), xs.end(), [](const T& x, const T& y) {
    return weight(x) < weight(y);
  });
  std::vector<T> kept;
  for (const auto& x : xs)
    if (std::none_of(kept.begin(), kept.end(),
                     [&](const T& y) { return leq(y, x); }))
      kept.push_back(x);
  std::sort(kept.begin(), kept.end());
  xs = std::move(kept);
}

bool set_leq(const StateSet& x, const StateSet& y) { return x.is_subset_of(y); }

bool split_leq(const SplitProfile& x, const SplitProfile& y) {
  return x.first.is_subset_of(y.first) && x.second.is_subset_of(y.second);
}

/// x is covered by y: every copy of x is a copy of y, and x owes no more
/// than y.  Acceptance is monotone in this order, so per-letter choices are
/// kept minimal and a verifier accepts any outcome covered by its guess.
bool pair_leq(const Pair& x, const Pair& y) {
  return x.n.is_subset_of(y.n) && (x.a | x.n).is_subset_of(y.a | y.n);
}

bool choice_leq(const std::pair<Pair, Pair>& x,
                const std::pair<Pair, Pair>& y) {
  return pair_leq(x.first, y.first) && pair_leq(x.second, y.second);
}

class Breakpoint : public TreeAutomatonSource {
public:
  Breakpoint(const OneAja& a, const BreakpointOptions& options)
      : a_(a), sigma_(*a_.alphabet()), options_(options), n_(a_.size()),
        final_(n_), direct_cache_(n_ * sigma_.size()),
        split_cache_(n_ * sigma_.size()) {
    for (State q = 0; q < n_; ++q)
      final_[q] = a_.accepting(q);
    StateSet init(n_);
    init.set(a_.initial());
    Pair start = final_[a_.initial()] ? Pair{init, StateSet(n_)}
                                      : Pair{StateSet(n_), init};
    initial_ = state({Kind::Spine, start, empty_pair()});
    sink_ = state({Kind::Sink, empty_pair(), empty_pair()});
  }

  const AlphabetRef& alphabet() const override { return a_.alphabet(); }
  State initial() override { return initial_; }
  bool accepting(State q) override {
    const Key& k = keys_.at(q);
    return k.kind != Kind::Spine || k.current.n.none();
  }
  std::size_t size() const override { return keys_.size(); }
  std::size_t transition_count() const override { return computed_; }
  std::string name(State q) override { return name(keys_.at(q)); }

  const std::vector<TreeTransition>& transitions(State q) override {
    if (!transitions_.at(q)) {
      std::vector<TreeTransition> out;
      const Key k = keys_[q];
      switch (k.kind) {
      case Kind::Sink:
        out.push_back({TreeLabel::bot(), sink_, sink_});
        break;
      case Kind::Spine:
        spine_transitions(out, k.current);
        break;
      case Kind::Verifier:
        verifier_transitions(out, k);
        break;
      }
      computed_ += out.size();
      transitions_[q] = std::move(out);
    }
    return *transitions_[q];
  }

private:
  Pair empty_pair() const { return {StateSet(n_), StateSet(n_)}; }

  State state(const Key& k) {
    auto it = ids_.find(k);
    if (it != ids_.end())
      return it->second;
    if (keys_.size() >= options_.limits.max_states)
      throw_state_cap("aja2tree", options_.limits.max_states);
    State id = static_cast<State>(keys_.size());
    ids_.emplace(k, id);
    keys_.push_back(k);
    transitions_.emplace_back();
    return id;
  }

  std::string set_name(const StateSet& s) const {
    std::string out = "{";
    bool first = true;
    for (auto q : members(s)) {
      if (!first)
        out += ",";
      out += a_.name(q);
      first = false;
    }
    return out + "}";
  }

  std::string name(const Key& k) const {
    switch (k.kind) {
    case Kind::Sink:
      return "q_bot";
    case Kind::Spine:
      return "(" + set_name(k.current.a) + "," + set_name(k.current.n) + ")";
    case Kind::Verifier:
      return "(" + set_name(k.current.a) + "," + set_name(k.current.n) + "," +
             set_name(k.obligation.a) + "," + set_name(k.obligation.n) + ")";
    }
    return {};
  }

  /// Minimal target sets of (q, sym) when every command moves directly.
  const std::vector<Profile>& direct_profiles(State q, Symbol sym) {
    auto& slot = direct_cache_[q * sigma_.size() + sym];
    if (slot)
      return *slot;
    std::unordered_map<const PosBoolNode*, std::vector<Profile>> memo;
    std::function<const std::vector<Profile>&(const PosBool&)> go =
        [&](const PosBool& f) -> const std::vector<Profile>& {
      auto it = memo.find(f.get());
      if (it != memo.end())
        return it->second;
      std::vector<Profile> out;
      if (f->kind == PosBoolNode::Kind::Leaf) {
        StateSet s(n_);
        s.set(f->command.direct);
        out.push_back(s);
      } else if (f->kind == PosBoolNode::Kind::Or) {
        for (const auto& k : f->kids)
          for (const auto& p : go(k))
            out.push_back(p);
      } else {
        out.push_back(StateSet(n_));
        for (const auto& k : f->kids) {
          std::vector<Profile> next;
          for (const auto& x : out)
            for (const auto& y : go(k))
              next.push_back(x | y);
          keep_minimal(next, set_leq);
          out = std::move(next);
        }
      }
      keep_minimal(out, set_leq);
      return memo.emplace(f.get(), std::move(out)).first->second;
    };
    slot = go(a_.delta(q, sym));
    return *slot;
  }

  /// Minimal (direct, jump) target sets of (q, sym) at a matched call.
  const std::vector<SplitProfile>& split_profiles(State q, Symbol sym) {
    auto& slot = split_cache_[q * sigma_.size() + sym];
    if (slot)
      return *slot;
    std::unordered_map<const PosBoolNode*, std::vector<SplitProfile>> memo;
    std::function<const std::vector<SplitProfile>&(const PosBool&)> go =
        [&](const PosBool& f) -> const std::vector<SplitProfile>& {
      auto it = memo.find(f.get());
      if (it != memo.end())
        return it->second;
      std::vector<SplitProfile> out;
      if (f->kind == PosBoolNode::Kind::Leaf) {
        SplitProfile p{StateSet(n_), StateSet(n_)};
        if (f->command.dir == Direction::Direct)
          p.first.set(f->command.direct);
        else
          p.second.set(f->command.jump);
        out.push_back(p);
      } else if (f->kind == PosBoolNode::Kind::Or) {
        for (const auto& k : f->kids)
          for (const auto& p : go(k))
            out.push_back(p);
      } else {
        out.push_back({StateSet(n_), StateSet(n_)});
        for (const auto& k : f->kids) {
          std::vector<SplitProfile> next;
          for (const auto& x : out)
            for (const auto& y : go(k))
              next.push_back({x.first | y.first, x.second | y.second});
          keep_minimal(next, split_leq);
          out = std::move(next);
        }
      }
      keep_minimal(out, split_leq);
      return memo.emplace(f.get(), std::move(out)).first->second;
    };
    slot = go(a_.delta(q, sym));
    return *slot;
  }

  /// N' = T_N \ F and A' = (T_N ∩ F) ∪ (T_A \ N').
  Pair settle(const StateSet& from_n, const StateSet& from_a) const {
    StateSet n = from_n - final_;
    StateSet a = (from_n & final_) | (from_a - n);
    return {a, n};
  }

  static Pair normalize(Pair p) {
    p.a -= p.n;
    return p;
  }

  static Pair join(const Pair& x, const Pair& y) {
    return normalize({x.a | y.a, x.n | y.n});
  }

  /// Successor pairs for a letter read with direct moves only (locals,
  /// returns and unmatched calls).
  const std::vector<Pair>& direct_step(const Pair& p, Symbol sym) {
    auto key = std::make_pair(p, sym);
    auto it = direct_memo_.find(key);
    if (it != direct_memo_.end())
      return it->second;
    // (T_N, T_A) combinations, folded state by state.
    std::vector<std::pair<StateSet, StateSet>> acc{{StateSet(n_), StateSet(n_)}};
    auto fold = [&](const StateSet& from, bool owing) {
      for (auto q : members(from)) {
        std::vector<std::pair<StateSet, StateSet>> next;
        for (const auto& [tn, ta] : acc)
          for (const auto& prof : direct_profiles(q, sym))
            next.emplace_back(owing ? tn | prof : tn, owing ? ta : ta | prof);
        keep_minimal(next, split_leq);
        acc = std::move(next);
      }
    };
    fold(p.n, true);
    fold(p.a, false);
    std::vector<Pair> out;
    for (const auto& [tn, ta] : acc)
      out.push_back(settle(tn, ta));
    keep_minimal(out, pair_leq);
    return direct_memo_.emplace(key, std::move(out)).first->second;
  }

  /// (direct pair, jump pair) choices at a matched call.
  const std::vector<std::pair<Pair, Pair>>& call_step(const Pair& p,
                                                      Symbol sym) {
    auto key = std::make_pair(p, sym);
    auto it = call_memo_.find(key);
    if (it != call_memo_.end())
      return it->second;
    std::vector<Acc> acc{{StateSet(n_), StateSet(n_), StateSet(n_), StateSet(n_)}};
    auto fold = [&](const StateSet& from, bool owing) {
      for (auto q : members(from)) {
        std::vector<Acc> next;
        for (const auto& x : acc)
          for (const auto& [d, j] : split_profiles(q, sym)) {
            Acc y = x;
            if (owing) {
              y.dn |= d;
              y.jn |= j;
            } else {
              y.da |= d;
              y.ja |= j;
            }
            next.push_back(y);
          }
        keep_minimal(next, acc_leq);
        acc = std::move(next);
      }
    };
    fold(p.n, true);
    fold(p.a, false);
    std::vector<std::pair<Pair, Pair>> out;
    for (const auto& x : acc)
      out.emplace_back(settle(x.dn, x.da), settle(x.jn, x.ja));
    keep_minimal(out, choice_leq);
    return call_memo_.emplace(key, std::move(out)).first->second;
  }

  /// Outcomes at the matching return of copies started at the first
  /// position of a well-matched infix.
  const std::vector<Pair>& guesses(const Pair& start) {
    if (options_.guesses == GuessMode::Exhaustive)
      return all_pairs();
    request(start);
    run_summaries();
    return reach_list_.at(start);
  }

  const std::vector<Pair>& all_pairs() {
    if (all_pairs_.empty()) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < n_; ++i)
        total *= 3;
      for (std::size_t code = 0; code < total; ++code) {
        Pair p = empty_pair();
        std::size_t c = code;
        for (std::size_t q = 0; q < n_; ++q, c /= 3) {
          if (c % 3 == 1)
            p.a.set(q);
          else if (c % 3 == 2)
            p.n.set(q);
        }
        all_pairs_.push_back(p);
      }
    }
    return all_pairs_;
  }

  // Summary computation: reach(P) is the set of pairs reachable from P over
  // well-matched words.  A nested call registers a continuation on the
  // summary of its infix.
  struct Continuation {
    Pair source;
    Pair jump;
  };

  void request(const Pair& p) {
    if (reach_.count(p))
      return;
    reach_[p];
    reach_list_[p];
    add_reach(p, p);
  }

  void add_reach(const Pair& source, const Pair& x) {
    if (reach_[source].insert(x).second) {
      reach_list_[source].push_back(x);
      work_.emplace_back(source, x);
    }
  }

  void run_summaries() {
    while (!work_.empty()) {
      auto [source, x] = work_.back();
      work_.pop_back();
      for (Symbol sym = 0; sym < sigma_.size(); ++sym) {
        if (sigma_.is_local(sym)) {
          for (const auto& y : direct_step(x, sym))
            add_reach(source, y);
        } else if (sigma_.is_call(sym)) {
          for (const auto& [d, j] : call_step(x, sym)) {
            request(d);
            Continuation c{source, j};
            if (!registered_.insert({d, source, j}).second)
              continue;
            continuations_[d].push_back(c);
            // Snapshot: outcomes found later are handled when they arrive.
            auto known = reach_list_.at(d);
            for (const auto& g : known)
              resume(c, g);
          }
        }
      }
      // x is an outcome of the infix started at source.
      auto it = continuations_.find(source);
      if (it != continuations_.end()) {
        auto conts = it->second;
        for (const auto& c : conts)
          resume(c, x);
      }
    }
  }

  void resume(const Continuation& c, const Pair& outcome) {
    Pair at_return = join(c.jump, outcome);
    for (Symbol r = 0; r < sigma_.size(); ++r)
      if (sigma_.is_return(r))
        for (const auto& y : direct_step(at_return, r))
          add_reach(c.source, y);
  }

  void spine_transitions(std::vector<TreeTransition>& out, Pair p) {
    if (p.n.none())
      p = {p.a & final_, p.a - final_};
    const Pair none = empty_pair();
    for (Symbol sym = 0; sym < sigma_.size(); ++sym) {
      const TreeLabel label = TreeLabel::of(sym);
      for (const auto& next : direct_step(p, sym)) {
        State s = state({Kind::Spine, next, none});
        if (sigma_.is_call(sym))
          out.push_back({label, sink_, s});
        else
          out.push_back({label, s, sink_});
      }
      if (!sigma_.is_call(sym))
        continue;
      for (const auto& [d, j] : call_step(p, sym))
        for (const auto& g : guesses(d)) {
          State left = state({Kind::Spine, join(j, g), none});
          State right = state({Kind::Verifier, d, g});
          out.push_back({label, left, right});
        }
    }
  }

  void verifier_transitions(std::vector<TreeTransition>& out, const Key& k) {
    if (pair_leq(k.current, k.obligation))
      out.push_back({TreeLabel::bot(), sink_, sink_});
    for (Symbol sym = 0; sym < sigma_.size(); ++sym) {
      const TreeLabel label = TreeLabel::of(sym);
      if (!sigma_.is_call(sym)) {
        for (const auto& next : direct_step(k.current, sym))
          out.push_back(
              {label, state({Kind::Verifier, next, k.obligation}), sink_});
        continue;
      }
      for (const auto& [d, j] : call_step(k.current, sym))
        for (const auto& g : guesses(d)) {
          State left = state({Kind::Verifier, join(j, g), k.obligation});
          State right = state({Kind::Verifier, d, g});
          out.push_back({label, left, right});
        }
    }
  }

  const OneAja a_;
  const PushdownAlphabet& sigma_;
  BreakpointOptions options_;
  std::size_t n_;
  StateSet final_;
  std::vector<std::optional<std::vector<Profile>>> direct_cache_;
  std::vector<std::optional<std::vector<SplitProfile>>> split_cache_;
  std::vector<Pair> all_pairs_;
  std::unordered_map<Pair, std::unordered_set<Pair, PairHash>, PairHash> reach_;
  std::unordered_map<Pair, std::vector<Pair>, PairHash> reach_list_;
  std::unordered_map<Pair, std::vector<Continuation>, PairHash> continuations_;
  std::vector<std::pair<Pair, Pair>> work_;
  std::unordered_set<Registration, RegistrationHash> registered_;
  std::unordered_map<std::pair<Pair, Symbol>, std::vector<Pair>, StepHash>
      direct_memo_;
  std::unordered_map<std::pair<Pair, Symbol>,
                     std::vector<std::pair<Pair, Pair>>, StepHash>
      call_memo_;
  std::unordered_map<Key, State, KeyHash> ids_;
  std::vector<Key> keys_;
  std::vector<std::optional<std::vector<TreeTransition>>> transitions_;
  State initial_ = 0;
  State sink_ = 0;
  std::size_t computed_ = 0;
};

} // namespace

std::unique_ptr<TreeAutomatonSource> lazy_aja_to_tree(
    const OneAja& a, const BreakpointOptions& options) {
  return std::make_unique<Breakpoint>(a, options);
}

BuchiTreeAutomaton aja_to_tree(const OneAja& a,
                               const BreakpointOptions& options) {
  Breakpoint source(a, options);
  return materialize(source, options.limits);
}

BuchiTreeAutomaton aja_to_stacktree_automaton(
    const OneAja& a, const BreakpointOptions& options) {
  Breakpoint source(a, options);
  auto recognizer = stack_tree_recognizer(a.alphabet());
  ExplicitSource st(recognizer);
  return intersect(source, st, options.limits);
}

std::uint64_t breakpoint_state_bound(std::size_t n) {
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  if (2 * n >= 32)
    return cap;
  const std::uint64_t four = std::uint64_t{1} << (2 * n);
  return four + four * four + 1;
}

} // namespace vldl
