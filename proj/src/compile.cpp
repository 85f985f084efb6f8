#include "vldl/compile.hpp"

#include "vldl/error.hpp"

#include <map>
#include <tuple>
#include <unordered_map>

namespace vldl {

namespace {

enum class Family : std::uint8_t { Main, Verifier };

/// Main: (q, flag) with x = flag.  Verifier: (q, q'', A) with x = q''.
struct Key {
  Family family;
  bool wait;
  State q;
  State x;
  StackSymbol g;
  auto operator<=>(const Key&) const = default;
};

PosBool direct(State q) { return leaf({Direction::Direct, q, q}); }

/// Shared construction of the box (universal) and diamond (existential)
/// automata; the two differ only in the Boolean connectives and sinks.
class ModalBuilder {
public:
  ModalBuilder(const Tvpa& a, const OneAja& inner,
               const std::vector<std::shared_ptr<const OneAja>>& tests,
               bool universal)
      : a_(a), sigma_(a.system().alphabet()), universal_(universal),
        builder_(sigma_) {
    if (!(*sigma_ == *inner.alphabet()))
      throw InputError("automaton '" + a.name() +
                       "' and its operand use different alphabets");
    if (tests.size() != a.state_count())
      throw std::invalid_argument("one test automaton per state expected");
    top_ = builder_.add_state("top", true);
    reject_ = builder_.add_state("reject", false);
    for (Symbol s = 0; s < sigma_->size(); ++s) {
      builder_.set(top_, s, direct(top_));
      builder_.set(reject_, s, direct(reject_));
    }
    inner_ = &inner;
    inner_offset_ = builder_.embed(inner, "inner.");
    std::map<const OneAja*, State> embedded;
    test_offset_.resize(tests.size());
    for (State q = 0; q < tests.size(); ++q) {
      if (!tests[q])
        continue;
      if (!(*sigma_ == *tests[q]->alphabet()))
        throw InputError("test of automaton '" + a.name() +
                         "' uses a different alphabet");
      auto [it, fresh] = embedded.emplace(tests[q].get(), 0);
      if (fresh)
        it->second = builder_.embed(*tests[q], "test" +
                                                   std::to_string(embedded.size()) +
                                                   ".");
      test_offset_[q] = it->second;
    }
    tests_ = &tests;
  }

  OneAja build(bool eager) {
    const Vps& s = a_.system();
    State init = get({Family::Main, false, s.initial(), 0, 0});
    if (eager) {
      for (int wait = 0; wait < 2; ++wait) {
        for (State q = 0; q < s.state_count(); ++q)
          for (State flag = 0; flag < 2; ++flag)
            get({Family::Main, wait == 1, q, flag, 0});
        for (State q = 0; q < s.state_count(); ++q)
          for (State q2 = 0; q2 < s.state_count(); ++q2)
            for (StackSymbol g = 0; g < s.stack_count(); ++g)
              get({Family::Verifier, wait == 1, q, q2, g});
      }
    }
    while (!pending_.empty()) {
      Key k = pending_.back();
      pending_.pop_back();
      State id = ids_.at(k);
      for (Symbol sym = 0; sym < sigma_->size(); ++sym)
        builder_.set(id, sym, transition(k, sym));
    }
    return builder_.build(init);
  }

private:
  State get(const Key& k) {
    auto it = ids_.find(k);
    if (it != ids_.end())
      return it->second;
    const Vps& s = a_.system();
    std::string name = "(" + s.state_name(k.q);
    if (k.family == Family::Main)
      name += "," + std::to_string(k.x) + ")";
    else
      name += "," + s.state_name(k.x) + "," + s.stack_name(k.g) + ")";
    if (k.wait)
      name += "_wait";
    State id = builder_.add_state(name, universal_ && !k.wait);
    ids_.emplace(k, id);
    pending_.push_back(k);
    return id;
  }

  PosBool initial_transition(const OneAja& aut, State offset, Symbol sym) {
    return shift(aut.delta(aut.initial(), sym), offset);
  }

  /// The obligation "φ' holds here" for final states.
  PosBool chi(State q, Symbol sym) {
    if (a_.is_final(q))
      return initial_transition(*inner_, inner_offset_, sym);
    return direct(universal_ ? top_ : reject_);
  }

  /// Box: entry into the negated test.  Diamond: entry into the test.
  std::optional<PosBool> theta(State q, Symbol sym) {
    if (!(*tests_)[q])
      return std::nullopt;
    return initial_transition(*(*tests_)[q], test_offset_[q], sym);
  }

  /// Conjunction for the box, disjunction for the diamond.
  PosBool along(std::vector<PosBool> parts) {
    if (parts.empty())
      return direct(universal_ ? top_ : reject_);
    return universal_ ? all_of(std::move(parts)) : any_of(std::move(parts));
  }

  /// The dual connective of along.
  PosBool across(std::vector<PosBool> parts) {
    return universal_ ? any_of(std::move(parts)) : all_of(std::move(parts));
  }

  /// A failing test releases the box obligations; the diamond requires the
  /// test to hold.
  PosBool with_test(PosBool core, State q, Symbol sym) {
    auto t = theta(q, sym);
    if (!t)
      return core;
    return across({std::move(core), std::move(*t)});
  }

  PosBool jump_to(State target) {
    return leaf({Direction::Jump, universal_ ? top_ : reject_, target});
  }

  PosBool transition(const Key& k, Symbol sym) {
    if (k.wait) {
      Key plain = k;
      plain.wait = false;
      return direct(get(plain));
    }
    return k.family == Family::Main ? main_transition(k, sym)
                                    : verifier_transition(k, sym);
  }

  PosBool main_transition(const Key& k, Symbol sym) {
    const Vps& s = a_.system();
    const auto& moves = s.moves(k.q, sym);
    std::vector<PosBool> parts{chi(k.q, sym)};
    switch (sigma_->kind(sym)) {
    case SymbolKind::Local:
      for (const auto& m : moves)
        parts.push_back(direct(get({Family::Main, false, m.to, k.x, 0})));
      break;
    case SymbolKind::Call:
      for (const auto& m : moves)
        for (State q2 = 0; q2 < s.state_count(); ++q2)
          parts.push_back(
              across({direct(get({Family::Verifier, false, m.to, q2, m.stack})),
                      jump_to(get({Family::Main, true, q2, k.x, 0}))}));
      for (const auto& m : moves)
        parts.push_back(direct(get({Family::Main, false, m.to, 1, 0})));
      break;
    case SymbolKind::Return:
      if (k.x == 0)
        for (const auto& m : moves)
          if (m.stack == bottom)
            parts.push_back(direct(get({Family::Main, false, m.to, 0, 0})));
      break;
    }
    return with_test(along(std::move(parts)), k.q, sym);
  }

  PosBool verifier_transition(const Key& k, Symbol sym) {
    const Vps& s = a_.system();
    const auto& moves = s.moves(k.q, sym);
    std::vector<PosBool> parts;
    switch (sigma_->kind(sym)) {
    case SymbolKind::Local:
      for (const auto& m : moves)
        parts.push_back(direct(get({Family::Verifier, false, m.to, k.x, k.g})));
      break;
    case SymbolKind::Call:
      for (const auto& m : moves)
        for (State q2 = 0; q2 < s.state_count(); ++q2)
          parts.push_back(across(
              {direct(get({Family::Verifier, false, m.to, q2, m.stack})),
               jump_to(get({Family::Verifier, true, q2, k.x, k.g}))}));
      break;
    case SymbolKind::Return: {
      bool reaches = false;
      for (const auto& m : moves)
        reaches |= m.stack == k.g && m.to == k.x;
      if (!reaches)
        return direct(universal_ ? top_ : reject_);
      auto t = theta(k.q, sym);
      if (t)
        return *t;
      return direct(universal_ ? reject_ : top_);
    }
    }
    if (parts.empty())
      return direct(universal_ ? top_ : reject_);
    return with_test(along(std::move(parts)), k.q, sym);
  }

  const Tvpa& a_;
  AlphabetRef sigma_;
  bool universal_;
  AjaBuilder builder_;
  State top_ = 0;
  State reject_ = 0;
  const OneAja* inner_ = nullptr;
  State inner_offset_ = 0;
  const std::vector<std::shared_ptr<const OneAja>>* tests_ = nullptr;
  std::vector<State> test_offset_;
  std::map<Key, State> ids_;
  std::vector<Key> pending_;
};

class Compiler {
public:
  Compiler(AlphabetRef sigma, const CompileOptions& options)
      : sigma_(std::move(sigma)), options_(options) {}

  std::shared_ptr<const OneAja> run(const Formula& f) {
    auto it = memo_.find(f->id);
    if (it != memo_.end())
      return it->second;
    auto out = std::make_shared<const OneAja>(build(f));
    memo_.emplace(f->id, out);
    return out;
  }

private:
  OneAja build(const Formula& f) {
    switch (f->kind) {
    case FormulaKind::Atom:
      return literal_automaton(sigma_, f->prop, true);
    case FormulaKind::NegAtom:
      return literal_automaton(sigma_, f->prop, false);
    case FormulaKind::And:
      return conjoin(*run(f->left), *run(f->right));
    case FormulaKind::Or:
      return disjoin(*run(f->left), *run(f->right));
    case FormulaKind::Box:
    case FormulaKind::Diamond: {
      const Tvpa& a = *f->automaton;
      if (!(*a.system().alphabet() == *sigma_))
        throw InputError("automaton '" + a.name() +
                         "' uses a different alphabet");
      bool is_box = f->kind == FormulaKind::Box;
      std::vector<std::shared_ptr<const OneAja>> tests(a.state_count());
      for (State q = 0; q < a.state_count(); ++q)
        if (a.test(q))
          tests[q] = run(is_box ? to_nnf(negate(a.test(q)))
                                : to_nnf(a.test(q)));
      auto inner = run(f->left);
      return is_box ? compile_box(a, *inner, tests, options_)
                    : compile_diamond(a, *inner, tests, options_);
    }
    case FormulaKind::Not:
      break;
    }
    throw std::logic_error("formula is not in negation normal form");
  }

  AlphabetRef sigma_;
  CompileOptions options_;
  std::unordered_map<FormulaId, std::shared_ptr<const OneAja>> memo_;
};

} // namespace

OneAja compile(const Formula& f, const AlphabetRef& sigma,
               const CompileOptions& options) {
  Compiler compiler(sigma, options);
  return OneAja(*compiler.run(to_nnf(f)));
}

OneAja compile_box(const Tvpa& a, const OneAja& inner,
                   const std::vector<std::shared_ptr<const OneAja>>& negated_tests,
                   const CompileOptions& options) {
  return ModalBuilder(a, inner, negated_tests, true).build(options.eager);
}

OneAja compile_diamond(const Tvpa& a, const OneAja& inner,
                       const std::vector<std::shared_ptr<const OneAja>>& tests,
                       const CompileOptions& options) {
  return ModalBuilder(a, inner, tests, false).build(options.eager);
}

std::size_t modal_state_bound(const Tvpa& a) {
  const std::size_t q = a.state_count();
  return 2 * (2 * q + q * q * a.system().stack_count());
}

} // namespace vldl
