#include "vldl/oracle.hpp"

#include "vldl/breakpoint.hpp"
#include "vldl/compile.hpp"
#include "vldl/error.hpp"
#include "vldl/stack_tree.hpp"

#include <algorithm>

namespace vldl {

namespace {

/// Rotation k of the period such that v[k..] v[..k] is well-matched.
std::optional<std::size_t> well_matched_rotation(const PushdownAlphabet& sigma,
                                                 const FiniteWord& v) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    FiniteWord w(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    w.insert(w.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    if (is_well_matched(sigma, w))
      return k;
  }
  return std::nullopt;
}

} // namespace

bool oracle_supports(const PushdownAlphabet& sigma, const LassoWord& alpha) {
  return well_matched_rotation(sigma, alpha.period()).has_value();
}

Oracle::Oracle(AlphabetRef sigma, const LassoWord& alpha,
               const OracleOptions& options)
    : sigma_(std::move(sigma)), options_(options) {
  const auto& v = alpha.period();
  auto k = well_matched_rotation(*sigma_, v);
  if (!k)
    throw UnsupportedError("the oracle needs a lasso whose period can be "
                           "rotated into a well-matched word: " +
                           format_lasso(*sigma_, alpha));
  prefix_ = alpha.prefix();
  prefix_.insert(prefix_.end(), v.begin(),
                 v.begin() + static_cast<std::ptrdiff_t>(*k));
  period_.assign(v.begin() + static_cast<std::ptrdiff_t>(*k), v.end());
  period_.insert(period_.end(), v.begin(),
                 v.begin() + static_cast<std::ptrdiff_t>(*k));
}

Symbol Oracle::at(Position i) const {
  if (i < prefix_.size())
    return prefix_[i];
  return period_[(i - prefix_.size()) % period_.size()];
}

Position Oracle::position_class(Position i) const {
  if (i < prefix_.size())
    return i;
  return prefix_.size() + (i - prefix_.size()) % period_.size();
}

bool Oracle::eval(const Formula& f, Position i) {
  const Position cls = position_class(i);
  auto key = std::make_pair(f->id, cls);
  auto it = memo_.find(key);
  if (it != memo_.end())
    return it->second;
  bool value = false;
  switch (f->kind) {
  case FormulaKind::Atom:
    value = sigma_->has_prop(at(cls), f->prop);
    break;
  case FormulaKind::NegAtom:
    value = !sigma_->has_prop(at(cls), f->prop);
    break;
  case FormulaKind::Not:
    value = !eval(f->left, cls);
    break;
  case FormulaKind::And:
    value = eval(f->left, cls) && eval(f->right, cls);
    break;
  case FormulaKind::Or:
    value = eval(f->left, cls) || eval(f->right, cls);
    break;
  case FormulaKind::Diamond:
  case FormulaKind::Box: {
    if (!(*f->automaton->system().alphabet() == *sigma_))
      throw InputError("automaton '" + f->automaton->name() +
                       "' uses a different alphabet");
    const bool universal = f->kind == FormulaKind::Box;
    value = universal;
    for (Position target : reach(*f->automaton, cls))
      if (eval(f->left, target) != universal) {
        value = !universal;
        break;
      }
    break;
  }
  }
  memo_.emplace(key, value);
  return value;
}

const std::set<Position>& Oracle::reach(const Tvpa& a, Position i) {
  const Position cls = position_class(i);
  auto key = std::make_pair(&a, cls);
  if (auto it = reach_.find(key); it != reach_.end())
    return it->second;

  const Vps& s = a.system();
  const std::size_t p = prefix_.size();
  const std::size_t l = period_.size();
  std::set<Position> out;
  std::size_t explored = 0;
  auto count = [&] {
    if (++explored > options_.max_configurations)
      throw ResourceError("oracle", "more than " +
                                        std::to_string(options_.max_configurations) +
                                        " run configurations");
  };
  // A configuration is usable when its test holds; final states then end
  // a run at this position.
  auto visit = [&](Position pos, State q) {
    if (a.test(q) && !eval(a.test(q), pos))
      return false;
    if (a.is_final(q))
      out.insert(position_class(pos));
    return true;
  };

  // Phase 1: explicit stacks up to the first period boundary.
  const Position boundary =
      cls <= p ? p : p + ((cls - p + l - 1) / l) * l;
  using Stack = std::vector<StackSymbol>;
  std::set<std::pair<State, Stack>> at_boundary;
  std::set<std::tuple<Position, State, Stack>> seen;
  std::vector<std::tuple<Position, State, Stack>> todo{{cls, s.initial(), {}}};
  while (!todo.empty()) {
    auto [pos, q, stack] = todo.back();
    todo.pop_back();
    if (pos == boundary) {
      at_boundary.emplace(q, stack);
      continue;
    }
    if (!seen.emplace(pos, q, stack).second)
      continue;
    count();
    if (!visit(pos, q))
      continue;
    for (const auto& cfg : successors(s, {q, stack}, at(pos)))
      todo.emplace_back(pos + 1, cfg.state, cfg.stack);
  }

  // Phase 2: the period is well-matched, so the stack below the boundary
  // is never popped again and only the part above it is tracked.
  std::set<std::tuple<std::size_t, State, Stack>> seen2;
  std::vector<std::tuple<std::size_t, State, Stack>> todo2;
  for (const auto& [q, stack] : at_boundary)
    todo2.emplace_back(0, q, Stack{});
  while (!todo2.empty()) {
    auto [offset, q, local] = todo2.back();
    todo2.pop_back();
    if (!seen2.emplace(offset, q, local).second)
      continue;
    count();
    const Position pos = boundary + offset;
    if (!visit(pos, q))
      continue;
    const Symbol sym = period_[offset];
    const std::size_t next = (offset + 1) % l;
    for (const auto& m : s.moves(q, sym)) {
      Stack after = local;
      switch (sigma_->kind(sym)) {
      case SymbolKind::Local:
        break;
      case SymbolKind::Call:
        after.push_back(m.stack);
        break;
      case SymbolKind::Return:
        if (after.empty())
          throw std::logic_error("return below a well-matched boundary");
        if (after.back() != m.stack)
          continue;
        after.pop_back();
        break;
      }
      todo2.emplace_back(next, m.to, std::move(after));
    }
  }
  return reach_.emplace(key, std::move(out)).first->second;
}

bool eval_lasso(const Formula& f, const AlphabetRef& sigma,
                const LassoWord& alpha, const OracleOptions& options) {
  if (test_nesting(f) > options.max_test_nesting)
    throw UnsupportedError("test nesting " + std::to_string(test_nesting(f)) +
                           " exceeds the oracle bound " +
                           std::to_string(options.max_test_nesting));
  Oracle oracle(sigma, alpha, options);
  return oracle.eval(f, 0);
}

namespace {

struct Verdicts {
  bool oracle;
  bool word;
  bool tree;
  bool agree() const { return oracle == word && word == tree; }
};

class Checker {
public:
  Checker(const AlphabetRef& sigma, const OracleOptions& options)
      : sigma_(sigma), options_(options) {}

  Verdicts check(const Formula& f, const LassoWord& alpha) {
    auto& c = compiled(f);
    return {eval_lasso(f, sigma_, alpha, options_),
            lasso_accepts(*c.first, alpha),
            tree_accepts(*c.second, encode_lasso(*sigma_, alpha))};
  }

private:
  using Compiled = std::pair<std::unique_ptr<OneAja>,
                             std::unique_ptr<TreeAutomatonSource>>;

  /// Membership in the product with the stack tree recognizer, decided
  /// per operand; only the states the tree visits are built.
  bool tree_accepts(TreeAutomatonSource& t, const RegularTree& tree) {
    return contains(recognizer_, tree) && contains(t, tree);
  }

  Compiled& compiled(const Formula& f) {
    auto it = cache_.find(f->id);
    if (it == cache_.end()) {
      auto a = std::make_unique<OneAja>(compile(f, sigma_));
      auto t = lazy_aja_to_tree(*a);
      it = cache_.emplace(f->id, Compiled{std::move(a), std::move(t)}).first;
    }
    return it->second;
  }

  AlphabetRef sigma_;
  OracleOptions options_;
  BuchiTreeAutomaton recognizer_ = stack_tree_recognizer(sigma_);
  std::map<FormulaId, Compiled> cache_;
};

} // namespace

CrossCheckReport cross_check(const std::vector<Formula>& formulas,
                             const std::vector<LassoWord>& lassos,
                             const AlphabetRef& sigma,
                             const OracleOptions& options) {
  CrossCheckReport report;
  Checker checker(sigma, options);
  for (const auto& f : formulas) {
    for (const auto& alpha : lassos) {
      ++report.pairs;
      auto v = checker.check(f, alpha);
      if (v.agree())
        continue;
      // Smallest subformula that still disagrees on alpha.
      auto subs = closure(f);
      std::stable_sort(subs.begin(), subs.end(),
                       [](const Formula& x, const Formula& y) {
                         return to_string(x).size() < to_string(y).size();
                       });
      Formula culprit = f;
      Verdicts culprit_verdicts = v;
      for (const auto& g : subs) {
        auto w = checker.check(g, alpha);
        if (!w.agree()) {
          culprit = g;
          culprit_verdicts = w;
          break;
        }
      }
      report.disagreements.push_back(
          {to_string(culprit), format_lasso(*sigma, alpha),
           culprit_verdicts.oracle, culprit_verdicts.word,
           culprit_verdicts.tree});
    }
  }
  return report;
}

} // namespace vldl
