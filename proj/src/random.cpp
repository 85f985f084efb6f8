#include "vldl/random.hpp"

#include "vldl/stack_tree.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace vldl {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs.at(uniform(rng, 0, xs.size() - 1));
}

} // namespace

AlphabetRef sample_alphabet() {
  static const AlphabetRef sigma = std::make_shared<const PushdownAlphabet>(
      PushdownAlphabet::parse("calls: c; returns: r; locals: a, b; "
                              "props c = {p}; props a = {p}; props b = {q};"));
  return sigma;
}

FiniteWord random_word(const PushdownAlphabet& sigma, Rng& rng,
                       std::size_t length) {
  FiniteWord w;
  for (std::size_t i = 0; i < length; ++i)
    w.push_back(static_cast<Symbol>(uniform(rng, 0, sigma.size() - 1)));
  return w;
}

FiniteWord random_well_matched(const PushdownAlphabet& sigma, Rng& rng,
                               std::size_t length) {
  const auto calls = sigma.of_kind(SymbolKind::Call);
  const auto returns = sigma.of_kind(SymbolKind::Return);
  const auto locals = sigma.of_kind(SymbolKind::Local);
  const bool nesting = !calls.empty() && !returns.empty();
  if (locals.empty() && (length % 2 == 1 || !nesting))
    throw std::invalid_argument("no well-matched word of length " +
                                std::to_string(length));
  // A suffix of r letters can close o open calls.
  auto feasible = [&](std::size_t r, std::size_t o) {
    return o <= r && (!locals.empty() || ((r - o) % 2 == 0 && (nesting || r == 0)));
  };
  FiniteWord w;
  std::size_t open = 0;
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t left = length - i;
    std::vector<int> options;
    if (!locals.empty() && feasible(left - 1, open))
      options.push_back(0);
    if (nesting && feasible(left - 1, open + 1))
      options.push_back(1);
    if (nesting && open > 0 && feasible(left - 1, open - 1))
      options.push_back(2);
    if (options.empty())
      throw std::logic_error("well-matched word generation got stuck");
    switch (pick(rng, options)) {
    case 0:
      w.push_back(pick(rng, locals));
      break;
    case 1:
      w.push_back(pick(rng, calls));
      ++open;
      break;
    default:
      w.push_back(pick(rng, returns));
      --open;
      break;
    }
  }
  return w;
}

LassoWord random_lasso(const PushdownAlphabet& sigma, Rng& rng,
                       std::size_t max_prefix, std::size_t max_period) {
  auto u = random_word(sigma, rng, uniform(rng, 0, max_prefix));
  auto v = random_word(sigma, rng, uniform(rng, 1, max_period));
  return LassoWord(std::move(u), std::move(v));
}

LassoWord random_restricted_lasso(const PushdownAlphabet& sigma, Rng& rng,
                                  std::size_t max_prefix,
                                  std::size_t max_period) {
  auto u = random_word(sigma, rng, uniform(rng, 0, max_prefix));
  std::size_t len = uniform(rng, 1, max_period);
  if (sigma.of_kind(SymbolKind::Local).empty())
    len = std::max<std::size_t>(2, len - len % 2);
  auto v = random_well_matched(sigma, rng, len);
  return LassoWord(std::move(u), std::move(v));
}

OneAja random_aja(const AlphabetRef& sigma, Rng& rng, std::size_t max_states) {
  const std::size_t n = uniform(rng, 1, max_states);
  AjaBuilder b(sigma);
  for (std::size_t q = 0; q < n; ++q)
    b.add_state("q" + std::to_string(q), chance(rng, 0.5));
  auto state = [&] { return static_cast<State>(uniform(rng, 0, n - 1)); };
  std::function<PosBool(int)> formula = [&](int depth) {
    if (depth == 0 || chance(rng, 0.45)) {
      Direction dir = chance(rng, 0.35) ? Direction::Jump : Direction::Direct;
      return leaf({dir, state(), state()});
    }
    std::vector<PosBool> parts{formula(depth - 1), formula(depth - 1)};
    return chance(rng, 0.5) ? all_of(parts) : any_of(parts);
  };
  for (State q = 0; q < n; ++q)
    for (Symbol a = 0; a < sigma->size(); ++a)
      b.set(q, a, formula(2));
  return b.build(0);
}

TvpaRef random_tvpa(const AlphabetRef& sigma, Rng& rng, std::size_t max_states,
                    const std::vector<Formula>& tests, double test_rate,
                    const std::string& name) {
  const std::size_t n = uniform(rng, 1, max_states);
  std::vector<std::string> states;
  for (std::size_t q = 0; q < n; ++q)
    states.push_back("s" + std::to_string(q));
  const std::vector<std::string> stack{"bot", "A", "B"};
  std::vector<Transition> transitions;
  for (State q = 0; q < n; ++q)
    for (Symbol a = 0; a < sigma->size(); ++a) {
      std::size_t count = uniform(rng, 0, 2);
      for (std::size_t k = 0; k < count; ++k) {
        StackSymbol g = 0;
        if (sigma->is_call(a))
          g = static_cast<StackSymbol>(uniform(rng, 1, 2));
        else if (sigma->is_return(a))
          g = static_cast<StackSymbol>(uniform(rng, 0, 2));
        State to = static_cast<State>(uniform(rng, 0, n - 1));
        bool duplicate = false;
        for (const auto& t : transitions)
          duplicate |= t.from == q && t.symbol == a && t.stack == g && t.to == to;
        if (!duplicate)
          transitions.push_back({q, a, g, to});
      }
    }
  std::vector<bool> finals(n);
  for (auto&& f : finals)
    f = chance(rng, 0.5);
  std::vector<Formula> state_tests(n);
  if (!tests.empty())
    for (auto& t : state_tests)
      if (chance(rng, test_rate))
        t = pick(rng, tests);
  return std::make_shared<const Tvpa>(
      name, Vps(sigma, states, stack, 0, transitions), std::move(finals),
      std::move(state_tests));
}

namespace {

class FormulaGenerator {
public:
  FormulaGenerator(const AlphabetRef& sigma, Rng& rng,
                   const RandomFormulaOptions& options)
      : sigma_(sigma), rng_(rng), options_(options) {
    props_ = sigma->propositions();
    if (props_.empty())
      props_.push_back("p");
  }

  /// A formula whose size is at most about `budget`; the caller retries
  /// when the estimate is exceeded.
  Formula make(std::size_t budget, std::size_t nesting) {
    if (budget <= 2 || chance(rng_, 0.25)) {
      const auto& p = pick(rng_, props_);
      return chance(rng_, 0.5) ? atom(p) : neg_atom(p);
    }
    const std::size_t room = budget - 1;
    if (chance(rng_, 0.4)) {
      const std::size_t left = uniform(rng_, 1, room - 1);
      auto x = make(left, nesting);
      auto y = make(room - left, nesting);
      return chance(rng_, 0.5) ? conj(x, y) : disj(x, y);
    }
    const std::size_t states =
        std::min(options_.max_tvpa_states, room - 1);
    std::size_t rest = room - states;
    std::vector<Formula> tests;
    if (nesting > 0 && rest >= 3) {
      for (int i = 0; i < 2; ++i)
        tests.push_back(make(1, nesting - 1));
      rest -= 2;
    }
    auto a = random_tvpa(sigma_, rng_, states, tests, tests.empty() ? 0 : 0.4,
                         "A" + std::to_string(++counter_));
    auto inner = make(rest, nesting);
    return chance(rng_, 0.5) ? diamond(a, inner) : box(a, inner);
  }

private:
  AlphabetRef sigma_;
  Rng& rng_;
  RandomFormulaOptions options_;
  std::vector<std::string> props_;
  std::size_t counter_ = 0;
};

} // namespace

Formula random_formula(const AlphabetRef& sigma, Rng& rng,
                       const RandomFormulaOptions& options) {
  FormulaGenerator gen(sigma, rng, options);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto f = gen.make(options.max_size, options.max_test_nesting);
    if (formula_size(f) <= options.max_size &&
        test_nesting(f) <= options.max_test_nesting)
      return f;
  }
  throw std::runtime_error("no random formula within the size bound");
}

BuchiGame random_game(Rng& rng, std::size_t vertices) {
  BuchiGame g;
  for (std::size_t v = 0; v < vertices; ++v)
    g.add_vertex(chance(rng, 0.5) ? Player::Automaton : Player::Pathfinder,
                 chance(rng, 0.3));
  for (std::size_t v = 0; v < vertices; ++v) {
    std::size_t degree = uniform(rng, 1, 3);
    for (std::size_t k = 0; k < degree; ++k)
      g.add_edge(static_cast<BuchiGame::Vertex>(v),
                 static_cast<BuchiGame::Vertex>(uniform(rng, 0, vertices - 1)));
  }
  return g;
}

Mutation mutate_stack_tree(const PushdownAlphabet& sigma,
                           const LassoWord& alpha, Rng& rng) {
  const RegularTree tree = encode_lasso(sigma, alpha);
  // Candidate addresses per mutation kind, collected breadth first.
  std::vector<std::string> bot_children, flat_nodes, unmatched_calls,
      matched_calls;
  std::deque<std::string> queue{""};
  while (!queue.empty()) {
    std::string b = queue.front();
    queue.pop_front();
    TreeLabel label = tree.at(b);
    if (label.is_bot()) {
      bot_children.push_back(b);
      continue;
    }
    Symbol a = label.symbol();
    if (sigma.is_call(a)) {
      TreeLabel left = tree.at(b + "0");
      if (!left.is_bot() && sigma.is_return(left.symbol()))
        matched_calls.push_back(b);
      else if (left.is_bot())
        unmatched_calls.push_back(b);
    } else {
      flat_nodes.push_back(b);
    }
    if (b.size() < 10) {
      queue.push_back(b + "0");
      queue.push_back(b + "1");
    }
  }
  auto any_symbol = [&] {
    return TreeLabel::of(static_cast<Symbol>(uniform(rng, 0, sigma.size() - 1)));
  };
  std::vector<int> kinds{0};
  if (!bot_children.empty())
    kinds.push_back(1);
  if (!flat_nodes.empty())
    kinds.push_back(2);
  if (!unmatched_calls.empty())
    kinds.push_back(3);
  if (!matched_calls.empty())
    kinds.push_back(4);
  switch (pick(rng, kinds)) {
  case 0:
    return {tree.relabel("", TreeLabel::bot()), "bot root"};
  case 1:
    return {tree.relabel(pick(rng, bot_children) + "0", any_symbol()),
            "label below bot"};
  case 2:
    return {tree.relabel(pick(rng, flat_nodes) + "1", any_symbol()),
            "right child of a local or return"};
  case 3:
    return {tree.relabel(pick(rng, unmatched_calls) + "0", any_symbol()),
            "left child of an unmatched call"};
  default: {
    auto returns = sigma.of_kind(SymbolKind::Return);
    return {tree.relabel(pick(rng, matched_calls) + "1",
                         TreeLabel::of(pick(rng, returns))),
            "unmatched return in a nested infix"};
  }
  }
}

} // namespace vldl
