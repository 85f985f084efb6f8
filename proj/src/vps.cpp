#include "vldl/vps.hpp"

#include "vldl/error.hpp"
#include "vldl/text.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace vldl {

Vps::Vps(AlphabetRef sigma, std::vector<std::string> state_names,
         std::vector<std::string> stack_names, State initial,
         const std::vector<Transition>& transitions)
    : sigma_(std::move(sigma)), state_names_(std::move(state_names)),
      stack_names_(std::move(stack_names)), initial_(initial) {
  if (state_names_.empty())
    throw InputError("system needs at least one state");
  if (stack_names_.empty())
    stack_names_.push_back("bot");
  if (initial_ >= state_names_.size())
    throw InputError("initial state out of range");
  moves_.resize(state_names_.size() * sigma_->size());
  for (const auto& t : transitions) {
    if (t.from >= state_count() || t.to >= state_count())
      throw InputError("transition state out of range");
    if (t.symbol >= sigma_->size())
      throw InputError("transition symbol out of range");
    if (t.stack >= stack_count())
      throw InputError("transition stack symbol out of range");
    const std::string where = state_name(t.from) + " -" +
                              sigma_->name(t.symbol) + "-> " +
                              state_name(t.to);
    switch (sigma_->kind(t.symbol)) {
    case SymbolKind::Call:
      if (t.stack == bottom)
        throw InputError("call transition " + where + " pushes bottom");
      break;
    case SymbolKind::Local:
      if (t.stack != bottom)
        throw InputError("local transition " + where +
                         " touches the stack");
      break;
    case SymbolKind::Return:
      break;
    }
    auto& slot = moves_[t.from * sigma_->size() + t.symbol];
    Move m{t.stack, t.to};
    if (std::find(slot.begin(), slot.end(), m) == slot.end())
      slot.push_back(m);
  }
}

std::optional<State> Vps::find_state(std::string_view name) const {
  for (State q = 0; q < state_count(); ++q)
    if (state_names_[q] == name)
      return q;
  return std::nullopt;
}

std::vector<Transition> Vps::transitions() const {
  std::vector<Transition> out;
  for (State q = 0; q < state_count(); ++q)
    for (Symbol a = 0; a < sigma_->size(); ++a)
      for (const auto& m : moves(q, a))
        out.push_back({q, a, m.stack, m.to});
  return out;
}

Tvpa::Tvpa(std::string name, Vps system, std::vector<bool> final_states,
           std::vector<Formula> tests)
    : name_(std::move(name)), system_(std::move(system)),
      final_(std::move(final_states)), tests_(std::move(tests)) {
  if (final_.size() != system_.state_count())
    final_.resize(system_.state_count(), false);
  if (tests_.size() != system_.state_count())
    tests_.resize(system_.state_count());
}

bool Tvpa::has_tests() const {
  return std::any_of(tests_.begin(), tests_.end(),
                     [](const Formula& f) { return f != nullptr; });
}

std::vector<Configuration> successors(const Vps& s, const Configuration& cfg,
                                      Symbol a) {
  std::vector<Configuration> out;
  const auto kind = s.alphabet()->kind(a);
  for (const auto& m : s.moves(cfg.state, a)) {
    switch (kind) {
    case SymbolKind::Call: {
      Configuration next{m.to, cfg.stack};
      next.stack.push_back(m.stack);
      out.push_back(std::move(next));
      break;
    }
    case SymbolKind::Return:
      if (m.stack == bottom) {
        if (cfg.stack.empty())
          out.push_back({m.to, {}});
      } else if (!cfg.stack.empty() && cfg.stack.back() == m.stack) {
        Configuration next{m.to, cfg.stack};
        next.stack.pop_back();
        out.push_back(std::move(next));
      }
      break;
    case SymbolKind::Local:
      out.push_back({m.to, cfg.stack});
      break;
    }
  }
  return out;
}

std::vector<RunResult> run_relation(const Tvpa& a, std::span<const Symbol> w,
                                    State q0,
                                    std::size_t max_configurations) {
  std::set<RunResult> found;
  std::size_t explored = 0;
  std::vector<State> trace{q0};
  std::function<void(const Configuration&, std::size_t)> walk =
      [&](const Configuration& cfg, std::size_t i) {
        if (++explored > max_configurations)
          throw ResourceError("run_relation",
                              "more than " +
                                  std::to_string(max_configurations) +
                                  " configurations explored");
        if (i == w.size()) {
          found.insert({cfg.state, trace});
          return;
        }
        for (const auto& next : successors(a.system(), cfg, w[i])) {
          trace.push_back(next.state);
          walk(next, i + 1);
          trace.pop_back();
        }
      };
  walk(Configuration{q0, {}}, 0);
  return {found.begin(), found.end()};
}

bool has_run_prefix(const Vps& s, const LassoWord& alpha, std::size_t steps,
                    std::size_t max_configurations) {
  std::set<Configuration> current{{s.initial(), {}}};
  for (std::size_t i = 0; i < steps && !current.empty(); ++i) {
    std::set<Configuration> next;
    for (const auto& cfg : current)
      for (auto& n : successors(s, cfg, alpha.at(i)))
        next.insert(std::move(n));
    if (next.size() > max_configurations)
      throw ResourceError("trace check", "too many configurations");
    current = std::move(next);
  }
  return !current.empty();
}

std::size_t trace_check_steps(const Vps& s, const LassoWord& alpha) {
  return alpha.prefix().size() +
         (s.state_count() + 2) * alpha.period().size();
}

// ---------------------------------------------------------------- parsing

namespace {

bool is_bottom_name(const std::string& s) {
  return s == "bot" || s == "⊥";
}

} // namespace

ParsedSystem parse_system(std::string_view text, const AlphabetRef& sigma,
                          std::size_t first_line) {
  static const std::regex transition(
      R"(^([A-Za-z_]\w*)\s*-\s*([A-Za-z_]\w*)(?:\s+(push|pop)\s+([A-Za-z_]\w*|⊥))?\s*->\s*([A-Za-z_]\w*)$)");
  std::vector<std::string> states;
  std::optional<std::string> initial;
  std::vector<std::string> finals;
  bool has_final = false;
  std::vector<std::string> stack_names{"bot"};
  struct RawTransition {
    std::string from, symbol, op, stack, to;
    std::size_t line;
  };
  std::vector<RawTransition> raw;
  std::vector<std::tuple<std::string, std::string, std::size_t>> tests;

  for (const auto& stmt : split_statements(text, first_line)) {
    const std::string& s = stmt.text;
    std::smatch m;
    if (std::regex_match(s, m, transition)) {
      raw.push_back({m[1], m[2], m[3], m[4], m[5], stmt.line});
      continue;
    }
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw InputError("cannot parse system statement '" + s + "'",
                       stmt.line, 1);
    auto head = split_words(s.substr(0, colon));
    std::string body = s.substr(colon + 1);
    if (head.size() == 1 && head[0] == "states") {
      for (auto& q : split_words(body)) {
        if (!is_identifier(q))
          throw InputError("invalid state name '" + q + "'", stmt.line, 1);
        if (std::find(states.begin(), states.end(), q) != states.end())
          throw InputError("state '" + q + "' declared twice", stmt.line, 1);
        states.push_back(q);
      }
    } else if (head.size() == 1 && head[0] == "initial") {
      auto w = split_words(body);
      if (w.size() != 1)
        throw InputError("expected exactly one initial state", stmt.line, 1);
      initial = w[0];
    } else if (head.size() == 1 && head[0] == "final") {
      has_final = true;
      for (auto& q : split_words(body))
        finals.push_back(q);
    } else if (head.size() == 2 && head[0] == "test") {
      tests.emplace_back(head[1], trim(body), stmt.line);
    } else {
      throw InputError("cannot parse system statement '" + s + "'",
                       stmt.line, 1);
    }
  }
  if (states.empty())
    throw InputError("system declares no states");
  if (!initial)
    throw InputError("system declares no initial state");
  auto state_of = [&](const std::string& name, std::size_t line) -> State {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end())
      throw InputError("unknown state '" + name + "'", line, 1);
    return static_cast<State>(it - states.begin());
  };
  std::vector<Transition> transitions;
  for (const auto& t : raw) {
    State from = state_of(t.from, t.line);
    State to = state_of(t.to, t.line);
    auto a = sigma->find(t.symbol);
    if (!a)
      throw InputError("unknown symbol '" + t.symbol + "'", t.line, 1);
    const auto kind = sigma->kind(*a);
    StackSymbol g = bottom;
    if (kind == SymbolKind::Call && t.op != "push")
      throw InputError("call '" + t.symbol + "' needs 'push <symbol>'",
                       t.line, 1);
    if (kind == SymbolKind::Return && t.op != "pop")
      throw InputError("return '" + t.symbol + "' needs 'pop <symbol>'",
                       t.line, 1);
    if (kind == SymbolKind::Local && !t.op.empty())
      throw InputError("local '" + t.symbol + "' cannot " + t.op, t.line, 1);
    if (!t.op.empty()) {
      if (is_bottom_name(t.stack)) {
        if (t.op == "push")
          throw InputError("cannot push the bottom marker", t.line, 1);
      } else {
        auto it = std::find(stack_names.begin(), stack_names.end(), t.stack);
        if (it == stack_names.end()) {
          stack_names.push_back(t.stack);
          it = stack_names.end() - 1;
        }
        g = static_cast<StackSymbol>(it - stack_names.begin());
      }
    }
    transitions.push_back({from, *a, g, to});
  }
  State q0 = state_of(*initial, first_line);
  ParsedSystem out{Vps(sigma, states, stack_names, q0, transitions), false, {}, {}};
  out.has_final_clause = has_final;
  out.final_states.assign(states.size(), false);
  for (auto& q : finals)
    out.final_states[state_of(q, first_line)] = true;
  for (auto& [q, body, line] : tests) {
    State s = state_of(q, line);
    if (out.test_texts.count(s))
      throw InputError("state '" + q + "' has two tests", line, 1);
    out.test_texts.emplace(s, std::make_pair(body, line));
  }
  return out;
}

Vps parse_vps(std::string_view text, const AlphabetRef& sigma) {
  auto parsed = parse_system(text, sigma);
  if (parsed.has_final_clause || !parsed.test_texts.empty())
    throw InputError("a system cannot have final states or tests");
  return std::move(parsed.system);
}

namespace {

std::string print_core(const Vps& s) {
  std::string out = "states:";
  for (State q = 0; q < s.state_count(); ++q)
    out += " " + s.state_name(q);
  out += ";\ninitial: " + s.state_name(s.initial()) + ";\n";
  return out;
}

std::string print_transitions(const Vps& s) {
  std::string out;
  const auto& sigma = *s.alphabet();
  for (const auto& t : s.transitions()) {
    out += s.state_name(t.from) + " -" + sigma.name(t.symbol);
    switch (sigma.kind(t.symbol)) {
    case SymbolKind::Call:
      out += " push " + s.stack_name(t.stack);
      break;
    case SymbolKind::Return:
      out += " pop " + s.stack_name(t.stack);
      break;
    case SymbolKind::Local:
      break;
    }
    out += "-> " + s.state_name(t.to) + ";\n";
  }
  return out;
}

} // namespace

std::string print_system(const Vps& s) {
  return print_core(s) + print_transitions(s);
}

std::string print_system(const Tvpa& a) {
  const Vps& s = a.system();
  std::string out = print_core(s) + "final:";
  for (State q = 0; q < s.state_count(); ++q)
    if (a.is_final(q))
      out += " " + s.state_name(q);
  out += ";\n" + print_transitions(s);
  for (State q = 0; q < s.state_count(); ++q)
    if (a.test(q))
      out += "test " + s.state_name(q) + ": " + to_string(a.test(q)) + ";\n";
  return out;
}

} // namespace vldl
