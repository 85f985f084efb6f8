#include "vldl/pipeline.hpp"

#include "vldl/error.hpp"
#include "vldl/stack_tree.hpp"

#include <chrono>
#include <future>
#include <map>
#include <tuple>

namespace vldl {

namespace {

enum class VpsFamily : std::uint8_t { Plain, Pair, Ret, RetPair, Sink };

/// plain(q), pair(q, q_G), ret(q, A), retpair(q, A, q_G) and the sink.
struct VpsKey {
  VpsFamily family;
  State q;
  StackSymbol g;
  State guess;
  bool operator==(const VpsKey&) const = default;
};

struct VpsKeyHash {
  std::size_t operator()(const VpsKey& k) const {
    return ((static_cast<std::size_t>(k.family) * 1000003u + k.q) * 1000003u +
            k.g) * 1000003u + k.guess;
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

StageStats stats(const std::string& stage, const BuchiTreeAutomaton& t,
                 Clock::time_point start) {
  return {stage, t.size(), t.transition_count(), since(start)};
}

void dump(const PipelineOptions& options, const std::string& stage,
          const BuchiTreeAutomaton& t) {
  if (options.dump)
    options.dump(stage, t.to_dot());
}

/// Automaton of the formula as a lazy tree automaton source.
std::unique_ptr<TreeAutomatonSource> formula_source(
    const Formula& f, const AlphabetRef& sigma, const PipelineOptions& options,
    std::vector<StageStats>& stages) {
  auto start = Clock::now();
  OneAja a = compile(f, sigma, options.compile);
  stages.push_back({"vldl2aja", a.size(), 0, since(start)});
  BreakpointOptions bp{options.guesses, options.limits};
  if (options.dump)
    dump(options, "aja2tree", aja_to_tree(a, bp));
  return lazy_aja_to_tree(a, bp);
}

/// Statistics of the part of a lazy source that a product explored.
StageStats explored(const std::string& stage,
                    const TreeAutomatonSource& source, double seconds) {
  return {stage, source.size(), source.transition_count(), seconds};
}

} // namespace

BuchiTreeAutomaton vps_to_tree(const Vps& s, const Limits& limits) {
  const auto& sigma = *s.alphabet();
  BuchiTreeAutomaton out(s.alphabet());
  LazyStateSpace<VpsKey, VpsKeyHash> space(out, "vps2tree", limits.max_states);
  auto get = [&](VpsKey k) { return space.get(k, true); };
  out.set_initial(get({VpsFamily::Plain, s.initial(), 0, 0}));
  const State sink = get({VpsFamily::Sink, 0, 0, 0});
  const auto n = static_cast<State>(s.state_count());
  State id;
  while (space.next(id)) {
    const VpsKey k = space.key(id);
    if (k.family == VpsFamily::Sink) {
      out.add_transition(id, TreeLabel::bot(), sink, sink);
      continue;
    }
    if (k.family == VpsFamily::Pair && k.q == k.guess)
      out.add_transition(id, TreeLabel::bot(), sink, sink);
    for (Symbol a = 0; a < sigma.size(); ++a) {
      const TreeLabel label = TreeLabel::of(a);
      for (const auto& m : s.moves(k.q, a)) {
        switch (k.family) {
        case VpsFamily::Plain:
          if (sigma.is_local(a)) {
            out.add_transition(id, label, get({VpsFamily::Plain, m.to, 0, 0}),
                               sink);
          } else if (sigma.is_return(a)) {
            if (m.stack == bottom)
              out.add_transition(
                  id, label, get({VpsFamily::Plain, m.to, 0, 0}), sink);
          } else {
            out.add_transition(id, label, sink,
                               get({VpsFamily::Plain, m.to, 0, 0}));
            for (State g = 0; g < n; ++g)
              out.add_transition(id, label,
                                 get({VpsFamily::Ret, g, m.stack, 0}),
                                 get({VpsFamily::Pair, m.to, 0, g}));
          }
          break;
        case VpsFamily::Pair:
          if (sigma.is_local(a)) {
            out.add_transition(
                id, label, get({VpsFamily::Pair, m.to, 0, k.guess}), sink);
          } else if (sigma.is_call(a)) {
            for (State g = 0; g < n; ++g)
              out.add_transition(id, label,
                                 get({VpsFamily::RetPair, g, m.stack, k.guess}),
                                 get({VpsFamily::Pair, m.to, 0, g}));
          }
          break;
        case VpsFamily::Ret:
          if (sigma.is_return(a) && m.stack == k.g)
            out.add_transition(id, label, get({VpsFamily::Plain, m.to, 0, 0}),
                               sink);
          break;
        case VpsFamily::RetPair:
          if (sigma.is_return(a) && m.stack == k.g)
            out.add_transition(
                id, label, get({VpsFamily::Pair, m.to, 0, k.guess}), sink);
          break;
        case VpsFamily::Sink:
          break;
        }
      }
    }
  }
  for (State q = 0; q < space.size(); ++q) {
    const auto& k = space.key(q);
    std::string name;
    switch (k.family) {
    case VpsFamily::Plain:
      name = s.state_name(k.q);
      break;
    case VpsFamily::Pair:
      name = "(" + s.state_name(k.q) + "," + s.state_name(k.guess) + ")";
      break;
    case VpsFamily::Ret:
      name = "(" + s.state_name(k.q) + "," + s.stack_name(k.g) + ")";
      break;
    case VpsFamily::RetPair:
      name = "(" + s.state_name(k.q) + "," + s.stack_name(k.g) + "," +
             s.state_name(k.guess) + ")";
      break;
    case VpsFamily::Sink:
      name = "q_bot";
      break;
    }
    out.set_name(q, name);
  }
  return intersect(out, stack_tree_recognizer(s.alphabet()), limits);
}

std::size_t vps_tree_state_bound(const Vps& s) {
  const std::size_t q = s.state_count();
  const std::size_t g = s.stack_count();
  return q + q * q + q * g + q * q * g + 1;
}

const char* answer_name(Answer a) {
  switch (a) {
  case Answer::Satisfiable:
    return "satisfiable";
  case Answer::Unsatisfiable:
    return "unsatisfiable";
  case Answer::Holds:
    return "holds";
  case Answer::Violated:
    return "violated";
  }
  return "?";
}

std::size_t Verdict::states_of(const std::string& stage) const {
  for (const auto& s : stages)
    if (s.stage == stage)
      return s.states;
  return 0;
}

namespace {

/// Witness of t decoded into a lasso, or nothing when t is empty.
std::optional<LassoWord> solve(const BuchiTreeAutomaton& t,
                               const PipelineOptions& options,
                               std::vector<StageStats>& stages) {
  auto start = Clock::now();
  auto tree = witness(t, options.limits);
  stages.push_back({"emptiness", t.size(), t.transition_count(), since(start)});
  if (!tree)
    return std::nullopt;
  return decode(*t.alphabet(), *tree);
}

} // namespace

Verdict satisfiable(const Formula& f, const AlphabetRef& sigma,
                    const PipelineOptions& options) {
  const auto start = Clock::now();
  Verdict v;
  v.formula_size = formula_size(f);
  auto source = formula_source(f, sigma, options, v.stages);
  auto start_product = Clock::now();
  auto recognizer = stack_tree_recognizer(sigma);
  ExplicitSource st(recognizer);
  auto t = intersect(*source, st, options.limits);
  const double seconds = since(start_product);
  v.stages.push_back(explored("aja2tree", *source, seconds));
  v.stages.push_back({"stacktree", t.size(), t.transition_count(), seconds});
  dump(options, "stacktree", t);
  v.word = solve(t, options, v.stages);
  v.answer = v.word ? Answer::Satisfiable : Answer::Unsatisfiable;
  v.seconds = since(start);
  return v;
}

Verdict model_check(const Vps& s, const Formula& f,
                    const PipelineOptions& options) {
  const auto start = Clock::now();
  const AlphabetRef& sigma = s.alphabet();
  for (const auto& g : closure(f))
    if (g->automaton && !(*g->automaton->system().alphabet() == *sigma))
      throw InputError("automaton '" + g->automaton->name() +
                       "' and the system use different alphabets");
  Verdict v;
  v.formula_size = formula_size(f);
  v.system_states = s.state_count();
  const Formula negated = to_nnf(negate(f));
  std::vector<StageStats> formula_stages;
  auto formula_part = std::async(std::launch::async, [&] {
    return formula_source(negated, sigma, options, formula_stages);
  });
  auto system_start = Clock::now();
  std::optional<BuchiTreeAutomaton> system_tree;
  try {
    system_tree = vps_to_tree(s, options.limits);
  } catch (...) {
    formula_part.wait();
    throw;
  }
  v.stages.push_back(stats("vps2tree", *system_tree, system_start));
  dump(options, "vps2tree", *system_tree);
  auto source = formula_part.get();
  v.stages.insert(v.stages.end(), formula_stages.begin(), formula_stages.end());
  auto product_start = Clock::now();
  // The system automaton already checks the stack tree shape.
  ExplicitSource system_source(*system_tree);
  auto product = intersect(system_source, *source, options.limits);
  const double seconds = since(product_start);
  v.stages.push_back(explored("aja2tree", *source, seconds));
  v.stages.push_back(
      {"product", product.size(), product.transition_count(), seconds});
  dump(options, "product", product);
  v.word = solve(product, options, v.stages);
  v.answer = v.word ? Answer::Violated : Answer::Holds;
  v.seconds = since(start);
  return v;
}

} // namespace vldl
