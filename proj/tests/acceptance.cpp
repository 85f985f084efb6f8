// Acceptance run: one PASS/FAIL line per criterion, exit code 1 when any
// criterion fails.

#include "support.hpp"

#include "vldl/breakpoint.hpp"
#include "vldl/cli.hpp"
#include "vldl/compile.hpp"
#include "vldl/error.hpp"
#include "vldl/oracle.hpp"
#include "vldl/pipeline.hpp"
#include "vldl/random.hpp"
#include "vldl/spec_file.hpp"
#include "vldl/stack_tree.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace vldl;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  double seconds_limit;
  std::function<Outcome()> run;
};

// Fixed seeds so that every run checks the same instances.
constexpr std::uint64_t seed_trees = 20240201;
constexpr std::uint64_t seed_ajas = 20240202;
constexpr std::uint64_t seed_formulas = 20240203;
constexpr std::uint64_t seed_games = 20240204;
constexpr std::uint64_t seed_sizes = 20240205;

Outcome stack_tree_example() {
  auto sigma = default_alphabet();
  auto alpha = parse_lasso(*sigma, "l c l r c l (l)^w");
  auto tree = encode_lasso(*sigma, alpha);
  FiniteTree expected;
  const std::vector<std::pair<std::string, std::string>> nodes{
      {"", "l"},    {"0", "c"},    {"00", "r"},    {"01", "l"},
      {"000", "c"}, {"0001", "l"}, {"00010", "l"}};
  for (const auto& [address, name] : nodes)
    expected.set(address, sigma->symbol(name));
  if (!(tree.truncate(5) == expected))
    return {false, "tree to depth 5 differs from the expected shape"};

  auto branch = tree.cardinal_addresses(*sigma, 4);
  std::vector<std::string> expected_branch{"", "0", "00", "000"};
  // The horizon must cover every position class; only the prefix matters.
  auto positions = cardinal_positions(*sigma, alpha, 10);
  std::vector<Position> expected_positions{0, 1, 3, 4};
  if (branch != expected_branch || positions.size() < 4 ||
      !std::equal(expected_positions.begin(), expected_positions.end(),
                  positions.begin()))
    return {false, "cardinal branch differs"};

  // The command-line rendering marks exactly the branch nodes.
  std::ostringstream out, err;
  int code = run_cli({"encode", "l c l r c l (l)^w", "--depth", "5"}, out, err);
  const std::string expected_text = "l *\n"
                                    "  0: c *\n"
                                    "    0: r *\n"
                                    "      0: c *\n"
                                    "        0: bot\n"
                                    "        1: l *\n"
                                    "          0: l *\n"
                                    "          1: bot\n"
                                    "      1: bot\n"
                                    "    1: l\n"
                                    "      0: bot\n"
                                    "      1: bot\n"
                                    "  1: bot\n";
  if (code != 0 || out.str() != expected_text)
    return {false, "encode output differs:\n" + out.str()};
  return {true, "labels and cardinal positions 0,1,3,4 match"};
}

Outcome stack_tree_membership() {
  auto sigma = default_alphabet();
  auto recognizer = stack_tree_recognizer(sigma);
  Rng rng(seed_trees);
  std::size_t members = 0, rejected = 0;
  for (int i = 0; i < 200; ++i) {
    auto alpha = random_lasso(*sigma, rng, 6, 6);
    if (contains(recognizer, encode_lasso(*sigma, alpha)))
      ++members;
  }
  std::map<std::string, std::size_t> kinds;
  for (int i = 0; i < 200; ++i) {
    auto alpha = random_lasso(*sigma, rng, 6, 6);
    auto m = mutate_stack_tree(*sigma, alpha, rng);
    ++kinds[m.kind];
    if (!contains(recognizer, m.tree))
      ++rejected;
  }
  std::string detail = std::to_string(members) + "/200 stack trees accepted, " +
                       std::to_string(rejected) + "/200 mutants rejected (";
  bool first = true;
  for (const auto& [k, n] : kinds) {
    detail += (first ? "" : ", ") + k + ": " + std::to_string(n);
    first = false;
  }
  return {members == 200 && rejected == 200, detail + ")"};
}

Outcome aja_tree_equivalence() {
  auto sigma = default_alphabet();
  Rng rng(seed_ajas);
  std::size_t agree = 0, total = 0, accepted = 0;
  std::string first_failure;
  for (int i = 0; i < 100; ++i) {
    OneAja a = random_aja(sigma, rng, 4);
    auto t = aja_to_stacktree_automaton(a);
    for (int j = 0; j < 20; ++j) {
      auto alpha = random_restricted_lasso(*sigma, rng, 4, 4);
      bool word = lasso_accepts(a, alpha);
      bool tree = contains(t, encode_lasso(*sigma, alpha));
      ++total;
      accepted += word;
      if (word == tree)
        ++agree;
      else if (first_failure.empty())
        first_failure = "; first disagreement on automaton " +
                        std::to_string(i) + " and " +
                        format_lasso(*sigma, alpha);
    }
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) +
                              " agree (" + std::to_string(accepted) +
                              " accepted)" + first_failure};
}

Outcome compile_equivalence() {
  auto sigma = sample_alphabet();
  Rng rng(seed_formulas);
  RandomFormulaOptions options;
  options.max_size = 10;
  options.max_tvpa_states = 3;
  options.max_test_nesting = 1;
  std::size_t agree = 0, total = 0, satisfied = 0, modal = 0;
  std::string first_failure;
  for (int i = 0; i < 100; ++i) {
    auto f = random_formula(sigma, rng, options);
    for (const auto& g : closure(f))
      if (g->automaton) {
        ++modal;
        break;
      }
    OneAja a = compile(f, sigma);
    for (int j = 0; j < 20; ++j) {
      auto alpha = random_restricted_lasso(*sigma, rng, 4, 4);
      bool expected = eval_lasso(f, sigma, alpha);
      bool actual = lasso_accepts(a, alpha);
      ++total;
      satisfied += expected;
      if (expected == actual)
        ++agree;
      else if (first_failure.empty())
        first_failure = "; first disagreement: " + to_string(f) + " on " +
                        format_lasso(*sigma, alpha);
    }
  }
  return {agree == total,
          std::to_string(agree) + "/" + std::to_string(total) + " agree (" +
              std::to_string(modal) + " modal formulas, " +
              std::to_string(satisfied) + " true pairs)" + first_failure};
}

Outcome satisfiability_sanity() {
  const std::string header = R"(
    alphabet { calls: c; returns: r; locals: l, m; props l = {p}; }
    automaton Unreachable {
      states: q0 q1; initial: q0; final: q1;
      q0 -l-> q0; q0 -c push A-> q0; q0 -r pop A-> q0; q1 -l-> q1;
    }
    automaton Step {
      states: q0 q1; initial: q0; final: q1;
      q0 -l-> q1; q0 -m-> q1; q0 -c push A-> q0; q0 -r pop A-> q1;
    }
    automaton Any {
      states: q0; initial: q0; final: q0;
      q0 -l-> q0; q0 -m-> q0; q0 -c push A-> q0; q0 -r pop A-> q0;
      q0 -r pop bot-> q0;
    }
  )";
  auto answer = [&](const std::string& formula, std::optional<LassoWord>* model) {
    auto spec = parse_spec(header + "formula " + formula + ";");
    auto v = satisfiable(spec.formula, spec.alphabet);
    if (model)
      *model = v.word;
    // The oracle needs a well-matched period; other models are checked
    // against the compiled automaton instead.
    if (v.word) {
      bool ok = oracle_supports(*spec.alphabet, *v.word)
                    ? eval_lasso(spec.formula, spec.alphabet, *v.word)
                    : lasso_accepts(compile(spec.formula, spec.alphabet),
                                    *v.word);
      if (!ok)
        throw std::runtime_error("model of " + formula + " is rejected");
    }
    return v.answer;
  };
  std::vector<std::string> failures;
  if (answer("p & !p", nullptr) != Answer::Unsatisfiable)
    failures.push_back("p & !p");
  std::optional<LassoWord> model;
  auto header_sigma = parse_spec(header).alphabet;
  if (answer("p", &model) != Answer::Satisfiable || !model ||
      !header_sigma->has_prop(model->at(0), "p"))
    failures.push_back("p");
  if (answer("<Unreachable> true", nullptr) != Answer::Unsatisfiable)
    failures.push_back("<Unreachable> true");
  // Duality: <A> f and ![A] !f have the same answer.
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"<Step> p", "![Step] !p"},
      {"<Any> p", "![Any] !p"},
      {"<Any> (p & !p)", "![Any] !(p & !p)"},
      {"[Any] p", "!<Any> !p"},
      {"<Unreachable> p", "![Unreachable] !p"}};
  for (const auto& [x, y] : pairs)
    if (answer(x, nullptr) != answer(y, nullptr))
      failures.push_back(x + " vs " + y);
  if (!failures.empty())
    return {false, "wrong answers: " + failures.front()};
  return {true, "3 fixed answers and 5 duality pairs correct; model of p is " +
                    format_lasso(*header_sigma, *model)};
}

Outcome model_checking() {
  auto sigma = std::make_shared<const PushdownAlphabet>(PushdownAlphabet::parse(
      "calls: c; returns: r; locals: l; props l = {loc};"));
  Vps system = parse_vps("states: s0 s1; initial: s0; "
                         "s0 -c push A-> s1; s1 -r pop A-> s0;",
                         sigma);
  const std::string automaton =
      "automaton A_l { states: q0 q1; initial: q0; final: q1; q0 -l-> q1; }\n";
  auto spec_of = [&](const std::string& f) {
    return parse_spec(automaton + "formula " + f + ";", sigma).formula;
  };
  std::vector<std::string> failures;
  for (const auto& valid : {"loc | !loc", "!loc"}) {
    auto v = model_check(system, spec_of(valid));
    if (v.answer != Answer::Holds)
      failures.push_back(std::string(valid) + " not reported as holding");
  }
  auto spec = spec_of("<A_l> true");
  auto v = model_check(system, spec);
  const LassoWord expected = parse_lasso(*sigma, "(c r)^w");
  if (v.answer != Answer::Violated || !v.word)
    failures.push_back("<A_l> true not reported as violated");
  else if (!(*v.word == expected))
    failures.push_back("counterexample " + format_lasso(*sigma, *v.word));
  else if (!has_run_prefix(system, *v.word, trace_check_steps(system, *v.word)))
    failures.push_back("counterexample is not a trace");
  else if (eval_lasso(spec, sigma, *v.word))
    failures.push_back("oracle accepts the counterexample");
  if (!failures.empty())
    return {false, failures.front()};
  return {true, "2 valid specifications hold; <A_l> true violated by "
                "(c r)^w, trace and oracle validated"};
}

Outcome size_bounds() {
  auto sigma = default_alphabet();
  Rng rng(seed_sizes);
  std::size_t strictly_smaller = 0;
  std::size_t within = 0;
  for (int i = 0; i < 100; ++i) {
    OneAja a = random_aja(sigma, rng, 4);
    auto t = aja_to_tree(a);
    auto bound = breakpoint_state_bound(a.size());
    within += t.size() <= bound;
    strictly_smaller += t.size() < bound;
  }
  // Model checking: |T| <= c 2^|f| |S|^2 |Gamma| with c fixed below.
  constexpr double c = 64;
  auto ab = sample_alphabet();
  Rng frng(seed_sizes + 1);
  RandomFormulaOptions fo;
  fo.max_size = 8;
  fo.max_tvpa_states = 2;
  fo.max_test_nesting = 0;
  double worst = 0;
  std::size_t checked = 0, exceeded = 0, capped = 0;
  for (int i = 0; i < 20; ++i) {
    auto f = random_formula(ab, frng, fo);
    auto s = random_tvpa(ab, frng, 3, {}, 0, "S")->system();
    const double poly =
        static_cast<double>(s.state_count() * s.state_count() * s.stack_count());
    const double bound =
        c * std::pow(2.0, static_cast<double>(formula_size(f))) * poly;
    ++checked;
    try {
      auto v = model_check(s, f);
      const double states = static_cast<double>(v.states_of("product"));
      worst = std::max(worst, states / (bound / c));
      exceeded += states > bound;
    } catch (const ResourceError&) {
      // The state cap is far above every bound in this corpus.
      ++capped;
      ++exceeded;
    }
  }
  std::ostringstream detail;
  detail << within << "/100 within 4^n+16^n+1 (" << strictly_smaller
         << " strictly smaller); model checking c=" << c
         << ", p(|S|)=|Q|^2|Gamma|: " << exceeded << "/" << checked
         << " instances exceed c 2^|f| p(|S|) (" << capped
         << " hit the state cap), worst finished |T|/(2^|f| p(|S|)) = "
         << worst;
  return {within == 100 && strictly_smaller == 100 && exceeded == 0,
          detail.str()};
}

Outcome game_solver() {
  Rng rng(seed_games);
  std::size_t agree = 0, partitions = 0, games = 0;
  while (games < 100) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 30)(rng);
    auto g = random_game(rng, n);
    if (testing::choice_vertices(g, Player::Automaton).size() > 12 ||
        testing::choice_vertices(g, Player::Pathfinder).size() > 12)
      continue;
    ++games;
    auto solved = solve_buchi_game(g).winning;
    auto automaton = testing::brute_force_automaton(g);
    auto pathfinder = testing::brute_force_pathfinder(g);
    agree += solved == automaton;
    bool partition = true;
    for (std::size_t v = 0; v < n; ++v)
      partition &= automaton[v] != pathfinder[v];
    partitions += partition;
  }
  return {agree == 100 && partitions == 100,
          std::to_string(agree) + "/100 winning sets match, " +
              std::to_string(partitions) + "/100 partition the arena"};
}

} // namespace

/// Runs every criterion, or only those whose numbers are given.  A
/// criterion named with --known-failure N still prints its line but does
/// not affect the exit status.
int main(int argc, char** argv) {
  std::set<int> selected, known_failures;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--known-failure" && i + 1 < argc)
      known_failures.insert(std::atoi(argv[++i]));
    else
      selected.insert(std::atoi(argv[i]));
  }
  const std::vector<Criterion> criteria{
      {1, "stack tree of l c l r c l (l)^w", 1, stack_tree_example},
      {2, "stack tree recognizer", 30, stack_tree_membership},
      {3, "1-AJA vs tree automaton", 120, aja_tree_equivalence},
      {4, "formula compilation vs oracle", 120, compile_equivalence},
      {5, "satisfiability sanity", 10, satisfiability_sanity},
      {6, "model checking end to end", 10, model_checking},
      {7, "size bounds", 600, size_bounds},
      {8, "Buchi game solver", 60, game_solver},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.number))
      continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    bool in_time = seconds < c.seconds_limit;
    bool pass = o.pass && in_time;
    if (!known_failures.count(c.number))
      all &= pass;
    std::ostringstream time;
    time.precision(3);
    time << seconds << " s, limit " << c.seconds_limit << " s";
    std::cout << "criterion " << c.number << " (" << c.title
              << "): " << (pass ? "PASS" : "FAIL") << " [" << time.str()
              << "] " << o.detail << (in_time ? "" : " (too slow)")
              << (known_failures.count(c.number) ? " (known failure)" : "")
              << std::endl;
  }
  return all ? 0 : 1;
}
