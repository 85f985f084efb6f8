#include "vldl/cli.hpp"

#include "vldl/error.hpp"
#include "vldl/oracle.hpp"
#include "vldl/pipeline.hpp"
#include "vldl/random.hpp"
#include "vldl/spec_file.hpp"
#include "vldl/stack_tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace vldl {

namespace {

using Json = nlohmann::ordered_json;

struct CommonFlags {
  std::string alphabet_file;
  std::string dot_dir;
  bool json = false;
  bool stats = false;
};

AlphabetRef alphabet_from(const CommonFlags& flags) {
  return flags.alphabet_file.empty() ? nullptr
                                     : load_alphabet(flags.alphabet_file);
}

PipelineOptions pipeline_options(const CommonFlags& flags) {
  PipelineOptions options;
  if (!flags.dot_dir.empty()) {
    std::filesystem::create_directories(flags.dot_dir);
    const std::string dir = flags.dot_dir;
    options.dump = [dir](const std::string& stage, const std::string& dot) {
      std::ofstream file(std::filesystem::path(dir) / (stage + ".dot"));
      if (!file)
        throw InputError("cannot write DOT files to '" + dir + "'");
      file << dot;
    };
  }
  return options;
}

int exit_code(Answer a) {
  return a == Answer::Satisfiable || a == Answer::Holds ? exit_positive
                                                         : exit_negative;
}

Json report(const std::string& command, const Verdict& v,
            const PushdownAlphabet& sigma) {
  Json j;
  j["command"] = command;
  j["verdict"] = answer_name(v.answer);
  const char* word_key =
      command == "sat" ? "witness" : "counterexample";
  j[word_key] = v.word ? Json(format_lasso(sigma, *v.word)) : Json(nullptr);
  j["formula_size"] = v.formula_size;
  j["system_states"] = v.system_states;
  Json stages = Json::array();
  for (const auto& s : v.stages)
    stages.push_back({{"stage", s.stage},
                      {"states", s.states},
                      {"transitions", s.transitions},
                      {"seconds", s.seconds}});
  j["stages"] = stages;
  j["seconds"] = v.seconds;
  j["exit_code"] = exit_code(v.answer);
  return j;
}

void print_stats(const Verdict& v, std::ostream& err) {
  for (const auto& s : v.stages)
    err << s.stage << ": " << s.states << " states, " << s.transitions
        << " transitions, " << s.seconds << " s\n";
}

int cmd_sat(const std::string& file, const CommonFlags& flags, bool witness,
            std::ostream& out, std::ostream& err) {
  auto spec = load_spec(file, alphabet_from(flags));
  if (!spec.formula)
    throw InputError("'" + file + "' contains no formula");
  auto v = satisfiable(spec.formula, spec.alphabet, pipeline_options(flags));
  if (flags.stats)
    print_stats(v, err);
  if (flags.json) {
    out << report("sat", v, *spec.alphabet).dump(2) << "\n";
  } else {
    out << answer_name(v.answer) << "\n";
    if (witness && v.word)
      out << "witness: " << format_lasso(*spec.alphabet, *v.word) << "\n";
  }
  return exit_code(v.answer);
}

Vps load_system(const std::string& file, const AlphabetRef& sigma) {
  std::string text = read_file(file);
  if (text.find('{') == std::string::npos)
    return parse_vps(text, sigma);
  auto spec = parse_spec(text, sigma);
  if (!spec.system)
    throw InputError("'" + file + "' contains no system block");
  return *spec.system;
}

int cmd_mc(const std::string& system_file, const std::string& formula_file,
           const CommonFlags& flags, bool cex, std::ostream& out,
           std::ostream& err) {
  auto spec = load_spec(formula_file, alphabet_from(flags));
  if (!spec.formula)
    throw InputError("'" + formula_file + "' contains no formula");
  Vps system = load_system(system_file, spec.alphabet);
  auto v = model_check(system, spec.formula, pipeline_options(flags));
  if (flags.stats)
    print_stats(v, err);
  if (flags.json) {
    out << report("mc", v, *spec.alphabet).dump(2) << "\n";
  } else {
    out << answer_name(v.answer) << "\n";
    if (cex && v.word)
      out << "counterexample: " << format_lasso(*spec.alphabet, *v.word)
          << "\n";
  }
  return exit_code(v.answer);
}

int cmd_encode(const std::string& word, const CommonFlags& flags,
               std::size_t depth, bool dot, bool generator, std::ostream& out) {
  AlphabetRef sigma = alphabet_from(flags);
  if (!sigma)
    sigma = default_alphabet();
  RegularTree tree;
  if (looks_like_lasso(word))
    tree = encode_lasso(*sigma, parse_lasso(*sigma, word));
  else
    tree = regular_tree(encode(*sigma, parse_word(*sigma, word)));
  if (generator) {
    out << write_generator(*sigma, tree);
    return exit_positive;
  }
  auto marked = tree.cardinal_addresses(*sigma, depth + 1);
  out << (dot ? tree_to_dot(*sigma, tree, depth, marked)
              : tree_to_text(*sigma, tree, depth, marked));
  return exit_positive;
}

int cmd_decode(const std::string& file, const CommonFlags& flags,
               std::ostream& out) {
  AlphabetRef sigma = alphabet_from(flags);
  if (!sigma)
    sigma = default_alphabet();
  auto tree = read_generator(*sigma, read_file(file));
  out << format_lasso(*sigma, decode(*sigma, tree)) << "\n";
  return exit_positive;
}

int cmd_eval(const std::string& file, const std::string& lasso,
             const CommonFlags& flags, std::ostream& out) {
  auto spec = load_spec(file, alphabet_from(flags));
  if (!spec.formula)
    throw InputError("'" + file + "' contains no formula");
  bool value = eval_lasso(spec.formula, spec.alphabet,
                          parse_lasso(*spec.alphabet, lasso));
  out << (value ? "true" : "false") << "\n";
  return value ? exit_positive : exit_negative;
}

int cmd_cross_check(std::uint64_t seed, std::size_t count, std::size_t lassos,
                    std::size_t max_size, std::ostream& out) {
  Rng rng(seed);
  AlphabetRef sigma = sample_alphabet();
  RandomFormulaOptions fo;
  fo.max_size = max_size;
  std::vector<Formula> formulas;
  for (std::size_t i = 0; i < count; ++i)
    formulas.push_back(random_formula(sigma, rng, fo));
  std::vector<LassoWord> words;
  for (std::size_t i = 0; i < lassos; ++i)
    words.push_back(random_restricted_lasso(*sigma, rng, 4, 4));
  auto r = cross_check(formulas, words, sigma);
  out << "pairs: " << r.pairs << "\ndisagreements: " << r.disagreements.size()
      << "\n";
  for (const auto& d : r.disagreements)
    out << "  " << d.formula << " on " << d.lasso << ": oracle " << d.oracle
        << ", word automaton " << d.word_automaton << ", tree automaton "
        << d.tree_automaton << "\n";
  return r.disagreements.empty() ? exit_positive : exit_negative;
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Satisfiability and model checking for visibly linear dynamic "
               "logic on visibly pushdown words",
               "vldl"};
  app.require_subcommand(1);
  CommonFlags flags;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-a,--alphabet", flags.alphabet_file, "Alphabet file");
  };
  auto add_pipeline = [&](CLI::App* cmd) {
    add_common(cmd);
    cmd->add_flag("--json", flags.json, "Print a JSON report");
    cmd->add_option("--dot", flags.dot_dir,
                    "Write the intermediate tree automata as DOT files");
    cmd->add_flag("--stats", flags.stats, "Print stage sizes to stderr");
  };

  std::string sat_file;
  bool witness = false;
  auto* sat = app.add_subcommand("sat", "Decide satisfiability of a formula");
  sat->add_option("file", sat_file, "Specification file")->required();
  sat->add_flag("--witness", witness, "Print a model");
  add_pipeline(sat);

  std::string system_file, formula_file;
  bool cex = false;
  auto* mc = app.add_subcommand("mc", "Check a system against a formula");
  mc->add_option("system", system_file, "System file")->required();
  mc->add_option("formula", formula_file, "Specification file")->required();
  mc->add_flag("--cex", cex, "Print a counterexample");
  add_pipeline(mc);

  std::string word;
  std::size_t depth = 5;
  bool dot = false;
  bool generator = false;
  auto* enc = app.add_subcommand("encode", "Print the stack tree of a word");
  enc->add_option("word", word, "Finite word or lasso `u (v)^w`")->required();
  enc->add_option("--depth", depth, "Depth of the printed tree");
  enc->add_flag("--dot", dot, "Print DOT instead of text");
  enc->add_flag("--generator", generator, "Print the tree generator");
  add_common(enc);

  std::string generator_file;
  auto* dec = app.add_subcommand("decode", "Read a tree generator back as a lasso");
  dec->add_option("file", generator_file, "Generator file")->required();
  add_common(dec);

  auto* orc = app.add_subcommand("oracle", "Direct semantics and cross-checks");
  orc->require_subcommand(1);
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t lassos = 20;
  std::size_t max_size = 10;
  auto* cc = orc->add_subcommand("cross-check",
                                 "Compare the oracle with both automata");
  cc->add_option("--seed", seed, "Random seed");
  cc->add_option("--count", count, "Number of formulas");
  cc->add_option("--lassos", lassos, "Number of lassos");
  cc->add_option("--max-size", max_size, "Bound on the formula size");
  std::string eval_file, eval_lasso_text;
  auto* ev = orc->add_subcommand("eval", "Evaluate a formula on a lasso");
  ev->add_option("file", eval_file, "Specification file")->required();
  ev->add_option("lasso", eval_lasso_text, "Lasso `u (v)^w`")->required();
  add_common(ev);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_positive : exit_input;
  }

  try {
    if (sat->parsed())
      return cmd_sat(sat_file, flags, witness, out, err);
    if (mc->parsed())
      return cmd_mc(system_file, formula_file, flags, cex, out, err);
    if (enc->parsed())
      return cmd_encode(word, flags, depth, dot, generator, out);
    if (dec->parsed())
      return cmd_decode(generator_file, flags, out);
    if (cc->parsed())
      return cmd_cross_check(seed, count, lassos, max_size, out);
    if (ev->parsed())
      return cmd_eval(eval_file, eval_lasso_text, flags, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return exit_resource;
  } catch (const MalformedWitnessError& e) {
    err << "malformed witness: " << e.what() << "\n";
    return exit_resource;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}

} // namespace vldl
