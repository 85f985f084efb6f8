#include "vldl/spec_file.hpp"

#include "vldl/error.hpp"
#include "vldl/text.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace vldl {

namespace {

struct Position2 {
  std::size_t line;
  std::size_t column;
};

/// Text placed at its original line and column, so that parser positions
/// refer to the enclosing file.
std::string at_origin(std::string_view text, Position2 origin) {
  return std::string(origin.line - 1, '\n') +
         std::string(origin.column - 1, ' ') + std::string(text);
}

struct Section {
  std::string keyword;
  std::string name;
  std::string body;
  Position2 body_start;
  Position2 start;
};

class Scanner {
public:
  explicit Scanner(std::string text) : text_(std::move(text)) {}

  std::vector<Section> sections() {
    std::vector<Section> out;
    while (true) {
      skip_space();
      if (i_ >= text_.size())
        return out;
      Section s;
      s.start = here();
      s.keyword = word();
      if (s.keyword == "formula") {
        skip_space();
        s.body_start = here();
        std::size_t end = text_.find(';', i_);
        if (end == std::string::npos)
          end = text_.size();
        s.body = text_.substr(i_, end - i_);
        advance_to(std::min(end + 1, text_.size()));
      } else if (s.keyword == "alphabet" || s.keyword == "system" ||
                 s.keyword == "automaton") {
        if (s.keyword == "automaton") {
          skip_space();
          auto p = here();
          s.name = word();
          if (!is_identifier(s.name))
            throw InputError("expected an automaton name", p.line, p.column);
        }
        skip_space();
        if (i_ >= text_.size() || text_[i_] != '{')
          throw InputError("expected '{'", line_, column_);
        advance_to(i_ + 1);
        s.body_start = here();
        std::size_t depth = 1;
        std::size_t j = i_;
        for (; j < text_.size(); ++j) {
          if (text_[j] == '{')
            ++depth;
          else if (text_[j] == '}' && --depth == 0)
            break;
        }
        if (j >= text_.size())
          throw InputError("missing '}' for '" + s.keyword + "'", s.start.line,
                           s.start.column);
        s.body = text_.substr(i_, j - i_);
        advance_to(j + 1);
      } else {
        throw InputError("expected 'alphabet', 'automaton', 'system' or "
                         "'formula', found '" + s.keyword + "'",
                         s.start.line, s.start.column);
      }
      out.push_back(std::move(s));
    }
  }

private:
  Position2 here() const { return {line_, column_}; }

  void advance_to(std::size_t j) {
    for (; i_ < j; ++i_) {
      if (text_[i_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  void skip_space() {
    std::size_t j = i_;
    while (j < text_.size() && std::isspace(static_cast<unsigned char>(text_[j])))
      ++j;
    advance_to(j);
  }

  std::string word() {
    std::size_t j = i_;
    while (j < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
      ++j;
    if (j == i_)
      j = i_ + 1;
    std::string w = text_.substr(i_, j - i_);
    advance_to(j);
    return w;
  }

  std::string text_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

/// Builds automata on demand so that tests may name automata declared
/// later; a cycle of tests is an error.
class AutomatonResolver {
public:
  AutomatonResolver(AlphabetRef sigma, std::map<std::string, Section> sections)
      : sigma_(std::move(sigma)), sections_(std::move(sections)) {}

  TvpaRef get(std::string_view name) {
    std::string key(name);
    if (auto it = done_.find(key); it != done_.end())
      return it->second;
    auto sec = sections_.find(key);
    if (sec == sections_.end())
      return nullptr;
    if (!active_.insert(key).second)
      throw InputError("automaton '" + key + "' is part of a circular chain "
                       "of tests", sec->second.start.line,
                       sec->second.start.column);
    const Section& s = sec->second;
    ParsedSystem parsed = parse_system(s.body, sigma_, s.body_start.line);
    if (!parsed.has_final_clause)
      throw InputError("automaton '" + key + "' needs a 'final:' clause",
                       s.start.line, s.start.column);
    std::vector<Formula> tests(parsed.system.state_count());
    for (const auto& [q, text] : parsed.test_texts)
      tests[q] = parse_formula(at_origin(text.first, {text.second, 1}), *sigma_,
                               [this](std::string_view n) { return get(n); });
    auto a = std::make_shared<const Tvpa>(key, std::move(parsed.system),
                                          std::move(parsed.final_states),
                                          std::move(tests));
    active_.erase(key);
    done_.emplace(key, a);
    return a;
  }

private:
  AlphabetRef sigma_;
  std::map<std::string, Section> sections_;
  std::map<std::string, TvpaRef> done_;
  std::set<std::string> active_;
};

} // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

SpecFile parse_spec(std::string_view text, const AlphabetRef& alphabet) {
  Scanner scanner(strip_comments(text));
  auto sections = scanner.sections();
  SpecFile out;
  const Section* formula = nullptr;
  const Section* system = nullptr;
  std::map<std::string, Section> automata;
  for (const auto& s : sections) {
    if (s.keyword == "alphabet") {
      if (out.declares_alphabet)
        throw InputError("second alphabet block", s.start.line, s.start.column);
      out.alphabet = std::make_shared<const PushdownAlphabet>(
          PushdownAlphabet::parse(at_origin(s.body, s.body_start)));
      out.declares_alphabet = true;
    } else if (s.keyword == "formula") {
      if (formula)
        throw InputError("second formula", s.start.line, s.start.column);
      formula = &s;
    } else if (s.keyword == "system") {
      if (system)
        throw InputError("second system block", s.start.line, s.start.column);
      system = &s;
    } else if (!automata.emplace(s.name, s).second) {
      throw InputError("automaton '" + s.name + "' declared twice",
                       s.start.line, s.start.column);
    }
  }
  if (out.declares_alphabet && alphabet && !(*alphabet == *out.alphabet))
    throw InputError("alphabet mismatch: the file declares a different "
                     "alphabet than the one given");
  if (!out.alphabet)
    out.alphabet = alphabet ? alphabet : default_alphabet();

  AutomatonResolver resolver(out.alphabet, automata);
  for (const auto& [name, s] : automata)
    out.automata.emplace(name, resolver.get(name));
  if (system)
    out.system = parse_vps(at_origin(system->body, system->body_start),
                           out.alphabet);
  if (formula)
    out.formula = parse_formula(at_origin(formula->body, formula->body_start),
                                *out.alphabet,
                                [&](std::string_view n) { return resolver.get(n); });
  return out;
}

SpecFile load_spec(const std::string& path, const AlphabetRef& alphabet) {
  return parse_spec(read_file(path), alphabet);
}

AlphabetRef load_alphabet(const std::string& path) {
  return std::make_shared<const PushdownAlphabet>(
      PushdownAlphabet::parse(read_file(path)));
}

} // namespace vldl
